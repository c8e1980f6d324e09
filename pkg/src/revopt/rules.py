"""Local rewrite rules: deletion, moving, NOT-pass, generalized pass, and the
restricted common-target identities.

Every rule is a partial rewrite: given a circuit and a position it either
returns a RewriteResult (a replacement for a small window of gates) or None.
Applied rewrites always preserve the simulated permutation; the test suite
checks this exhaustively at small widths.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import (
    Circuit,
    Gate,
    Polarity,
    commutes,
    mct,
    same_function,
    simulate,
)
from .cost import circuit_cost


@dataclass(frozen=True)
class RewriteResult:
    """Replacement gates for the half-open window [start, end) of a circuit."""

    new_gates: tuple[Gate, ...]
    window: tuple[int, int]
    rule_name: str


def apply_rewrite(c: Circuit, r: RewriteResult) -> Circuit:
    start, end = r.window
    return c.with_gates(c.gates[:start] + r.new_gates + c.gates[end:])


def _check_pair_index(c: Circuit, i: int) -> None:
    if i < 0 or i + 1 >= len(c.gates):
        raise IndexError(f"no adjacent pair at index {i} in a {len(c.gates)}-gate circuit")


def try_delete(c: Circuit, i: int) -> RewriteResult | None:
    """Cancel two adjacent gates with identical function."""
    _check_pair_index(c, i)
    if same_function(c.gates[i], c.gates[i + 1]):
        return RewriteResult((), (i, i + 2), "delete")
    return None


def try_move(c: Circuit, i: int) -> RewriteResult | None:
    """Swap two adjacent gates when the moving rule allows it."""
    _check_pair_index(c, i)
    g1, g2 = c.gates[i], c.gates[i + 1]
    if commutes(g1, g2):
        return RewriteResult((g2, g1), (i, i + 2), "move")
    return None


def pass_not(c: Circuit, i: int, direction: str = "right") -> RewriteResult | None:
    """Pass the NOT gate at index i over its neighbor in `direction`.

    If the NOT's line is a control of the neighbor, that control's polarity is
    toggled; otherwise (the line is free or is the neighbor's target) the two
    gates simply swap.
    """
    if direction not in ("left", "right"):
        raise ValueError(f"direction must be 'left' or 'right', got {direction!r}")
    if i < 0 or i >= len(c.gates):
        raise IndexError(f"index {i} out of range")
    ni = i + 1 if direction == "right" else i - 1
    if ni < 0 or ni >= len(c.gates):
        raise IndexError(f"NOT at {i} has no neighbor to the {direction}")
    g = c.gates[i]
    if g.arity != 0:
        return None
    nb = c.gates[ni]
    x = g.target
    if x in nb.control_lines:
        nb = nb.with_toggled_control(x)
    if direction == "right":
        return RewriteResult((nb, g), (i, i + 2), "pass")
    return RewriteResult((g, nb), (i - 1, i + 1), "pass")


def cancel_not_pairs(c: Circuit, direction: str = "right") -> Circuit:
    """Route every NOT toward one end of the circuit and cancel pairs.

    Sweeps once in `direction`, carrying the parity of pending NOTs per line:
    each non-NOT gate passed has the polarity of its controls on odd-parity
    lines toggled (the pass rule); leftover odd parities re-emit one NOT at
    the sweep's end. The result is kept only if its cost does not increase
    (polarity toggles can make gates dearer).
    """
    if direction not in ("left", "right"):
        raise ValueError(f"direction must be 'left' or 'right', got {direction!r}")
    parity: set[int] = set()
    body: list[Gate] = []
    order = c.gates if direction == "right" else reversed(c.gates)
    for g in order:
        if g.arity == 0:
            parity.symmetric_difference_update({g.target})
            continue
        for line in parity & g.control_lines:
            g = g.with_toggled_control(line)
        body.append(g)
    leftovers = [mct([], line) for line in sorted(parity)]
    if direction == "right":
        new_gates = body + leftovers
    else:
        body.reverse()
        new_gates = leftovers + body
    candidate = c.with_gates(new_gates)
    if circuit_cost(candidate) <= circuit_cost(c):
        return candidate
    return c


@lru_cache(maxsize=None)
def _gpr_combo_valid(t2_polarity: Polarity, big_first: bool) -> bool:
    """One-time oracle check of a generalized-pass polarity/order combination.

    Built on a minimal 3-line instance, exhaustively over the shared control's
    polarity; a combination is enabled only if every instance simulates
    identically before and after the rewrite.
    """
    for shared in (Polarity.POSITIVE, Polarity.NEGATIVE):
        big = mct([(0, shared), (1, t2_polarity)], 2)
        small = mct([(0, shared)], 1)
        big2 = big.with_toggled_control(1)
        if big_first:
            before, after = (big, small), (small, big2)
        else:
            before, after = (small, big), (big2, small)
        base = Circuit(3)
        if simulate(base.with_gates(before)) != simulate(base.with_gates(after)):
            return False
    return True


def _gpr_match(g1: Gate, g2: Gate) -> tuple[Gate, Gate, bool] | None:
    """Find the (big, small, big_first) structure of a generalized-pass pair."""
    for big, small, big_first in ((g1, g2, True), (g2, g1, False)):
        if big.arity != small.arity + 1:
            continue
        if small.target not in big.control_lines:
            continue
        if big.control_lines != small.control_lines | {small.target}:
            continue
        small_pol = {c.line: c.polarity for c in small.controls}
        if any(
            c.polarity != small_pol[c.line]
            for c in big.controls
            if c.line != small.target
        ):
            continue
        return big, small, big_first
    return None


def apply_gpr(c: Circuit, i: int) -> RewriteResult | None:
    """Generalized pass rule: swap a gate with a one-smaller gate whose
    control set it extends by the smaller gate's target, toggling that
    control's polarity. Shared controls must agree in polarity.
    """
    _check_pair_index(c, i)
    m = _gpr_match(c.gates[i], c.gates[i + 1])
    if m is None:
        return None
    big, small, big_first = m
    t2_pol = next(x.polarity for x in big.controls if x.line == small.target)
    if not _gpr_combo_valid(t2_pol, big_first):
        return None
    big2 = big.with_toggled_control(small.target)
    new = (small, big2) if big_first else (big2, small)
    return RewriteResult(new, (i, i + 2), "gpr")


def apply_rctr(c: Circuit, i: int) -> RewriteResult | None:
    """Restricted common-target identities on a shared target line t:

    1. CNOT(x+;t) next to CNOT(x-;t) (either order)  ->  NOT(t)
    2. CNOT(x-;t) next to NOT(t) (either order)      ->  CNOT(x+;t)
    3. CNOT(x-;t) alone                              ->  CNOT(x+;t), NOT(t)
    """
    if i < 0 or i >= len(c.gates):
        raise IndexError(f"index {i} out of range")
    g1 = c.gates[i]
    g2 = c.gates[i + 1] if i + 1 < len(c.gates) else None

    if g2 is not None and g1.target == g2.target:
        t = g1.target
        if g1.arity == 1 and g2.arity == 1:
            c1, c2 = next(iter(g1.controls)), next(iter(g2.controls))
            if c1.line == c2.line and c1.polarity != c2.polarity:
                return RewriteResult((mct([], t),), (i, i + 2), "r-ctr")
        pair = sorted((g1, g2), key=lambda g: g.arity)
        if pair[0].arity == 0 and pair[1].arity == 1:
            ctl = next(iter(pair[1].controls))
            if not ctl.positive:
                return RewriteResult((mct([ctl.line], t),), (i, i + 2), "r-ctr")

    if g1.arity == 1:
        ctl = next(iter(g1.controls))
        if not ctl.positive:
            new = (mct([ctl.line], g1.target), mct([], g1.target))
            return RewriteResult(new, (i, i + 1), "r-ctr")
    return None
