"""Core IR for reversible circuits built from multiple-control Toffoli gates.

A circuit is an ordered list of gates over n named lines. Each gate flips its
target bit iff every control matches its polarity (positive = 1, negative = 0).

Bit convention (used everywhere in this package): the line with index 0, i.e.
the first declared line, is the MOST significant bit of a state integer. A
permutation spec like (1,0,3,2,...) therefore reads with the first line as the
high bit.

Gates are applied in list order: gates[0] acts first.
"""
from __future__ import annotations

import string
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterable, Union

# Hard cap on simulation width: permutations are materialized as 2^n arrays.
MAX_SIM_WIDTH = 16


class WidthLimitError(Exception):
    """Circuit too wide to simulate exhaustively."""


class WidthMismatchError(Exception):
    """Two circuits (or a circuit and a spec) disagree on width."""


class Polarity(Enum):
    POSITIVE = "+"
    NEGATIVE = "-"

    def toggled(self) -> "Polarity":
        return Polarity.NEGATIVE if self is Polarity.POSITIVE else Polarity.POSITIVE

    def __repr__(self) -> str:
        return "POSITIVE" if self is Polarity.POSITIVE else "NEGATIVE"


@dataclass(frozen=True)
class Control:
    line: int
    polarity: Polarity = Polarity.POSITIVE

    @property
    def positive(self) -> bool:
        return self.polarity is Polarity.POSITIVE


ControlSpec = Union[int, tuple, Control]


def _as_control(c: ControlSpec) -> Control:
    if isinstance(c, Control):
        return c
    if isinstance(c, int):
        return Control(c, Polarity.POSITIVE)
    line, pos = c
    if isinstance(pos, Polarity):
        return Control(line, pos)
    return Control(line, Polarity.POSITIVE if pos else Polarity.NEGATIVE)


@dataclass(frozen=True)
class Gate:
    """One C^mNOT gate: a polarity-tagged control set plus a target line."""

    controls: frozenset[Control]
    target: int

    def __post_init__(self):
        lines = [c.line for c in self.controls]
        if len(set(lines)) != len(lines):
            raise ValueError(f"gate controls reference a line twice: {sorted(lines)}")
        if self.target in lines:
            raise ValueError(f"gate target {self.target} is also a control line")

    @property
    def control_lines(self) -> frozenset[int]:
        return frozenset(c.line for c in self.controls)

    @property
    def arity(self) -> int:
        """Number of controls (m); 0 = NOT, 1 = CNOT, 2 = Toffoli."""
        return len(self.controls)

    def sorted_controls(self) -> list[Control]:
        return sorted(self.controls, key=lambda c: c.line)

    def with_toggled_control(self, line: int) -> "Gate":
        """Copy of this gate with the polarity of the control on `line` flipped."""
        ctrls = {c for c in self.controls if c.line != line}
        old = next(c for c in self.controls if c.line == line)
        ctrls.add(Control(line, old.polarity.toggled()))
        return Gate(frozenset(ctrls), self.target)

    def __repr__(self) -> str:
        cs = ",".join(f"{c.line}{'' if c.positive else chr(39)}" for c in self.sorted_controls())
        return f"Gate([{cs}];{self.target})"


def mct(controls: Iterable[ControlSpec], target: int) -> Gate:
    """Build a gate from loose control specs.

    Each control may be an int (positive control on that line), a
    (line, positive: bool) pair, a (line, Polarity) pair, or a Control.
    """
    return Gate(frozenset(_as_control(c) for c in controls), target)


def _default_names(n: int) -> tuple[str, ...]:
    if n <= 26:
        return tuple(string.ascii_lowercase[:n])
    return tuple(f"x{i}" for i in range(n))


@dataclass(frozen=True)
class Circuit:
    """An ordered gate list over `width` named lines. Immutable."""

    width: int
    gates: tuple[Gate, ...] = ()
    names: tuple[str, ...] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.width < 1:
            raise ValueError("circuit width must be >= 1")
        if self.names is None:
            object.__setattr__(self, "names", _default_names(self.width))
        if len(self.names) != self.width or len(set(self.names)) != self.width:
            raise ValueError("line names must be unique, one per line")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if g.target >= self.width or any(c.line >= self.width for c in g.controls):
                raise ValueError(f"gate {g} references a line outside width {self.width}")

    # -- builder helpers (return new circuits; handy in tests) --------------

    def append(self, g: Gate) -> "Circuit":
        return Circuit(self.width, self.gates + (g,), self.names)

    def x(self, target: int) -> "Circuit":
        return self.append(mct([], target))

    def cx(self, control: ControlSpec, target: int) -> "Circuit":
        return self.append(mct([control], target))

    def mcx(self, controls: Iterable[ControlSpec], target: int) -> "Circuit":
        return self.append(mct(controls, target))

    def with_gates(self, gates: Iterable[Gate]) -> "Circuit":
        return Circuit(self.width, tuple(gates), self.names)

    def __len__(self) -> int:
        return len(self.gates)


def line_bit(line: int, n: int) -> int:
    """State-integer bitmask of a line index (line 0 = MSB)."""
    return 1 << (n - 1 - line)


@lru_cache(maxsize=65536)
def _gate_masks(g: Gate, n: int) -> tuple[int, int, int]:
    pos = neg = 0
    for c in g.controls:
        if c.positive:
            pos |= line_bit(c.line, n)
        else:
            neg |= line_bit(c.line, n)
    return pos, neg, line_bit(g.target, n)


def gate_fires(g: Gate, state: int, n: int) -> bool:
    """True iff every positive control reads 1 and every negative control reads 0."""
    pos, neg, _ = _gate_masks(g, n)
    return (state & pos) == pos and (state & neg) == 0


def apply_gate(g: Gate, state: int, n: int) -> int:
    """Flip the target bit of `state` iff the gate fires. Self-inverse."""
    pos, neg, tgt = _gate_masks(g, n)
    if (state & pos) == pos and (state & neg) == 0:
        return state ^ tgt
    return state


def simulate(c: Circuit) -> tuple[int, ...]:
    """Full permutation realized by the circuit: entry i = image of input state i."""
    n = c.width
    if n > MAX_SIM_WIDTH:
        raise WidthLimitError(f"cannot simulate width {n} (limit {MAX_SIM_WIDTH})")
    states = list(range(1 << n))
    for g in c.gates:
        pos, neg, tgt = _gate_masks(g, n)
        states = [s ^ tgt if (s & pos) == pos and (s & neg) == 0 else s for s in states]
    return tuple(states)


def equivalent(c1: Circuit, c2: Circuit) -> bool:
    if c1.width != c2.width:
        raise WidthMismatchError(f"widths differ: {c1.width} vs {c2.width}")
    return simulate(c1) == simulate(c2)


def matches_spec(c: Circuit, perm: tuple[int, ...]) -> bool:
    """True iff the circuit realizes the given output permutation."""
    if len(perm) != (1 << c.width):
        raise WidthMismatchError(
            f"spec length {len(perm)} does not match width {c.width} (need {1 << c.width})"
        )
    return simulate(c) == tuple(perm)


def commutes(g1: Gate, g2: Gate) -> bool:
    """Syntactic moving-rule condition: neither target is a control of the other.

    Sufficient but not necessary for semantic commutation; kept syntactic on
    purpose (same-target runs are handled by the common-target pass).
    """
    return g1.target not in g2.control_lines and g2.target not in g1.control_lines


def same_function(g1: Gate, g2: Gate) -> bool:
    """True iff same target and identical polarity-tagged control sets."""
    return g1 == g2
