"""Common-target optimization.

A maximal run of gates sharing a target line realizes, on that target, the
XOR of its gates' control functions. That function over the other v = n-1
lines is a Karnaugh map whose 1-cells mark assignments flipping the target an
odd number of times. Re-synthesis picks a set of cubes (subcubes of the map)
whose XOR equals the map -- optionally the complemented map plus a trailing
NOT -- and emits one Toffoli gate per cube, keeping the result only when it
is strictly cheaper.

Cover rules: every 1-cell is covered an odd number of times, every 0-cell an
even number of times, cube sizes are powers of two. The search minimizes the
emitted quantum cost, tie-broken by fewer cubes, then fewer control literals.

Exact minimization (v <= 4) runs a shortest-path relaxation over residual
maps: state = remaining cell-parity vector, edges = XOR-ing in one of the 3^v
cubes, edge weight = the cube's gate cost. Larger maps use greedy peeling of
the highest uncovered cell plus pairwise cube merging.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .core import Circuit, Control, Gate, Polarity, commutes, mct
from .cost import gate_cost

_FREE = None
_WEIGHT_CUBE = 1 << 12   # cube-count tie-break field
_WEIGHT_COST = 1 << 24   # cost field (dominant)
_EXACT_HARD_CAP = 4      # 2^(2^v) residual-map table is infeasible past this


@dataclass(frozen=True)
class Window:
    """A contiguous run of same-target gates inside a (rearranged) circuit."""

    target: int
    var_order: tuple[int, ...]       # the other n-1 lines, index order
    gate_indices: tuple[int, int]    # [start, end) in the rearranged circuit
    gates: tuple[Gate, ...]


@dataclass(frozen=True)
class Kmap:
    """Parity function over the 2^vars control-space cells.

    cells is a bitmask: bit i = value of cell i, where cell indices assign
    var_order[0] the most significant bit.
    """

    vars: int
    cells: int


@dataclass(frozen=True)
class Cube:
    """A subcube of the map: fixed vars pinned to polarities, the rest free.

    Variables are positions into a window's var_order. Covers 2^(v-|fixed|)
    cells.
    """

    literals: frozenset[tuple[int, Polarity]]

    def __post_init__(self):
        vs = [j for j, _ in self.literals]
        if len(set(vs)) != len(vs):
            raise ValueError("cube fixes a variable twice")

    @property
    def num_fixed(self) -> int:
        return len(self.literals)

    def mask(self, v: int) -> int:
        """Bitmask of covered cells in a v-variable map."""
        m = (1 << (1 << v)) - 1
        for j, pol in self.literals:
            ones = _var_one_mask(v, j)
            m &= ones if pol is Polarity.POSITIVE else ~ones & ((1 << (1 << v)) - 1)
        return m


@dataclass(frozen=True)
class Cover:
    """Cubes whose XOR (complemented when inverted) equals a map; the
    inverted flag costs one trailing NOT on the target."""

    cubes: tuple[Cube, ...]
    inverted: bool = False


@lru_cache(maxsize=None)
def _var_one_mask(v: int, j: int) -> int:
    m = 0
    for cell in range(1 << v):
        if (cell >> (v - 1 - j)) & 1:
            m |= 1 << cell
    return m


def _cube_gate_cost(m: int, all_negative: bool, n: int) -> int:
    """Cost of the gate a cube emits: m controls in a width-n circuit."""
    # mixes with >=1 positive cost the same as all-positive, so two probes cover it
    pol = Polarity.NEGATIVE if all_negative else Polarity.POSITIVE
    controls = [Control(i + 1, pol) for i in range(m)]
    return gate_cost(Gate(frozenset(controls), 0), n)


def cube_cost(cube: Cube, v: int) -> int:
    """Quantum cost of the gate this cube emits in a width v+1 circuit."""
    m = cube.num_fixed
    all_neg = m > 0 and all(pol is Polarity.NEGATIVE for _, pol in cube.literals)
    return _cube_gate_cost(m, all_neg, v + 1)


def cover_cost(cv: Cover, v: int) -> int:
    """Total emitted quantum cost, including the trailing NOT when inverted."""
    return sum(cube_cost(q, v) for q in cv.cubes) + (1 if cv.inverted else 0)


# ---------------------------------------------------------------------------
# window extraction


def cluster_common_targets(
    c: Circuit, lookahead: int = 16
) -> tuple[Circuit, list[Window]]:
    """Rearrange the circuit (moving rule only) to maximize same-target runs.

    Returns the equivalent rearranged circuit and its complete left-to-right
    partition into same-target windows (length-1 windows included).
    """
    gates = list(c.gates)
    i = 0
    windows: list[Window] = []
    var_orders = {t: tuple(x for x in range(c.width) if x != t) for t in range(c.width)}
    while i < len(gates):
        t = gates[i].target
        end = i + 1
        j = end
        while j < len(gates) and j - end <= lookahead:
            g = gates[j]
            if g.target == t and all(commutes(gates[k], g) for k in range(end, j)):
                del gates[j]
                gates.insert(end, g)
                end += 1
            j += 1
        windows.append(
            Window(t, var_orders[t], (i, end), tuple(gates[i:end]))
        )
        i = end
    return c.with_gates(gates), windows


def extract_windows(c: Circuit, lookahead: int = 16) -> list[Window]:
    """Same-target windows of the move-rearranged circuit; the rearrangement
    is equivalence-preserving (see cluster_common_targets for both halves)."""
    return cluster_common_targets(c, lookahead)[1]


def build_kmap(w: Window) -> Kmap:
    """XOR of the window gates' control-cube indicators over var_order."""
    v = len(w.var_order)
    pos = {line: j for j, line in enumerate(w.var_order)}
    cells = 0
    for g in w.gates:
        cube = Cube(frozenset((pos[c.line], c.polarity) for c in g.controls))
        cells ^= cube.mask(v)
    return Kmap(v, cells)


# ---------------------------------------------------------------------------
# exact minimization: relaxation over residual maps


def _all_cubes(v: int) -> list[Cube]:
    cubes = []
    for code in range(3**v):
        lits = []
        x = code
        for j in range(v):
            x, r = divmod(x, 3)
            if r == 1:
                lits.append((j, Polarity.POSITIVE))
            elif r == 2:
                lits.append((j, Polarity.NEGATIVE))
        cubes.append(Cube(frozenset(lits)))
    return cubes


def _cube_weight(cube: Cube, v: int) -> int:
    # lexicographic (cost, cubes, literals) packed into one integer
    return cube_cost(cube, v) * _WEIGHT_COST + _WEIGHT_CUBE + cube.num_fixed


@lru_cache(maxsize=None)
def _exact_tables(v: int):
    """Min packed weight of a cover for every possible v-variable map."""
    cubes = _all_cubes(v)
    edges = [(q.mask(v), _cube_weight(q, v)) for q in cubes]
    size = 1 << (1 << v)
    big = np.int64(1) << 60
    dist = np.full(size, big, dtype=np.int64)
    dist[0] = 0
    idx = np.arange(size)
    changed = True
    while changed:
        changed = False
        for mask, w in edges:
            cand = dist[idx ^ mask] + w
            upd = cand < dist
            if upd.any():
                dist[upd] = cand[upd]
                changed = True
    return cubes, edges, dist


def _exact_solve(v: int, target: int) -> tuple[list[Cube], int]:
    cubes, edges, dist = _exact_tables(v)
    out: list[Cube] = []
    m = target
    total = int(dist[target])
    while m:
        for q, (mask, w) in zip(cubes, edges):
            if dist[m ^ mask] + w == dist[m]:
                out.append(q)
                m ^= mask
                break
        else:  # pragma: no cover - dist table always admits a step
            raise RuntimeError("cover reconstruction failed")
    return out, total


# ---------------------------------------------------------------------------
# heuristic minimization: peel the highest uncovered cell


def _cube_from_mask(v: int, m: int) -> Cube | None:
    """The unique cube covering exactly the cells of m, if one exists."""
    if m == 0:
        return None
    cells = []
    x = m
    while x:
        low = x & -x
        cells.append(low.bit_length() - 1)
        x ^= low
    base = cells[0]
    span = 0
    for cell in cells:
        span |= cell ^ base
    if len(cells) != 1 << span.bit_count():
        return None
    if any((cell ^ base) & ~span for cell in cells):
        return None
    lits = []
    for j in range(v):
        bit = 1 << (v - 1 - j)
        if span & bit:
            continue
        pol = Polarity.POSITIVE if base & bit else Polarity.NEGATIVE
        lits.append((j, pol))
    return Cube(frozenset(lits))


def _peel_candidates(v: int, cell: int) -> list[Cube]:
    """Cubes whose highest covered cell is exactly `cell`: fixed vars take the
    cell's values, free vars range over the cell's 1-positions."""
    one_positions = [j for j in range(v) if (cell >> (v - 1 - j)) & 1]
    if len(one_positions) > 12:  # keep enumeration bounded on huge maps
        subsets = [()] + [(j,) for j in one_positions] + [tuple(one_positions)]
    else:
        subsets = [
            combo
            for r in range(len(one_positions) + 1)
            for combo in combinations(one_positions, r)
        ]
    out = []
    for free in subsets:
        lits = []
        for j in range(v):
            if j in free:
                continue
            bit = (cell >> (v - 1 - j)) & 1
            lits.append((j, Polarity.POSITIVE if bit else Polarity.NEGATIVE))
        out.append(Cube(frozenset(lits)))
    return out


def _greedy_solve(v: int, target: int) -> tuple[list[Cube], int]:
    full = (1 << (1 << v)) - 1
    residual = target
    picked: list[Cube] = []
    while residual:
        top = residual.bit_length() - 1
        best = None
        for q in _peel_candidates(v, top):
            qm = q.mask(v)
            gain = (residual & qm).bit_count() - (qm & ~residual & full).bit_count()
            key = (-gain, cube_cost(q, v), q.num_fixed)
            if best is None or key < best[0]:
                best = (key, q, qm)
        _, q, qm = best
        picked.append(q)
        residual ^= qm
    # pairwise merge: replace two cubes by one when their XOR is a cube
    improved = True
    while improved:
        improved = False
        for a, b in combinations(range(len(picked)), 2):
            merged_mask = picked[a].mask(v) ^ picked[b].mask(v)
            if merged_mask == 0:
                picked = [q for i, q in enumerate(picked) if i not in (a, b)]
                improved = True
                break
            merged = _cube_from_mask(v, merged_mask)
            if merged is not None and cube_cost(merged, v) < cube_cost(
                picked[a], v
            ) + cube_cost(picked[b], v):
                picked = [q for i, q in enumerate(picked) if i not in (a, b)]
                picked.append(merged)
                improved = True
                break
    weight = sum(_cube_weight(q, v) for q in picked)
    return picked, weight


def minimize_cover(k: Kmap, exact_threshold: int = 4) -> Cover:
    """Cheapest cover found for the map, trying both the direct and the
    complemented (inverted + trailing NOT) realization.

    Exact for k.vars <= min(exact_threshold, 4); greedy above that.
    """
    v = k.vars
    if v < 1:
        raise ValueError("maps need at least one variable; width-1 runs are a NOT parity")
    full = (1 << (1 << v)) - 1
    solve = _exact_solve if v <= min(exact_threshold, _EXACT_HARD_CAP) else _greedy_solve
    direct, w_direct = solve(v, k.cells)
    inv, w_inv = solve(v, k.cells ^ full)
    w_inv += _WEIGHT_COST + _WEIGHT_CUBE  # the trailing NOT
    if w_inv < w_direct:
        return Cover(tuple(inv), inverted=True)
    return Cover(tuple(direct), inverted=False)


def cover_to_gates(cv: Cover, w: Window) -> list[Gate]:
    """One gate per cube (controls = the cube's fixed literals), plus a NOT
    on the target when the cover realizes the complemented map."""
    gates = []
    for q in cv.cubes:
        controls = frozenset(
            Control(w.var_order[j], pol) for j, pol in q.literals
        )
        gates.append(Gate(controls, w.target))
    if cv.inverted:
        gates.append(mct([], w.target))
    return gates


def ctr_optimize(c: Circuit, exact_threshold: int = 4, lookahead: int = 16) -> Circuit:
    """Re-synthesize every same-target window, keeping strict cost wins only."""
    rearranged, windows = cluster_common_targets(c, lookahead)
    n = c.width
    out: list[Gate] = []
    for w in windows:
        if n == 1:
            new = (mct([], w.target),) * (len(w.gates) % 2)
        else:
            cv = minimize_cover(build_kmap(w), exact_threshold=exact_threshold)
            new = tuple(cover_to_gates(cv, w))
        old_cost = sum(gate_cost(g, n) for g in w.gates)
        new_cost = sum(gate_cost(g, n) for g in new)
        out.extend(new if new_cost < old_cost else w.gates)
    return rearranged.with_gates(out)
