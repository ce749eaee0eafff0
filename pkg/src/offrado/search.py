"""Exact discrete Rado numbers over {1..n} by propagation-driven search.

The search branches on the lowest uncolored integer, red first, propagating
after every decision, so extremal colorings and node counts are reproducible.
A numpy bitmask sweep over all 2^n colorings serves as the independent oracle
(and as the ``--no-propagation`` mode); it shares no inference machinery with
the propagating search.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Union

import numpy as np

from .equations import (
    Color,
    ProblemSpec,
    RadoKind,
    RadoValue,
    SolutionWitness,
    Verdict,
    formula_discrete,
)
from .propagation import Clause, ClauseSystem, propagate_masks

BRUTE_FORCE_LIMIT = 26  # 2^n sweep; past this the oracle mode refuses rather than hangs
_SWEEP_CHUNK = 1 << 20


@dataclass(frozen=True)
class DiscreteColoring:
    """Assignment on {1..n}; entries may be None (uncolored) while searching."""

    n: int
    colors: tuple[Optional[Color], ...]

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.colors) != self.n + 1 or self.colors[0] is not None:
            raise ValueError("colors must have length n+1 with index 0 unused")

    @classmethod
    def empty(cls, n: int) -> "DiscreteColoring":
        return cls(n, (None,) * (n + 1))

    @classmethod
    def from_sets(cls, n: int, red, blue) -> "DiscreteColoring":
        red, blue = set(red), set(blue)
        if red & blue:
            raise ValueError("red and blue sets overlap")
        if not red | blue <= set(range(1, n + 1)):
            raise ValueError("sets must lie in {1..n}")
        colors = [None] + [
            Color.RED if i in red else Color.BLUE if i in blue else None
            for i in range(1, n + 1)
        ]
        return cls(n, tuple(colors))

    @property
    def is_total(self) -> bool:
        return all(c is not None for c in self.colors[1:])

    def color_of(self, i: int) -> Optional[Color]:
        return self.colors[i]

    def values_of(self, color: Color) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.n + 1) if self.colors[i] is color)

    def assign(self, i: int, color: Color) -> "DiscreteColoring":
        if not 1 <= i <= self.n:
            raise ValueError(f"{i} outside 1..{self.n}")
        colors = list(self.colors)
        colors[i] = color
        return DiscreteColoring(self.n, tuple(colors))

    def swapped(self) -> "DiscreteColoring":
        return DiscreteColoring(
            self.n, tuple(c.opposite if c is not None else None for c in self.colors)
        )

    def as_json(self) -> dict:
        return {
            "n": self.n,
            "red": list(self.values_of(Color.RED)),
            "blue": list(self.values_of(Color.BLUE)),
        }

    @classmethod
    def from_json(cls, obj) -> "DiscreteColoring":
        if not isinstance(obj, dict) or not {"n", "red", "blue"} <= set(obj):
            raise ValueError("coloring object must carry n, red, blue")
        return cls.from_sets(obj["n"], obj["red"], obj["blue"])


@dataclass(frozen=True)
class Conflict:
    """Propagation dead end: a solution went monochromatic under forced colors."""

    witness: SolutionWitness


@dataclass
class SearchStats:
    nodes_explored: int = 0
    propagations: int = 0
    elapsed_seconds: float = 0.0

    def as_json(self) -> dict:
        return {
            "nodes_explored": self.nodes_explored,
            "propagations": self.propagations,
            "elapsed_seconds": self.elapsed_seconds,
        }


@dataclass(frozen=True)
class SearchReport:
    spec: ProblemSpec
    value: Optional[int]
    extremal: Optional[DiscreteColoring]
    stats: SearchStats
    formula_value: int
    formula_mismatch: bool
    max_n: int
    scan: Optional[tuple[tuple[int, bool], ...]] = None

    @property
    def rado_value(self) -> RadoValue:
        if self.value is None:
            raise ValueError(f"scan cap {self.max_n} exhausted; no value was established")
        return RadoValue(Fraction(self.value), RadoKind.SEARCH_EXACT)

    def as_json(self) -> dict:
        out = {
            "spec": self.spec.as_json(),
            "value": self.value,
            "extremal": self.extremal.as_json() if self.extremal else None,
            "stats": self.stats.as_json(),
            "formula_value": self.formula_value,
            "formula_mismatch": self.formula_mismatch,
            "max_n": self.max_n,
        }
        if self.scan is not None:
            out["scan"] = [{"n": n, "colorable": ok} for n, ok in self.scan]
        return out


def enumerate_solutions(m: int, n: int, color: Color = Color.RED) -> Iterator[SolutionWitness]:
    """Every multiset {x1 <= ... <= xm} in {1..n} with x0 = sum <= n, once each,
    in lexicographic multiset order."""
    if not (isinstance(m, int) and m >= 1 and isinstance(n, int) and n >= 1):
        raise ValueError(f"need m >= 1 and n >= 1, got m={m!r}, n={n!r}")

    def rec(prefix: list[int], lo: int, total: int) -> Iterator[SolutionWitness]:
        if len(prefix) == m:
            yield SolutionWitness.from_values(color, prefix, total)
            return
        remaining = m - len(prefix)
        v = lo
        while total + v * remaining <= n:
            prefix.append(v)
            yield from rec(prefix, v, total + v)
            prefix.pop()
            v += 1

    yield from rec([], 1, 0)


@lru_cache(maxsize=None)
def _clauses(m: int, n: int, color: Color) -> tuple[Clause, ...]:
    out = []
    for witness in enumerate_solutions(m, n, color):
        entries = tuple(sorted(int(p) for p in witness.points()))
        mask = 0
        for v in entries:
            mask |= 1 << v
        out.append(Clause(color, entries, mask, witness))
    return tuple(out)


@lru_cache(maxsize=None)
def _system(k: int, l: int, n: int) -> ClauseSystem:
    clauses = list(_clauses(k, n, Color.RED)) + list(_clauses(l, n, Color.BLUE))
    return ClauseSystem(n + 1, clauses)


def _masks(coloring: DiscreteColoring) -> tuple[int, int]:
    red = blue = 0
    for i in range(1, coloring.n + 1):
        c = coloring.colors[i]
        if c is Color.RED:
            red |= 1 << i
        elif c is Color.BLUE:
            blue |= 1 << i
    return red, blue


def _coloring_from_masks(n: int, red: int, blue: int) -> DiscreteColoring:
    colors: list[Optional[Color]] = [None] * (n + 1)
    for i in range(1, n + 1):
        if red >> i & 1:
            colors[i] = Color.RED
        elif blue >> i & 1:
            colors[i] = Color.BLUE
    return DiscreteColoring(n, tuple(colors))


def is_valid_discrete(coloring: DiscreteColoring, spec: ProblemSpec) -> Verdict:
    """WitnessFound on the first all-red k-solution or all-blue l-solution,
    in enumeration order (red stream first); Valid otherwise."""
    if not coloring.is_total:
        raise ValueError("coloring must be total")
    red, blue = _masks(coloring)
    for m, color, own in ((spec.k, Color.RED, red), (spec.l, Color.BLUE, blue)):
        for clause in _clauses(m, coloring.n, color):
            if clause.mask & ~own == 0:
                return Verdict.witness_found(clause.witness)
    return Verdict.valid()


def propagate(
    coloring: DiscreteColoring, spec: ProblemSpec
) -> Union[DiscreteColoring, Conflict]:
    """Close the assignment under unit forcing.

    Any solution with every entry but one colored by its own equation's color
    forces the last entry to the opposite color; repeated to fixpoint.
    Conflict (a value, not an error) reports a monochromatic solution among
    colored entries, which is also how "forced both ways" manifests: the
    second forcing turns some clause fully monochromatic.
    """
    system = _system(spec.k, spec.l, coloring.n)
    red, blue = _masks(coloring)
    pending = [i for i in range(1, coloring.n + 1) if coloring.colors[i] is not None]
    red, blue, _, conflict = propagate_masks(system, red, blue, pending)
    if conflict is not None:
        return Conflict(system.clauses[conflict].witness)
    return _coloring_from_masks(coloring.n, red, blue)


def brute_force_colorable(n: int, spec: ProblemSpec) -> Optional[DiscreteColoring]:
    """Oracle: sweep all 2^n total colorings with vectorized clause masks.

    Bit i-1 of a candidate means integer i is red.  Exact integer bit
    arithmetic throughout; returns the lexicographically least valid coloring
    (by red bitmask) or None.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force is capped at n={BRUTE_FORCE_LIMIT}; use propagation")
    red_masks = np.array(
        [c.mask >> 1 for c in _clauses(spec.k, n, Color.RED)], dtype=np.uint64
    )
    blue_masks = np.array(
        [c.mask >> 1 for c in _clauses(spec.l, n, Color.BLUE)], dtype=np.uint64
    )
    total = 1 << n
    for start in range(0, total, _SWEEP_CHUNK):
        stop = min(start + _SWEEP_CHUNK, total)
        candidates = np.arange(start, stop, dtype=np.uint64)
        bad = np.zeros(stop - start, dtype=bool)
        for mask in red_masks:
            bad |= (candidates & mask) == mask
        for mask in blue_masks:
            bad |= (candidates & mask) == 0
        good = np.flatnonzero(~bad)
        if good.size:
            bits = int(candidates[good[0]])
            red = {i for i in range(1, n + 1) if bits >> (i - 1) & 1}
            blue = set(range(1, n + 1)) - red
            return DiscreteColoring.from_sets(n, red, blue)
    return None


def search_valid(
    n: int,
    spec: ProblemSpec,
    propagation: bool = True,
    stats: Optional[SearchStats] = None,
) -> Optional[DiscreteColoring]:
    """A valid total coloring of {1..n}, or None.

    Depth-first on the lowest uncolored integer, red before blue, propagating
    after each decision.  With propagation disabled this delegates to the
    brute-force sweep, which shares no inference code and serves as the
    independent oracle.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if stats is None:
        stats = SearchStats()
    if not propagation:
        stats.nodes_explored += 1 << n
        return brute_force_colorable(n, spec)

    system = _system(spec.k, spec.l, n)
    all_mask = ((1 << (n + 1)) - 1) & ~1

    def dfs(red: int, blue: int) -> Optional[tuple[int, int]]:
        free = all_mask & ~(red | blue)
        if free == 0:
            return red, blue
        v = (free & -free).bit_length() - 1
        bit = 1 << v
        for color in (Color.RED, Color.BLUE):
            stats.nodes_explored += 1
            r, b = (red | bit, blue) if color is Color.RED else (red, blue | bit)
            r, b, forcings, conflict = propagate_masks(system, r, b, [v])
            stats.propagations += len(forcings)
            if conflict is None:
                found = dfs(r, b)
                if found is not None:
                    return found
        return None

    found = dfs(0, 0)
    if found is None:
        return None
    return _coloring_from_masks(n, *found)


def compute_rado(
    spec: ProblemSpec,
    max_n: Optional[int] = None,
    propagation: bool = True,
    scan: bool = False,
) -> SearchReport:
    """Least n whose colorings all contain a monochromatic solution.

    Scans n = 1, 2, ... and takes the first uncolorable n (the definition;
    colorability is not assumed monotone).  The preceding n's coloring is kept
    as the extremal witness and re-checked independently of the search.  The
    formula value is compared, never trusted: a mismatch is reported as data.
    With ``scan`` the walk continues to the cap and records every n.
    """
    formula = int(formula_discrete(spec.k, spec.l).value)
    cap = max_n if max_n is not None else formula + 5
    if cap < 1:
        raise ValueError("cap must be at least 1")
    stats = SearchStats()
    started = time.perf_counter()
    records: list[tuple[int, bool]] = []
    colorings: dict[int, DiscreteColoring] = {}
    value: Optional[int] = None
    for n in range(1, cap + 1):
        found = search_valid(n, spec, propagation=propagation, stats=stats)
        records.append((n, found is not None))
        if found is not None:
            colorings[n] = found
        elif value is None:
            value = n
            if not scan:
                break
    stats.elapsed_seconds = time.perf_counter() - started

    extremal = None
    if value is not None:
        extremal = colorings.get(value - 1)
        if value > 1:
            if extremal is None or not is_valid_discrete(extremal, spec).is_valid:
                raise RuntimeError("extremal coloring failed its independent re-check")
    return SearchReport(
        spec=spec,
        value=value,
        extremal=extremal,
        stats=stats,
        formula_value=formula,
        formula_mismatch=value is not None and value != formula,
        max_n=cap,
        scan=tuple(records) if scan else None,
    )
