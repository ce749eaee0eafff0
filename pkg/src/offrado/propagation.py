"""Bitmask unit-propagation core shared by the discrete search and the grid prover.

Variables are small integer ids (colored integers, or grid-point indices).  A
clause records the distinct ids occurring in one solution of one equation,
left-hand values and x0 together, plus the exact witness it came from.  A
clause of color c states "not every entry is colored c": once all entries but
one are c and that one is free, the free entry is forced to the opposite
color; once every entry is c the clause is a monochromatic solution and the
state is in conflict.

Assignments are a pair of bitmasks (red, blue), so the three clause states
(satisfied / unit / conflicting) are single mask operations, and backtracking
is free because masks are passed by value.
"""

from __future__ import annotations

from dataclasses import dataclass

from .equations import Color, SolutionWitness


@dataclass(frozen=True)
class Clause:
    color: Color
    entries: tuple[int, ...]
    mask: int
    witness: SolutionWitness


class ClauseSystem:
    """Immutable clause store with a per-variable occurrence index."""

    def __init__(self, nvars: int, clauses: list[Clause]):
        self.nvars = nvars
        self.clauses = tuple(clauses)
        by_var: list[list[int]] = [[] for _ in range(nvars)]
        for cid, clause in enumerate(clauses):
            for v in clause.entries:
                by_var[v].append(cid)
        self.by_var = tuple(tuple(ids) for ids in by_var)


def propagate_masks(
    system: ClauseSystem, red: int, blue: int, pending: list[int]
) -> tuple[int, int, list[tuple[int, int]], int | None]:
    """Run unit forcing to fixpoint from the given assignment.

    ``pending`` seeds the worklist with variables whose assignment is news to
    the clause store.  Returns (red, blue, forcings, conflict): ``forcings``
    lists (variable, clause id) in the order applied, each variable taking the
    opposite of its clause's color; ``conflict`` is the id of a monochromatic
    clause, or None.  Forcings already applied stay applied on conflict, which
    callers treat as a dead state anyway.
    """
    forcings: list[tuple[int, int]] = []
    queue = list(pending)
    clauses = system.clauses
    by_var = system.by_var
    qi = 0
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        for cid in by_var[v]:
            clause = clauses[cid]
            own, other = (red, blue) if clause.color is Color.RED else (blue, red)
            em = clause.mask
            if em & other:
                continue  # some entry has the opposite color: satisfied forever
            free = em & ~own
            if free == 0:
                return red, blue, forcings, cid
            if free & (free - 1) == 0:  # exactly one entry undecided
                if clause.color is Color.RED:
                    blue |= free
                else:
                    red |= free
                forcings.append((free.bit_length() - 1, cid))
                queue.append(free.bit_length() - 1)
    return red, blue, forcings, None
