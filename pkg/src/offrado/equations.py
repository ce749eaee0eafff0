"""Problem definition, solution semantics, and the closed-form number oracles.

Red always guards the k-variable equation x1 + ... + xk = x0 and blue always
guards the l-variable equation x1 + ... + xl = x0.  The pairing is fixed and
asymmetric: a blue solution to the red equation counts for nothing.  Swapping
the colors of a coloring therefore changes which equation each class guards;
colorings expose a ``swapped()`` helper for that, there is no symmetric spec.

Every value is an exact ``fractions.Fraction``; no float enters any
verification path.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .serialize import exact_fraction, format_rational, parse_rational

ONE = Fraction(1)


class Color(enum.Enum):
    RED = "red"
    BLUE = "blue"

    @property
    def opposite(self) -> "Color":
        return Color.BLUE if self is Color.RED else Color.RED


@dataclass(frozen=True)
class ProblemSpec:
    """Arities of the two guarded equations plus the domain's left endpoint."""

    k: int
    l: int
    gamma: Fraction = ONE

    def __post_init__(self) -> None:
        if not isinstance(self.k, int) or not isinstance(self.l, int):
            raise ValueError("arities k and l must be integers")
        if not 2 <= self.k <= self.l:
            raise ValueError(f"need 2 <= k <= l, got k={self.k}, l={self.l}")
        object.__setattr__(self, "gamma", exact_fraction(self.gamma))
        if self.gamma <= 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")

    def arity(self, color: Color) -> int:
        return self.k if color is Color.RED else self.l

    def scaled(self, factor) -> "ProblemSpec":
        """Same arities, left endpoint multiplied by a positive factor."""
        factor = exact_fraction(factor)
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return ProblemSpec(self.k, self.l, self.gamma * factor)

    def as_json(self) -> dict:
        return {"k": self.k, "l": self.l, "gamma": format_rational(self.gamma)}

    @classmethod
    def from_json(cls, obj) -> "ProblemSpec":
        if not isinstance(obj, dict) or not {"k", "l"} <= set(obj):
            raise ValueError("spec object must carry k and l")
        k, l = obj["k"], obj["l"]
        if not isinstance(k, int) or not isinstance(l, int):
            raise ValueError("spec arities must be JSON integers")
        gamma = parse_rational(obj["gamma"]) if "gamma" in obj else ONE
        return cls(k, l, gamma)


@dataclass(frozen=True)
class SolutionWitness:
    """One instance of a guarded equation: a left-hand multiset plus x0.

    ``left`` is canonicalized to sorted (value, multiplicity) pairs with
    positive multiplicities, so equality and hashing are multiset semantics.
    Arithmetic correctness is *not* enforced here; ``check_witness`` and the
    certificate verifier do that, which is what makes tampered witnesses
    representable (and detectable).
    """

    color: Color
    left: tuple[tuple[Fraction, int], ...]
    x0: Fraction

    def __post_init__(self) -> None:
        merged: dict[Fraction, int] = {}
        for value, mult in self.left:
            value = exact_fraction(value)
            if not isinstance(mult, int) or mult < 1:
                raise ValueError(f"multiplicity must be a positive integer, got {mult!r}")
            merged[value] = merged.get(value, 0) + mult
        object.__setattr__(self, "left", tuple(sorted(merged.items())))
        object.__setattr__(self, "x0", exact_fraction(self.x0))

    @classmethod
    def from_values(cls, color: Color, values: Iterable, x0) -> "SolutionWitness":
        return cls(color, tuple((exact_fraction(v), 1) for v in values), x0)

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.left)

    @property
    def left_sum(self) -> Fraction:
        return sum((v * m for v, m in self.left), Fraction(0))

    def points(self) -> Iterator[Fraction]:
        """Distinct values occurring anywhere in the instance, x0 included."""
        seen_x0 = False
        for v, _ in self.left:
            if v == self.x0:
                seen_x0 = True
            yield v
        if not seen_x0:
            yield self.x0

    def contains(self, point: Fraction) -> bool:
        return point == self.x0 or any(v == point for v, _ in self.left)

    def scaled(self, factor) -> "SolutionWitness":
        factor = exact_fraction(factor)
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return SolutionWitness(
            self.color, tuple((v * factor, m) for v, m in self.left), self.x0 * factor
        )

    def as_json(self) -> dict:
        return {
            "color": self.color.value,
            "left": [[format_rational(v), m] for v, m in self.left],
            "x0": format_rational(self.x0),
        }

    @classmethod
    def from_json(cls, obj) -> "SolutionWitness":
        if not isinstance(obj, dict) or set(obj) != {"color", "left", "x0"}:
            raise ValueError("witness object must carry exactly color, left, x0")
        try:
            color = Color(obj["color"])
        except ValueError:
            raise ValueError(f"unknown color {obj['color']!r}") from None
        left = obj["left"]
        if not isinstance(left, list):
            raise ValueError("witness left side must be a list of [value, multiplicity]")
        pairs = []
        for item in left:
            if not (isinstance(item, list) and len(item) == 2 and isinstance(item[1], int)):
                raise ValueError(f"malformed left entry {item!r}")
            pairs.append((parse_rational(item[0]), item[1]))
        return cls(color, tuple(pairs), parse_rational(obj["x0"]))


class RadoKind(enum.Enum):
    DISCRETE_FORMULA = "discrete-formula"
    CONTINUOUS_FORMULA = "continuous-formula"
    SEARCH_EXACT = "search-exact"


@dataclass(frozen=True)
class RadoValue:
    value: Fraction
    kind: RadoKind

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", exact_fraction(self.value))
        if self.value <= 0:
            raise ValueError("a Rado number is positive")
        if self.kind is not RadoKind.CONTINUOUS_FORMULA and self.value.denominator != 1:
            raise ValueError(f"{self.kind.value} values are integers, got {self.value}")


def formula_discrete(k: int, l: int) -> RadoValue:
    """Known integer value: 3l-1 (k=2, l even), 3l-2 (k=2, l odd >= 3), else kl+k-1."""
    if not (isinstance(k, int) and isinstance(l, int) and 2 <= k <= l):
        raise ValueError(f"need integers 2 <= k <= l, got k={k!r}, l={l!r}")
    if k == 2:
        value = 3 * l - 1 if l % 2 == 0 else 3 * l - 2
    else:
        value = k * l + k - 1
    return RadoValue(Fraction(value), RadoKind.DISCRETE_FORMULA)


def formula_continuous(k: int, l: int, gamma=ONE) -> RadoValue:
    """Real-domain value gamma*(kl + k - 1), one formula for every k >= 2."""
    if not (isinstance(k, int) and isinstance(l, int) and 2 <= k <= l):
        raise ValueError(f"need integers 2 <= k <= l, got k={k!r}, l={l!r}")
    gamma = exact_fraction(gamma)
    if gamma <= 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    return RadoValue(gamma * (k * l + k - 1), RadoKind.CONTINUOUS_FORMULA)


def formula_degenerate_k1(l: int) -> RadoValue:
    """k=1 forces every number blue (x1 = x0 is always a red solution), so the
    answer is just l, where the all-blue class first meets its own equation."""
    if not isinstance(l, int) or l < 1:
        raise ValueError(f"need an integer l >= 1, got {l!r}")
    return RadoValue(Fraction(l), RadoKind.CONTINUOUS_FORMULA)


def check_witness(spec: ProblemSpec, witness: SolutionWitness) -> bool:
    """True iff the witness is an actual equation instance inside the domain.

    Checks the exact sum, the arity of its color, and that every value
    (x0 included) is >= gamma.  Never raises; bad witnesses are just False.
    """
    if witness.total_multiplicity != spec.arity(witness.color):
        return False
    if witness.left_sum != witness.x0:
        return False
    if witness.x0 < spec.gamma:
        return False
    return all(v >= spec.gamma for v, _ in witness.left)


class VerdictStatus(enum.Enum):
    VALID = "Valid"
    WITNESS_FOUND = "WitnessFound"


@dataclass(frozen=True)
class Verdict:
    """Outcome of checking a coloring: Valid, or a concrete monochromatic hit."""

    status: VerdictStatus
    witness: Optional[SolutionWitness] = field(default=None)

    def __post_init__(self) -> None:
        if (self.status is VerdictStatus.WITNESS_FOUND) != (self.witness is not None):
            raise ValueError("witness present iff status is WitnessFound")

    @property
    def is_valid(self) -> bool:
        return self.status is VerdictStatus.VALID

    @classmethod
    def valid(cls) -> "Verdict":
        return cls(VerdictStatus.VALID)

    @classmethod
    def witness_found(cls, witness: SolutionWitness) -> "Verdict":
        return cls(VerdictStatus.WITNESS_FOUND, witness)

    def as_json(self) -> dict:
        out: dict = {"status": self.status.value}
        if self.witness is not None:
            out["witness"] = self.witness.as_json()
        return out
