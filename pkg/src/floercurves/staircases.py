"""Staircase complexes and closed-form V_s computations.

Gradings are stored doubled: a pair (w2, z2) means (gr_w, gr_z) = (w2/2, z2/2).
A positive staircase lists its generators x_0, y_1, x_2, ..., x_{2r} with

    ∂y_{2i+1} = U^{β_{2i+1}} x_{2i} + V^{β_{2i+2}} x_{2i+2},

so x_0 sits at gr_w = 0 and x_{2r} at gr_z = 0.  A negative staircase is the
dual: same labels, negated gradings and arrows reversed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .errors import AlternationFailure, MultiStaircaseUnsupported
from .semigroups import NumericalSemigroup, counting_function

__all__ = [
    "Staircase",
    "GradedGeneratorSet",
    "alexander_exponents",
    "staircase_from_semigroup",
    "basic_staircase",
    "dualize",
    "shift",
    "shifted_v",
    "basic_v",
    "v_s_positive",
    "v_s_with_positive_basics",
    "v_s_with_negative_basics",
    "v_s_mixed_bound",
]

Grading = tuple[int, int]


@dataclass(frozen=True)
class GradedGeneratorSet:
    """(α, β) = (-gr_w/2, -gr_z/2) for the level-zero generators of a multi-staircase."""

    pairs: tuple[tuple[int, int], ...]

    @classmethod
    def from_gradings(cls, gradings: Iterable[Grading]) -> "GradedGeneratorSet":
        """Build from doubled gradings; each must be a multiple of 4."""
        pairs = []
        for w2, z2 in gradings:
            if w2 % 4 or z2 % 4:
                raise ValueError(f"level-zero gradings must be even, got doubled {(w2, z2)}")
            pairs.append((-w2 // 4, -z2 // 4))
        return cls(tuple(pairs))

    @classmethod
    def unit(cls) -> "GradedGeneratorSet":
        return cls(((0, 0),))

    def __mul__(self, other: "GradedGeneratorSet") -> "GradedGeneratorSet":
        return GradedGeneratorSet(
            tuple((a1 + a2, b1 + b2) for (a1, b1), (a2, b2) in product(self.pairs, other.pairs))
        )

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class Staircase:
    sign: int
    steps: tuple[int, ...]
    gradings: tuple[Grading, ...]

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if len(self.steps) % 2 or any(b <= 0 for b in self.steps):
            raise ValueError("steps must be an even-length list of positive integers")
        expected = _positive_gradings(self.steps)
        if self.sign == -1:
            expected = tuple((-w, -z) for w, z in expected)
        if tuple(self.gradings) != expected:
            raise ValueError("gradings are inconsistent with the steps and the normalization")

    @property
    def rank(self) -> int:
        return len(self.gradings)

    @property
    def genus(self) -> int:
        return sum(self.steps) // 2

    @property
    def x_gradings(self) -> tuple[Grading, ...]:
        return self.gradings[::2]

    @property
    def y_gradings(self) -> tuple[Grading, ...]:
        return self.gradings[1::2]

    def zero_level(self) -> GradedGeneratorSet:
        return GradedGeneratorSet.from_gradings(self.x_gradings)

    def arrows(self) -> list[tuple[int, int, tuple[int, int]]]:
        """Differential as (source, target, (U-power, V-power)) triples."""
        out = []
        for i in range(len(self.steps) // 2):
            y, x_prev, x_next = 2 * i + 1, 2 * i, 2 * i + 2
            u_pow, v_pow = self.steps[2 * i], self.steps[2 * i + 1]
            if self.sign == 1:
                out.append((y, x_prev, (u_pow, 0)))
                out.append((y, x_next, (0, v_pow)))
            else:
                out.append((x_prev, y, (u_pow, 0)))
                out.append((x_next, y, (0, v_pow)))
        return out


def _positive_gradings(steps: Sequence[int]) -> tuple[Grading, ...]:
    r = len(steps) // 2
    w = [0] * (r + 1)
    z = [0] * (r + 1)
    for i in range(r):
        w[i + 1] = w[i] - 2 * steps[2 * i]
    for i in range(r - 1, -1, -1):
        z[i] = z[i + 1] - 2 * steps[2 * i + 1]
    out: list[Grading] = []
    for i in range(r + 1):
        out.append((2 * w[i], 2 * z[i]))
        if i < r:
            out.append((2 * (w[i + 1] + 1), 2 * (z[i] + 1)))
    return tuple(out)


def alexander_exponents(S: NumericalSemigroup) -> tuple[int, ...]:
    """Exponents of 1 + (t-1)·Σ t^gap, checked to carry alternating coefficients +1, -1, ..., +1."""
    coeffs: dict[int, int] = {0: 1}
    for g in S.gaps:
        coeffs[g + 1] = coeffs.get(g + 1, 0) + 1
        coeffs[g] = coeffs.get(g, 0) - 1
    terms = sorted((e, c) for e, c in coeffs.items() if c)
    for i, (e, c) in enumerate(terms):
        if c != (1 if i % 2 == 0 else -1):
            raise AlternationFailure(f"coefficient {c} at t^{e} breaks the ±1 alternation")
    if terms[-1][1] != 1:
        raise AlternationFailure("top coefficient is not +1")
    return tuple(e for e, _ in terms)


def staircase_from_semigroup(S: NumericalSemigroup) -> Staircase:
    alphas = alexander_exponents(S)
    steps = tuple(b - a for a, b in zip(alphas, alphas[1:]))
    gradings = _positive_gradings(steps)
    R = counting_function(S)
    for i, (w2, z2) in zip(range(0, len(alphas), 2), gradings[::2]):
        a = alphas[i]
        assert (w2, z2) == (-4 * R(a), 4 * (a - R(a) - S.genus)), "grading rule mismatch"
    return Staircase(1, steps, gradings)


def basic_staircase(n: int) -> Staircase:
    """S^n for n > 0 (all steps 1), its dual S^{-|n|} for n < 0."""
    if n == 0:
        raise ValueError("S^0 is the rank-one trivial complex; build it explicitly")
    if n < 0:
        return dualize(basic_staircase(-n))
    steps = (1,) * (2 * n)
    return Staircase(1, steps, _positive_gradings(steps))


def dualize(C: Staircase) -> Staircase:
    return Staircase(-C.sign, C.steps, tuple((-w, -z) for w, z in C.gradings))


def shift(gradings: Iterable[Grading], a, b) -> tuple[Grading, ...]:
    """Add (a, b) (integers or halves) to every doubled grading."""
    a2, b2 = Fraction(a) * 2, Fraction(b) * 2
    if a2.denominator != 1 or b2.denominator != 1:
        raise ValueError("shifts must be multiples of 1/2")
    return tuple((w + int(a2), z + int(b2)) for w, z in gradings)


def shifted_v(v_of, s, a, b) -> Fraction:
    """V_s of C{a,b} given V of C, using V_{t+(a-b)/2}(C{a,b}) = V_t(C) - a/2."""
    a, b = Fraction(a), Fraction(b)
    t = Fraction(s) - (a - b) / 2
    if t.denominator != 1:
        raise ValueError(f"level {s} does not correspond to an integral level of the unshifted complex")
    return Fraction(v_of(int(t))) - a / 2


def basic_v(n: int, s: int) -> int:
    """V_s(S^n) for any integer n, with S^0 the trivial complex."""
    if n == 0:
        return max(0, -s)
    if n > 0:
        return min(max(0, -(s + 2 * j - n)) + j for j in range(n + 1))
    m = -n
    return max(max(0, -(s - 2 * j + m)) - j for j in range(m + 1))


def _positive_set(factors: Sequence[Staircase]) -> GradedGeneratorSet:
    acc = GradedGeneratorSet.unit()
    for f in factors:
        if f.sign != 1:
            raise ValueError("expected positive staircases")
        acc = acc * f.zero_level()
    return acc


def v_s_positive(factors: Sequence[Staircase], s: int) -> int:
    return min(max(a, b - s) for a, b in _positive_set(factors).pairs)


def v_s_with_positive_basics(C: Sequence[Staircase], n: int, s: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return min(v_s_positive(C, s + 2 * j - n) + j for j in range(n + 1))


def v_s_with_negative_basics(C, n: int, s: int) -> int:
    if isinstance(C, Staircase):
        C = [C]
    if len(C) != 1:
        raise MultiStaircaseUnsupported("the negative-basic formula needs exactly one positive staircase")
    if n <= 0:
        raise ValueError("n must be positive")
    return max(v_s_positive(C, s - 2 * j + n) - j for j in range(n + 1))


def v_s_mixed_bound(N0: GradedGeneratorSet, P0: GradedGeneratorSet, s: int) -> int:
    """Lower bound for V_s of (negative multi-staircase) ⊗ (positive multi-staircase).

    Exact when the positive side is a single staircase.
    """
    return max(
        min(max(ax + ay, bx + by - s) for ay, by in P0.pairs)
        for ax, bx in N0.pairs
    )
