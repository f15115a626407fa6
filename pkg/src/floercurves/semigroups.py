"""Numerical semigroups of algebraic knots and their counting functions.

The counting function of a semigroup S is R(k) = #(S ∩ [0, k)).  It vanishes
for k <= 0, grows by 0 or 1 at each step and eventually becomes k - genus.
Counting functions of several singular points combine by infimal convolution,
which is the counting function of the connected sum of their links.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

from .errors import InvalidSemigroup

__all__ = [
    "NumericalSemigroup",
    "CountingFunction",
    "torus_knot_semigroup",
    "counting_function",
    "r_closed_form_t2",
    "infimal_convolution",
    "convolve_all",
    "v_from_r",
]


def _sieve(generators: Sequence[int]) -> list[bool]:
    """Membership table that ends with min(generators) consecutive members."""
    smallest = min(generators)
    member = [True]
    run = 1 if smallest == 1 else 0
    k = 0
    while run < smallest:
        k += 1
        hit = any(k >= g and member[k - g] for g in generators)
        member.append(hit)
        run = run + 1 if hit else 0
    return member


def _minimal_generators(member: Sequence[bool]) -> tuple[int, ...]:
    # past the end of the table everything is a member
    elements = [k for k, m in enumerate(member) if m and k > 0]
    gens: list[int] = []
    reach = [False] * len(member)
    reach[0] = True
    for e in elements:
        if reach[e]:
            continue
        gens.append(e)
        for k in range(e, len(member)):
            if reach[k - e]:
                reach[k] = True
        if all(reach[k] == member[k] for k in range(len(member))):
            break
    return tuple(gens)


@dataclass(frozen=True)
class NumericalSemigroup:
    """A cofinite additive submonoid of the nonnegative integers."""

    generators: tuple[int, ...]
    gaps: tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        gens = tuple(sorted(set(int(g) for g in self.generators)))
        if not gens or gens[0] < 1:
            raise InvalidSemigroup(f"generators must be positive integers, got {self.generators}")
        if reduce(gcd, gens) != 1:
            raise InvalidSemigroup(f"generators {gens} are not coprime")
        member = _sieve(gens)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "gaps", tuple(k for k, m in enumerate(member) if not m))

    @classmethod
    def from_gaps(cls, gaps: Iterable[int]) -> "NumericalSemigroup":
        """Build the semigroup whose complement is exactly ``gaps``."""
        gap_set = set(int(g) for g in gaps)
        if any(g < 1 for g in gap_set):
            raise InvalidSemigroup("gaps must be positive integers")
        top = max(gap_set, default=0)
        member = [k not in gap_set for k in range(2 * top + 2)]
        for a in range(1, top + 1):
            if not member[a]:
                continue
            for b in range(a, top + 1 - a + 1):
                if member[b] and not member[a + b]:
                    raise InvalidSemigroup(f"{a}+{b}={a + b} is listed as a gap")
        sg = cls(_minimal_generators(member) or (1,))
        if set(sg.gaps) != gap_set:
            raise InvalidSemigroup(f"gap list {sorted(gap_set)} is not the complement of a semigroup")
        return sg

    @property
    def genus(self) -> int:
        return len(self.gaps)

    @property
    def frobenius(self) -> int:
        return self.gaps[-1] if self.gaps else -1

    def __contains__(self, k: object) -> bool:
        if not isinstance(k, int) or k < 0:
            return False
        return k not in set(self.gaps)

    def elements_below(self, bound: int) -> list[int]:
        gaps = set(self.gaps)
        return [k for k in range(max(bound, 0)) if k not in gaps]


@dataclass(frozen=True)
class CountingFunction:
    """Integer step function with R(k)=0 for k<=0 and R(k)=k-tail_offset for k>=tail_threshold."""

    table: tuple[int, ...]
    tail_offset: int

    def __post_init__(self) -> None:
        t = self.table
        if not t or t[0] != 0:
            raise ValueError("table must start with R(0)=0")
        if any(b - a not in (0, 1) for a, b in zip(t, t[1:])):
            raise ValueError("consecutive values must differ by 0 or 1")
        if t[-1] != len(t) - 1 - self.tail_offset:
            raise ValueError("last table entry must already lie on the affine tail")

    @property
    def tail_threshold(self) -> int:
        return len(self.table) - 1

    def __call__(self, k: int) -> int:
        if k <= 0:
            return 0
        if k >= len(self.table):
            return k - self.tail_offset
        return self.table[k]

    def values(self, lo: int, hi: int) -> list[int]:
        return [self(k) for k in range(lo, hi + 1)]

    @classmethod
    def unknot(cls) -> "CountingFunction":
        return cls((0,), 0)


def torus_knot_semigroup(p: int, q: int) -> NumericalSemigroup:
    """The semigroup ⟨p, q⟩ of the singularity x^p = y^q."""
    if p < 2 or q < 2:
        raise InvalidSemigroup(f"torus knot parameters must be at least 2, got ({p}, {q})")
    if gcd(p, q) != 1:
        raise InvalidSemigroup(f"torus knot parameters ({p}, {q}) are not coprime")
    return NumericalSemigroup((p, q))


def counting_function(S: NumericalSemigroup) -> CountingFunction:
    horizon = S.frobenius + 2
    gaps = set(S.gaps)
    table = [0]
    for k in range(horizon):
        table.append(table[-1] + (k not in gaps))
    return CountingFunction(tuple(table), S.genus)


def r_closed_form_t2(n: int, k: int) -> int:
    """Counting function of ⟨2, 2n+1⟩, written in closed form."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k <= 0:
        return 0
    if k < 2 * n + 1:
        return (k + 1) // 2
    return k - n


def infimal_convolution(R1: CountingFunction, R2: CountingFunction) -> CountingFunction:
    """(R1 ⋄ R2)(m) = min over i+j=m of R1(i)+R2(j)."""
    t1, t2 = R1.tail_threshold, R2.tail_threshold
    table = []
    for m in range(t1 + t2 + 1):
        lo, hi = max(0, m - t2), min(m, t1)
        table.append(min(R1(i) + R2(m - i) for i in range(lo, hi + 1)))
    return CountingFunction(tuple(table), R1.tail_offset + R2.tail_offset)


def convolve_all(functions: Iterable[CountingFunction]) -> CountingFunction:
    return reduce(infimal_convolution, functions, CountingFunction.unknot())


def v_from_r(R: CountingFunction, g: int | None = None, s: int = 0) -> int:
    """V_s of the L-space knot (or connected sum) with counting function R."""
    if g is None:
        g = R.tail_offset
    elif g != R.tail_offset:
        raise ValueError(f"genus {g} does not match the tail offset {R.tail_offset}")
    return R(g + s) - s
