"""Obstructions to singular plane curves of given degree and genus.

For each k = 1..d-2 a configuration must satisfy two inequalities between
the convolved counting function R of its cusps and K = (k+1)(k+2)/2.  They
come from bounding the top and bottom correction terms of the boundary of a
neighbourhood of the curve, which is d^2-surgery on a composite knot.  The
same rows can be recomputed along that route with :func:`cross_validate`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Iterable, Mapping, NamedTuple

from .errors import ConfigMismatch, GenusFormulaViolation, NonpositiveM
from .knotified import CompositeKnotSpec, v_top_bot_composite
from .semigroups import CountingFunction, NumericalSemigroup, convolve_all, counting_function, r_closed_form_t2

__all__ = [
    "CurveConfig",
    "InequalityRow",
    "ObstructionReport",
    "SpincLevel",
    "spinc_levels",
    "surgery_d_formula",
    "ambient_bounds",
    "check_positive",
    "check_negative",
    "check",
    "cross_validate",
    "a_threshold",
    "cusp_count_bound",
    "max_a2n_bound",
    "rm_bound_equivalence",
]


def _triangle(k: int) -> int:
    return (k + 1) * (k + 2) // 2


@dataclass(frozen=True)
class CurveConfig:
    """An irreducible degree-d curve of genus g with cusps and T(2,2n)-type double points."""

    degree: int
    genus: int
    cusps: tuple[NumericalSemigroup, ...] = ()
    positive: Mapping[int, int] = field(default_factory=dict)
    negative: Mapping[int, int] = field(default_factory=dict)
    allow_genus_slack: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "cusps", tuple(self.cusps))
        if self.degree < 3:
            raise ConfigMismatch("degree must be at least 3")
        if self.genus < 0:
            raise ConfigMismatch("genus must be nonnegative")
        for label in ("positive", "negative"):
            raw = getattr(self, label)
            clean = {int(n): int(m) for n, m in raw.items() if int(m)}
            if any(n < 1 or m < 0 for n, m in clean.items()):
                raise ConfigMismatch(f"{label} link counts need n>=1 and nonnegative multiplicities")
            object.__setattr__(self, label, clean)
        if not self.allow_genus_slack and self.genus != self.expected_genus:
            raise GenusFormulaViolation(
                f"genus {self.genus} differs from (d-1)(d-2)/2 - g3 - κ = {self.expected_genus}"
            )

    @property
    def spec(self) -> CompositeKnotSpec:
        return CompositeKnotSpec(self.cusps, self.positive, self.negative, self.genus)

    @property
    def kappa_pos(self) -> int:
        return self.spec.kappa_pos

    @property
    def kappa_neg(self) -> int:
        return self.spec.kappa_neg

    @property
    def eta_pos(self) -> int:
        return self.spec.eta_pos

    @property
    def eta_neg(self) -> int:
        return self.spec.eta_neg

    @property
    def rho(self) -> int:
        return 2 * self.genus + self.eta_pos + self.eta_neg

    @property
    def cusp_genus(self) -> int:
        return sum(S.genus for S in self.cusps)

    @property
    def expected_genus(self) -> int:
        d = self.degree
        return (d - 1) * (d - 2) // 2 - self.cusp_genus - self.kappa_pos - self.kappa_neg

    def counting_function(self) -> CountingFunction:
        return convolve_all(counting_function(S) for S in self.cusps)


@dataclass(frozen=True)
class InequalityRow:
    """One k: the upper inequality (lhs <= rhs) and the lower one (lhs >= rhs)."""

    k: int
    upper_lhs: int
    upper_rhs: int
    lower_lhs: int
    lower_rhs: int

    @property
    def upper_ok(self) -> bool:
        return self.upper_lhs <= self.upper_rhs

    @property
    def lower_ok(self) -> bool:
        return self.lower_lhs >= self.lower_rhs

    @property
    def ok(self) -> bool:
        return self.upper_ok and self.lower_ok


@dataclass(frozen=True)
class ObstructionReport:
    family: str
    rows: tuple[InequalityRow, ...]

    @property
    def obstructed(self) -> bool:
        return any(not r.ok for r in self.rows)

    @property
    def verdict(self) -> str:
        return "obstructed" if self.obstructed else "consistent"

    @property
    def witnesses(self) -> list[tuple[int, str]]:
        out = []
        for r in self.rows:
            if not r.upper_ok:
                out.append((r.k, "upper"))
            if not r.lower_ok:
                out.append((r.k, "lower"))
        return out


class SpincLevel(NamedTuple):
    k: int
    m: Fraction
    index: int


def spinc_levels(d: int) -> list[SpincLevel]:
    """Spin^c structures on d^2-surgery that extend over the curve complement, indexed by k = 1..d-2."""
    if d < 3:
        raise ValueError("degree must be at least 3")
    out = []
    for k in range(1, d - 1):
        m = k - Fraction(d - 3, 2)
        out.append(SpincLevel(k, m, int(m * d)))
    return out


def surgery_d_formula(q: int, m, V) -> Fraction:
    """Correction term of q-surgery in the spin^c structure labelled m, given V_m."""
    if q <= 0:
        raise ValueError("q must be positive")
    m = Fraction(m)
    return Fraction((q - 2 * m) ** 2 - q, 4 * q) - 2 * Fraction(V)


def ambient_bounds(config: CurveConfig) -> tuple[Fraction, Fraction]:
    half = Fraction(config.rho, 2)
    return -half, half


def check_positive(config: CurveConfig) -> ObstructionReport:
    if config.negative:
        raise ConfigMismatch("the positive-link inequalities do not apply to negative double points")
    R = config.counting_function()
    d, g = config.degree, config.genus
    kp, ep = config.kappa_pos, config.eta_pos
    rows = []
    for k in range(1, d - 1):
        K = _triangle(k)
        upper = max(
            min(R(k * d + 1 - ep - 2 * i - 2 * j) + i + j for i in range(kp - ep + 1)) for j in range(g + 1)
        )
        lower = min(R(k * d + 1 - 2 * j) + j for j in range(g + kp + 1))
        rows.append(InequalityRow(k, upper, K + g, lower, K))
    return ObstructionReport("positive", tuple(rows))


def check_negative(config: CurveConfig) -> ObstructionReport:
    if config.positive:
        raise ConfigMismatch("the negative-link inequalities need all double points negative")
    if len(config.cusps) != 1:
        raise ConfigMismatch(f"the negative-link inequalities need exactly one cusp, got {len(config.cusps)}")
    R = config.counting_function()
    d, g = config.degree, config.genus
    kn, en = config.kappa_neg, config.eta_neg
    rows = []
    for k in range(1, d - 1):
        K = _triangle(k)
        upper = max(R(k * d + 1 - 2 * j) + j for j in range(g + kn + 1))
        lower = min(
            max(R(k * d + 1 - 2 * i - 2 * j - en) + i + j for j in range(kn - en + 1)) for i in range(g + 1)
        )
        rows.append(InequalityRow(k, upper, K + g + kn, lower, K + kn - en))
    return ObstructionReport("negative", tuple(rows))


def check(config: CurveConfig) -> ObstructionReport:
    if config.positive and config.negative:
        raise ConfigMismatch("no inequality family covers positive and negative double points together")
    return check_negative(config) if config.negative else check_positive(config)


@dataclass(frozen=True)
class CrossCheckRow:
    k: int
    index: int
    v_top: Fraction
    v_bot: Fraction
    d_top: Fraction
    d_bot: Fraction
    top_ok: bool
    bot_ok: bool


def cross_validate(config: CurveConfig, ks: Iterable[int] | None = None) -> list[CrossCheckRow]:
    """Recompute the rows through V^⊤/V^⊥ of the composite knot, the surgery formula and the ambient bounds.

    ``top_ok`` must match the lower inequality of :func:`check` and ``bot_ok``
    the upper one.
    """
    if config.genus != config.expected_genus:
        raise GenusFormulaViolation("cross-validation relies on the genus formula holding exactly")
    lo, hi = ambient_bounds(config)
    q = config.degree ** 2
    wanted = None if ks is None else set(ks)
    out = []
    for lvl in spinc_levels(config.degree):
        if wanted is not None and lvl.k not in wanted:
            continue
        v_top, v_bot = v_top_bot_composite(config.spec, lvl.index)
        d_top = surgery_d_formula(q, lvl.index, v_top)
        d_bot = surgery_d_formula(q, lvl.index, v_bot)
        out.append(CrossCheckRow(lvl.k, lvl.index, v_top, v_bot, d_top, d_bot, d_top <= hi, d_bot >= lo))
    return out


def a_threshold(d: int) -> Fraction:
    """(d²-6d+5)/4 for odd d, (d²-6d+4)/4 for even d."""
    return Fraction(d * d - 6 * d + (5 if d % 2 else 4), 4)


def cusp_count_bound(d: int, a: int) -> int:
    """Largest number of ordinary cusps allowed on a degree-d curve with a further double points."""
    if d < 4 or a < 0:
        raise ValueError("need d >= 4 and a >= 0")
    return floor(Fraction((d - 1) * (d - 2), 2) - a_threshold(d) / 2 - Fraction(a, 2))


def max_a2n_bound(d: int, h: int) -> int:
    """Largest n such that a degree-d curve of genus h can carry an A_{2n} singularity."""
    if d < 4 or h < 0:
        raise ValueError("need d >= 4 and h >= 0")
    return floor(Fraction((d - 1) * (d - 2), 2) - a_threshold(d) / 2 - Fraction(h, 2))


def rm_bound_equivalence(d: int, eta: int, g: int) -> tuple[bool, bool]:
    """(direct sweep, closed criterion) for R_m(kd+1-η) <= K+g over k = 1..d-2."""
    m = (d - 1) * (d - 2) // 2 - eta - g
    if m <= 0:
        raise NonpositiveM(f"m = {m} must be positive")
    direct = all(r_closed_form_t2(m, k * d + 1 - eta) <= _triangle(k) + g for k in range(1, d - 1))
    closed = 2 * g + eta >= a_threshold(d)
    return direct, closed
