"""Split-tower building blocks and the V^⊤/V^⊥ calculus for composite knots.

A split-tower model records two shifted basic staircases: the one carrying
the top tower (cokernel of the H_1-action) and the one carrying the bottom
tower (common kernel).  When a chain-level model is attached, the oracle in
:mod:`floercurves.homology` can recompute both invariants from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .complexes import (
    BigradedComplex,
    Matrix,
    MonomialSum,
    dualize_complex,
    staircase_complex,
    tensor,
    tensor_actions,
    transpose,
    trivial_complex,
)
from .errors import NotSplitTowers, UnsupportedMixedCase
from .semigroups import NumericalSemigroup, convolve_all, counting_function
from .staircases import basic_v, shifted_v, staircase_from_semigroup

__all__ = [
    "SplitTowerModel",
    "CompositeKnotSpec",
    "unknot_model",
    "knotified_t2_2n",
    "knotified_mirror_t2_2n",
    "borromean_model",
    "v_split_with_borromean",
    "with_borromean",
    "v_top_bot_composite",
    "composite_full_model",
]


@dataclass(frozen=True)
class SplitTowerModel:
    """Top/bottom towers as S^n{a,b}; shifts are doubled, exponents may be negative or zero."""

    top_exponent: int
    top_shift: tuple[int, int]
    bot_exponent: int
    bot_shift: tuple[int, int]
    complex: BigradedComplex | None = None
    actions: tuple[Matrix, ...] = ()
    split: bool = True
    name: str = ""

    def v_top(self, s: int) -> Fraction:
        self._require_split()
        n, (a2, b2) = self.top_exponent, self.top_shift
        return shifted_v(lambda t: basic_v(n, t), s, Fraction(a2, 2), Fraction(b2, 2))

    def v_bot(self, s: int) -> Fraction:
        self._require_split()
        n, (a2, b2) = self.bot_exponent, self.bot_shift
        return shifted_v(lambda t: basic_v(n, t), s, Fraction(a2, 2), Fraction(b2, 2))

    def _require_split(self) -> None:
        if not self.split:
            raise NotSplitTowers(f"{self.name or 'model'} does not have split towers")


def unknot_model() -> SplitTowerModel:
    return SplitTowerModel(0, (0, 0), 0, (0, 0), trivial_complex(), (), True, "unknot")


def _mono(a: int, b: int) -> MonomialSum:
    return MonomialSum({(a, b)})


def _t2_2n_complex(n: int) -> tuple[BigradedComplex, Matrix, dict[str, int]]:
    # y_0..y_{2n} take indices 0..2n, x_1..x_{2n-1} follow
    labels: dict[str, int] = {f"y{i}": i for i in range(2 * n + 1)}
    labels.update({f"x{i}": 2 * n + i for i in range(1, 2 * n)})
    gradings = [None] * len(labels)
    for name, idx in labels.items():
        i = int(name[1:])
        gradings[idx] = (1 - 4 * n + 2 * i, 1 - 2 * i)
    diff: Matrix = {}
    for i in range(1, 2 * n):
        x = labels[f"x{i}"]
        diff[(x, labels[f"y{i - 1}"])] = _mono(0, 1)
        diff[(x, labels[f"y{i + 1}"])] = _mono(1, 0)
    action: Matrix = {}
    for i in range(n):
        action[(labels[f"y{2 * i}"], labels[f"y{2 * i + 1}"])] = _mono(1, 0)
    for i in range(n - 1):
        action[(labels[f"x{2 * i + 1}"], labels[f"x{2 * i + 2}"])] = _mono(1, 0)
    action[(labels[f"y{2 * n}"], labels[f"y{2 * n - 1}"])] = _mono(0, 1)
    return BigradedComplex(tuple(gradings), diff), action, labels


def knotified_t2_2n(n: int) -> SplitTowerModel:
    """Knotification of the positive T(2,2n) torus link: S^n{½,½} on top, S^{n-1}{-½,-½} below."""
    if n < 1:
        raise ValueError("n must be at least 1")
    C, action, _ = _t2_2n_complex(n)
    return SplitTowerModel(n, (1, 1), n - 1, (-1, -1), C, (action,), True, f"knotified T(2,{2 * n})")


def t2_2n_labels(n: int) -> dict[str, int]:
    """Generator names (x1.., y0..) of the full T(2,2n) model mapped to indices."""
    return _t2_2n_complex(n)[2]


def knotified_mirror_t2_2n(n: int) -> SplitTowerModel:
    if n < 1:
        raise ValueError("n must be at least 1")
    C, action, _ = _t2_2n_complex(n)
    return SplitTowerModel(-(n - 1), (1, 1), -n, (-1, -1), dualize_complex(C), (transpose(action),), True,
                           f"knotified mirror T(2,{2 * n})")


BORROMEAN_LABELS = ("1", "x", "y", "xy")


def borromean_model() -> SplitTowerModel:
    """Four generators, zero differential, two actions; towers do not split."""
    one, x, y, xy = range(4)
    gradings = ((2, -2), (0, 0), (0, 0), (-2, 2))
    act_y: Matrix = {(one, x): _mono(0, 1), (y, one): _mono(1, 0), (y, xy): _mono(0, 1), (xy, x): _mono(1, 0)}
    act_x: Matrix = {(one, y): _mono(0, 1), (x, one): _mono(1, 0), (x, xy): _mono(0, 1), (xy, y): _mono(1, 0)}
    return SplitTowerModel(0, (0, 0), 0, (0, 0), BigradedComplex(gradings), (act_x, act_y), False, "Borromean")


def v_split_with_borromean(model: SplitTowerModel, n: int, s: int) -> tuple[Fraction, Fraction]:
    """(V^⊤_s, V^⊥_s) of the model connected with n Borromean knots."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    model._require_split()
    top = min(model.v_top(s + 2 * j - n) + j for j in range(n + 1))
    bot = max(model.v_bot(s + 2 * j - n) + j for j in range(n + 1))
    return top - Fraction(n, 2), bot - Fraction(n, 2)


def with_borromean(C: BigradedComplex, actions: Sequence[Mapping], n: int) -> tuple[BigradedComplex, list[Matrix]]:
    """Tensor a chain-level model with n copies of the Borromean model, actions included."""
    B = borromean_model()
    acts = [dict(A) for A in actions]
    for _ in range(n):
        acts = tensor_actions(C, acts, B.complex, B.actions)
        C = tensor(C, B.complex)
    return C, acts


@dataclass(frozen=True)
class CompositeKnotSpec:
    """Cusps plus positive/negative T(2,2n) knotifications plus g Borromean knots."""

    cusps: tuple[NumericalSemigroup, ...] = ()
    positive: Mapping[int, int] = field(default_factory=dict)
    negative: Mapping[int, int] = field(default_factory=dict)
    genus: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "cusps", tuple(self.cusps))
        for label, links in (("positive", self.positive), ("negative", self.negative)):
            clean = {int(k): int(v) for k, v in links.items() if int(v)}
            if any(k < 1 or v < 0 for k, v in clean.items()):
                raise ValueError(f"{label} link counts need n>=1 and nonnegative multiplicities")
            object.__setattr__(self, label, clean)
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")

    @property
    def kappa_pos(self) -> int:
        return sum(n * m for n, m in self.positive.items())

    @property
    def kappa_neg(self) -> int:
        return sum(n * m for n, m in self.negative.items())

    @property
    def eta_pos(self) -> int:
        return sum(self.positive.values())

    @property
    def eta_neg(self) -> int:
        return sum(self.negative.values())

    @property
    def delta1(self) -> int:
        return self.kappa_pos - (self.kappa_neg - self.eta_neg)

    @property
    def delta2(self) -> int:
        return (self.kappa_pos - self.eta_pos) - self.kappa_neg

    def counting_function(self):
        return convolve_all(counting_function(S) for S in self.cusps)


def v_top_bot_composite(spec: CompositeKnotSpec, s: int) -> tuple[Fraction, Fraction]:
    R = spec.counting_function()
    g3 = R.tail_offset
    g = spec.genus
    quarter = Fraction(spec.eta_pos + spec.eta_neg, 4)
    half_g = Fraction(g, 2)
    d1, d2 = spec.delta1, spec.delta2

    def V(t: int) -> int:
        return R(g3 + t) - t

    if d1 >= 0:
        top = -half_g - quarter + min(V(s + 2 * j - d1 - g) + j for j in range(d1 + g + 1))
    else:
        _single_cusp(spec, "top")
        top = half_g - quarter + min(
            max(V(s - 2 * j - 2 * i + g - d1) - i - j for j in range(-d1 + 1)) for i in range(g + 1)
        )
    if d2 >= 0:
        bot = quarter - half_g + max(
            min(V(s + 2 * j + 2 * i - g - d2) + i + j for j in range(d2 + 1)) for i in range(g + 1)
        )
    else:
        _single_cusp(spec, "bottom")
        bot = half_g + quarter + max(V(s - 2 * j + g - d2) - j for j in range(g - d2 + 1))
    return top, bot


def _single_cusp(spec: CompositeKnotSpec, which: str) -> None:
    if len(spec.cusps) > 1:
        raise UnsupportedMixedCase(
            f"the {which} tower meets a negative surplus with {len(spec.cusps)} cusps; "
            "no closed formula applies, use the chain-level oracle on a small model instead"
        )


def composite_full_model(spec: CompositeKnotSpec) -> tuple[BigradedComplex, list[Matrix]]:
    """Chain-level model of the composite knot: tensor of every building block with its actions."""
    C = trivial_complex()
    acts: list[Matrix] = []
    for S in spec.cusps:
        D = staircase_complex(staircase_from_semigroup(S))
        acts = tensor_actions(C, acts, D, [])
        C = tensor(C, D)
    for builder, links in ((knotified_t2_2n, spec.positive), (knotified_mirror_t2_2n, spec.negative)):
        for n, count in sorted(links.items()):
            for _ in range(count):
                block = builder(n)
                acts = tensor_actions(C, acts, block.complex, block.actions)
                C = tensor(C, block.complex)
    return with_borromean(C, acts, spec.genus)
