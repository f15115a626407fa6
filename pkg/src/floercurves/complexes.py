"""Free bigraded complexes over F2[U, V] and their constructions.

Matrices are sparse maps ``{(source, target): MonomialSum}``.  Every entry must
lower both doubled gradings by 2 once its monomial is applied, which is the
bidegree (-1, -1) condition for differentials and H_1-actions alike.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .errors import ActionNotChainMap, CapExceeded, InvalidComplex
from .staircases import Staircase

__all__ = [
    "MonomialSum",
    "BigradedComplex",
    "generator_cap",
    "trivial_complex",
    "staircase_complex",
    "tensor",
    "tensor_all",
    "tensor_actions",
    "compose",
    "transpose",
    "dualize_complex",
    "shift_complex",
    "complex_to_json",
    "complex_from_json",
    "save_complex",
    "load_complex",
]

CAP_ENV = "FLOERCURVES_GENERATOR_CAP"
DEFAULT_CAP = 5000

Monomial = tuple[int, int]
Matrix = dict[tuple[int, int], "MonomialSum"]


def generator_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    return int(raw) if raw else DEFAULT_CAP


def _enforce_cap(n: int) -> None:
    cap = generator_cap()
    if n > cap:
        raise CapExceeded(f"{n} generators exceed the cap of {cap} (set {CAP_ENV} to raise it)")


class MonomialSum(frozenset):
    """A sum of monomials U^a V^b with coefficients in F2."""

    def __add__(self, other: "MonomialSum") -> "MonomialSum":
        return MonomialSum(self ^ other)

    def __mul__(self, other: "MonomialSum") -> "MonomialSum":
        acc: set[Monomial] = set()
        for a1, b1 in self:
            for a2, b2 in other:
                acc ^= {(a1 + a2, b1 + b2)}
        return MonomialSum(acc)

    def __repr__(self) -> str:
        if not self:
            return "0"
        return " + ".join(f"U^{a}V^{b}" for a, b in sorted(self))


def _add_entry(M: Matrix, key: tuple[int, int], value: MonomialSum) -> None:
    new = M.get(key, MonomialSum()) + value
    if new:
        M[key] = new
    else:
        M.pop(key, None)


def compose(A: Mapping[tuple[int, int], MonomialSum], B: Mapping[tuple[int, int], MonomialSum]) -> Matrix:
    """Matrix of A∘B (apply B first)."""
    by_source: dict[int, list[tuple[int, MonomialSum]]] = {}
    for (src, tgt), m in A.items():
        by_source.setdefault(src, []).append((tgt, m))
    out: Matrix = {}
    for (src, mid), m1 in B.items():
        for tgt, m2 in by_source.get(mid, ()):
            _add_entry(out, (src, tgt), m1 * m2)
    return out


@dataclass(frozen=True)
class BigradedComplex:
    """Generators with doubled bigradings and a sparse differential."""

    gradings: tuple[tuple[int, int], ...]
    differential: Mapping[tuple[int, int], MonomialSum] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "gradings", tuple((int(w), int(z)) for w, z in self.gradings))
        clean: Matrix = {}
        for key, m in self.differential.items():
            _add_entry(clean, key, MonomialSum(m))
        object.__setattr__(self, "differential", clean)

    def __len__(self) -> int:
        return len(self.gradings)

    def level2(self, i: int) -> int:
        """Twice the Alexander level (gr_w - gr_z)/2 of generator i."""
        w, z = self.gradings[i]
        return (w - z) // 2

    def check_matrix(self, M: Mapping[tuple[int, int], MonomialSum], what: str = "differential") -> None:
        n = len(self)
        for (src, tgt), mono in M.items():
            if not (0 <= src < n and 0 <= tgt < n):
                raise InvalidComplex(f"{what} entry {(src, tgt)} is out of range")
            ws, zs = self.gradings[src]
            wt, zt = self.gradings[tgt]
            for a, b in mono:
                if a < 0 or b < 0:
                    raise InvalidComplex(f"negative exponent in {what} entry {(src, tgt)}")
                if (wt - 4 * a, zt - 4 * b) != (ws - 2, zs - 2):
                    raise InvalidComplex(f"{what} entry {src}->{tgt} U^{a}V^{b} has the wrong bidegree")

    def validate(self) -> None:
        self.check_matrix(self.differential)
        if compose(self.differential, self.differential):
            raise InvalidComplex("differential does not square to zero")

    def check_action(self, A: Mapping[tuple[int, int], MonomialSum]) -> None:
        self.check_matrix(A, "action")
        comm = compose(self.differential, A)
        for key, m in compose(A, self.differential).items():
            _add_entry(comm, key, m)
        if comm:
            raise ActionNotChainMap(f"action fails to commute with the differential at {sorted(comm)[:3]}")

    def arrows(self) -> Iterator[tuple[int, int, MonomialSum]]:
        for (src, tgt), m in sorted(self.differential.items()):
            yield src, tgt, m


def trivial_complex(w2: int = 0, z2: int = 0) -> BigradedComplex:
    return BigradedComplex(((w2, z2),))


def staircase_complex(C: Staircase) -> BigradedComplex:
    diff = {(s, t): MonomialSum({mono}) for s, t, mono in C.arrows()}
    return BigradedComplex(C.gradings, diff)


def _kron_action(A: Mapping, n_left: int, n_right: int, left: bool) -> Matrix:
    out: Matrix = {}
    if left:
        for (s, t), m in A.items():
            for j in range(n_right):
                out[(s * n_right + j, t * n_right + j)] = m
    else:
        for (s, t), m in A.items():
            for i in range(n_left):
                out[(i * n_right + s, i * n_right + t)] = m
    return out


def tensor(C: BigradedComplex, D: BigradedComplex) -> BigradedComplex:
    """C ⊗ D with generator (i, j) at index i·|D| + j."""
    _enforce_cap(len(C) * len(D))
    gradings = tuple((w1 + w2, z1 + z2) for w1, z1 in C.gradings for w2, z2 in D.gradings)
    diff = _kron_action(C.differential, len(C), len(D), left=True)
    for key, m in _kron_action(D.differential, len(C), len(D), left=False).items():
        _add_entry(diff, key, m)
    return BigradedComplex(gradings, diff)


def tensor_actions(C: BigradedComplex, actions_c: Iterable[Mapping], D: BigradedComplex,
                   actions_d: Iterable[Mapping]) -> list[Matrix]:
    """Actions on C ⊗ D induced by A ⊗ 1 and 1 ⊗ B."""
    n, m = len(C), len(D)
    return ([_kron_action(A, n, m, left=True) for A in actions_c]
            + [_kron_action(B, n, m, left=False) for B in actions_d])


def tensor_all(complexes: Iterable[BigradedComplex]) -> BigradedComplex:
    acc = trivial_complex()
    for c in complexes:
        acc = tensor(acc, c)
    return acc


def transpose(M: Mapping[tuple[int, int], MonomialSum]) -> Matrix:
    return {(t, s): m for (s, t), m in M.items()}


def dualize_complex(C: BigradedComplex) -> BigradedComplex:
    return BigradedComplex(tuple((-w, -z) for w, z in C.gradings), transpose(C.differential))


def shift_complex(C: BigradedComplex, a2: int, b2: int) -> BigradedComplex:
    """Shift every generator by the doubled amounts (a2, b2)."""
    return BigradedComplex(tuple((w + a2, z + b2) for w, z in C.gradings), C.differential)


def _matrix_to_json(M: Mapping[tuple[int, int], MonomialSum]) -> list[dict]:
    return [
        {"from": s, "to": t, "monomials": [list(mono) for mono in sorted(m)]}
        for (s, t), m in sorted(M.items())
    ]


def _matrix_from_json(rows: Iterable[Mapping]) -> Matrix:
    out: Matrix = {}
    for row in rows:
        key = (int(row["from"]), int(row["to"]))
        for a, b in row["monomials"]:
            _add_entry(out, key, MonomialSum({(int(a), int(b))}))
    return out


def complex_to_json(C: BigradedComplex, actions: Iterable[Mapping] | None = None) -> dict:
    doc: dict = {
        "generators": [list(g) for g in C.gradings],
        "differential": _matrix_to_json(C.differential),
    }
    if actions is not None:
        doc["actions"] = [_matrix_to_json(A) for A in actions]
    return doc


def complex_from_json(doc: Mapping) -> tuple[BigradedComplex, list[Matrix]]:
    try:
        gens = doc["generators"]
        _enforce_cap(len(gens))
        C = BigradedComplex(tuple((int(w), int(z)) for w, z in gens),
                            _matrix_from_json(doc.get("differential", [])))
        actions = [_matrix_from_json(A) for A in doc.get("actions", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidComplex(f"malformed complex description: {exc}") from exc
    C.validate()
    for A in actions:
        C.check_action(A)
    return C, actions


def save_complex(path, C: BigradedComplex, actions: Iterable[Mapping] | None = None) -> None:
    with open(path, "w") as fh:
        json.dump(complex_to_json(C, actions), fh, indent=1)
        fh.write("\n")


def load_complex(path) -> tuple[BigradedComplex, list[Matrix]]:
    with open(path) as fh:
        return complex_from_json(json.load(fh))
