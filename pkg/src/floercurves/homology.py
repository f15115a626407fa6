"""Homology of Alexander-level subcomplexes over F2[U] and the invariants read from it.

Every complex here is homogeneous, so the U-power of an entry is implied by
the gradings of its endpoints.  Matrices are therefore stored as F2 bit
patterns and all linear algebra runs on Python ints used as bitsets.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .complexes import BigradedComplex, MonomialSum, _enforce_cap
from .errors import HalfIntegerLevel, InvalidComplex, NoTower

__all__ = [
    "GradedUComplex",
    "Reduction",
    "a_s_subcomplex",
    "restrict_action",
    "reduce_complex",
    "d_invariant",
    "d_invariant_localized",
    "v_s_oracle",
    "v_top_bot_oracle",
    "exactness_check",
]


@dataclass(frozen=True)
class GradedUComplex:
    """Free complex over F2[U]; ``entries`` holds (source, target) pairs, U-powers implied."""

    gradings: tuple[int, ...]
    entries: frozenset[tuple[int, int]] = frozenset()

    def degree(self, src: int, tgt: int) -> int:
        return (self.gradings[tgt] - self.gradings[src] + 2) // 4

    def validate(self) -> None:
        out: dict[int, set[int]] = {}
        for s, t in self.entries:
            diff = self.gradings[t] - self.gradings[s] + 2
            if diff % 4 or diff < 0:
                raise InvalidComplex(f"entry {s}->{t} is not a nonnegative power of U")
            out.setdefault(s, set()).add(t)
        for s, targets in out.items():
            acc: set[int] = set()
            for t in targets:
                acc ^= out.get(t, set())
            if acc:
                raise InvalidComplex("differential does not square to zero")

    def __len__(self) -> int:
        return len(self.gradings)


def _levels(C: BigradedComplex) -> list[int]:
    out = []
    for w, z in C.gradings:
        if (w - z) % 4:
            raise HalfIntegerLevel(f"generator at doubled grading {(w, z)} has a half-integer Alexander level")
        out.append((w - z) // 4)
    return out


def _restrict(M: Mapping[tuple[int, int], MonomialSum], offsets: Sequence[int]) -> frozenset:
    bits: set[tuple[int, int]] = set()
    for (src, tgt), mono in M.items():
        for a, _b in mono:
            if a + offsets[src] - offsets[tgt] < 0:
                raise InvalidComplex(f"entry {src}->{tgt} would need a negative power of U")
            bits ^= {(src, tgt)}
    return frozenset(bits)


def a_s_subcomplex(C: BigradedComplex, s: int) -> GradedUComplex:
    """The level-s part of C as a complex over F2[U] with U = 𝒰𝒱."""
    offsets = [max(0, lvl - s) for lvl in _levels(C)]
    gradings = tuple(w - 4 * p for (w, _z), p in zip(C.gradings, offsets))
    return GradedUComplex(gradings, _restrict(C.differential, offsets))


def restrict_action(C: BigradedComplex, A: Mapping[tuple[int, int], MonomialSum], s: int) -> frozenset:
    offsets = [max(0, lvl - s) for lvl in _levels(C)]
    return _restrict(A, offsets)


@dataclass
class Reduction:
    """Outcome of the graded reduction of a GradedUComplex.

    ``free`` lists surviving generators (index, doubled grading).  For each of
    them ``chain`` is a cycle representative and ``coord`` the functional
    reading off its coefficient, both as bitsets over original generators.
    ``torsion`` collects (doubled grading, U-order) of each torsion summand.
    """

    free: list[tuple[int, int]]
    torsion: list[tuple[int, int]]
    chain: dict[int, int] = field(default_factory=dict)
    coord: dict[int, int] = field(default_factory=dict)
    pivots: int = 0

    @property
    def free_rank(self) -> int:
        return len(self.free)


def reduce_complex(A: GradedUComplex, track_basis: bool = False) -> Reduction:
    """Graded Smith normal form of a homogeneous differential.

    Pivots are taken in order of increasing U-degree (ties broken by source
    then target index), so every elimination only creates entries of degree
    at least the current pivot's and the result is a direct sum of free
    generators, acyclic pairs and torsion pairs U^c.
    """
    n = len(A)
    g = A.gradings
    cols: dict[int, set[int]] = {i: set() for i in range(n)}
    rows: dict[int, set[int]] = {i: set() for i in range(n)}
    heap: list[tuple[int, int, int]] = []
    for s, t in A.entries:
        cols[s].add(t)
        rows[t].add(s)
        heap.append(((g[t] - g[s] + 2) // 4, s, t))
    heapq.heapify(heap)
    chain = {i: 1 << i for i in range(n)} if track_basis else {}
    coord = dict(chain) if track_basis else {}
    alive = set(range(n))
    torsion: list[tuple[int, int]] = []
    pivots = 0

    while heap:
        c, x, y = heapq.heappop(heap)
        if x not in alive or y not in cols[x]:
            continue
        pivots += 1
        col_x = cols[x]
        for a in sorted(rows[y] - {x}):
            col_a = cols[a]
            for b in col_x:
                if b in col_a:
                    col_a.remove(b)
                    rows[b].discard(a)
                else:
                    col_a.add(b)
                    rows[b].add(a)
                    heapq.heappush(heap, ((g[b] - g[a] + 2) // 4, a, b))
            if track_basis:
                chain[a] ^= chain[x]
        if track_basis:
            for b in col_x:
                if b != y:
                    coord[b] ^= coord[y]
        # the basis change a -> a + U^k x also rewrites row x, which ∂² = 0
        # forces to vanish; its stale entries are simply dropped with x
        for v in (x, y):
            for b in cols[v]:
                rows[b].discard(v)
            cols[v] = set()
            for a in rows[v]:
                cols[a].discard(v)
            rows[v] = set()
            alive.discard(v)
        if c > 0:
            torsion.append((g[y], c))

    free = sorted(((i, g[i]) for i in alive), key=lambda p: (-p[1], p[0]))
    if track_basis:
        chain = {i: chain[i] for i in alive}
        coord = {i: coord[i] for i in alive}
    return Reduction(free, sorted(torsion), chain, coord, pivots)


def d_invariant(A: GradedUComplex) -> int:
    """Maximal doubled grading of a non-torsion homology class."""
    red = reduce_complex(A)
    if not red.free:
        raise NoTower("homology is entirely torsion")
    return red.free[0][1]


def _gf2_rank(mat: np.ndarray) -> int:
    m = mat.copy() % 2
    rank = 0
    rows, cols = m.shape
    for c in range(cols):
        hits = np.nonzero(m[rank:, c])[0]
        if hits.size == 0:
            continue
        p = rank + hits[0]
        m[[rank, p]] = m[[p, rank]]
        mask = m[:, c].astype(bool)
        mask[rank] = False
        m[mask] ^= m[rank]
        rank += 1
        if rank == rows:
            break
    return rank


def d_invariant_localized(A: GradedUComplex) -> int:
    """Same quantity as d_invariant, found by setting U = 1 instead of reducing over F2[U].

    A cycle z in grading g is non-torsion exactly when U^N z is not a boundary
    for large N; far enough down every generator of matching parity is
    available, so this is the homology of the U = 1 complex restricted to the
    span of generators of grading at least g.
    """
    n = len(A)
    D = np.zeros((n, n), dtype=np.uint8)
    for s, t in A.entries:
        D[t, s] ^= 1
    boundary_rank = _gf2_rank(D)
    best = None
    for parity in sorted({w % 4 for w in A.gradings}):
        idx = [i for i in range(n) if A.gradings[i] % 4 == parity]
        for threshold in sorted({A.gradings[i] for i in idx}, reverse=True):
            J = [i for i in idx if A.gradings[i] >= threshold]
            sub = D[:, J]
            # kernel of the restricted map, as vectors in the full space
            kernel = _gf2_nullspace(sub)
            if not kernel:
                continue
            vecs = np.zeros((len(kernel), n), dtype=np.uint8)
            for r, k in enumerate(kernel):
                vecs[r, [J[j] for j in np.nonzero(k)[0]]] = 1
            stacked = np.vstack([D.T, vecs])
            if _gf2_rank(stacked) > boundary_rank:
                best = threshold if best is None else max(best, threshold)
                break
    if best is None:
        raise NoTower("homology is entirely torsion")
    return best


def _gf2_nullspace(mat: np.ndarray) -> list[np.ndarray]:
    m = mat.copy() % 2
    rows, cols = m.shape
    pivot_cols = []
    r = 0
    for c in range(cols):
        hits = np.nonzero(m[r:, c])[0] if r < rows else np.array([], dtype=int)
        if hits.size == 0:
            continue
        p = r + hits[0]
        m[[r, p]] = m[[p, r]]
        mask = m[:, c].astype(bool)
        mask[r] = False
        m[mask] ^= m[r]
        pivot_cols.append(c)
        r += 1
    free_cols = [c for c in range(cols) if c not in pivot_cols]
    basis = []
    for f in free_cols:
        v = np.zeros(cols, dtype=np.uint8)
        v[f] = 1
        for i, pc in enumerate(pivot_cols):
            if m[i, f]:
                v[pc] = 1
        basis.append(v)
    return basis


def _resolve_level(C: BigradedComplex, s) -> tuple[BigradedComplex, int, Fraction]:
    """Return (complex, integral level, additive correction) for querying level s of C."""
    s = Fraction(s)
    half = any((w - z) % 4 for w, z in C.gradings)
    if half and any((w - z) % 4 == 0 for w, z in C.gradings):
        raise HalfIntegerLevel("generators mix integral and half-integral Alexander levels")
    if not half:
        if s.denominator != 1:
            raise HalfIntegerLevel(f"level {s} is not integral for this complex")
        return C, int(s), Fraction(0)
    if (2 * s).denominator != 1 or s.denominator == 1:
        raise HalfIntegerLevel(f"level {s} must be a half-integer for this complex")
    # shifting by (1, 0) moves every level up by 1/2 and lowers V by 1/2
    shifted = BigradedComplex(tuple((w + 2, z) for w, z in C.gradings), C.differential)
    return shifted, int(s + Fraction(1, 2)), Fraction(1, 2)


def v_s_oracle(C: BigradedComplex, s) -> Fraction:
    _enforce_cap(len(C))
    C2, t, corr = _resolve_level(C, s)
    return Fraction(-d_invariant(a_s_subcomplex(C2, t)), 4) + corr


def _bit_rank_insert(basis: dict[int, int], v: int) -> bool:
    """Insert v into a GF(2) basis keyed by leading bit; False if v was dependent."""
    while v:
        top = v.bit_length() - 1
        if top not in basis:
            basis[top] = v
            return True
        v ^= basis[top]
    return False


def _in_span(basis: dict[int, int], v: int) -> bool:
    while v:
        top = v.bit_length() - 1
        if top not in basis:
            return False
        v ^= basis[top]
    return True


def top_bottom_d(A: GradedUComplex, actions: Sequence[frozenset]) -> tuple[int, int]:
    """Doubled (d_top, d_bot) of a level subcomplex with induced actions on H/Tors."""
    red = reduce_complex(A, track_basis=True)
    if not red.free:
        raise NoTower("homology is entirely torsion")
    pos = {idx: k for k, (idx, _w) in enumerate(red.free)}
    n_free = len(red.free)
    adjacency = []
    for M in actions:
        adj: dict[int, int] = {}
        for s, t in M:
            adj[s] = adj.get(s, 0) ^ (1 << t)
        adjacency.append(adj)

    def induced(adj: dict[int, int], idx: int) -> int:
        z = red.chain[idx]
        image = 0
        while z:
            low = z & -z
            image ^= adj.get(low.bit_length() - 1, 0)
            z ^= low
        out = 0
        for jdx, k in pos.items():
            if bin(red.coord[jdx] & image).count("1") & 1:
                out |= 1 << k
        return out

    images = {idx: [induced(adj, idx) for adj in adjacency] for idx, _w in red.free}

    # bottom: common kernel, filled from the highest grading down
    d_bot = None
    for parity in sorted({w % 4 for _i, w in red.free}):
        basis: dict[int, int] = {}
        for idx, w in red.free:
            if w % 4 != parity:
                continue
            stacked = 0
            for r, img in enumerate(images[idx]):
                stacked |= img << (r * n_free)
            # a dependent image vector means a kernel element in this grading
            if not _bit_rank_insert(basis, stacked):
                d_bot = w if d_bot is None else max(d_bot, w)
                break
    if d_bot is None:
        raise NoTower("the common kernel of the actions carries no tower")

    # top: generators whose basis vector escapes the span of all images
    span: dict[int, int] = {}
    for idx in images:
        for img in images[idx]:
            _bit_rank_insert(span, img)
    d_top = None
    for idx, w in red.free:
        if not _in_span(span, 1 << pos[idx]):
            d_top = w
            break
    if d_top is None:
        raise NoTower("the cokernel of the actions carries no tower")
    return d_top, d_bot


def v_top_bot_oracle(C: BigradedComplex, actions: Iterable[Mapping], s) -> tuple[Fraction, Fraction]:
    """(V^⊤_s, V^⊥_s) from the cokernel and common kernel of the actions on H_*(𝒜_s)/Tors."""
    _enforce_cap(len(C))
    actions = list(actions)
    for M in actions:
        C.check_action(M)
    C2, t, corr = _resolve_level(C, s)
    A = a_s_subcomplex(C2, t)
    restricted = [restrict_action(C2, M, t) for M in actions]
    d_top, d_bot = top_bottom_d(A, restricted)
    return Fraction(-d_top, 4) + corr, Fraction(-d_bot, 4) + corr


def exactness_check(C: BigradedComplex, levels: Sequence[int], margin: int | None = None) -> bool:
    """True when homology vanishes at every positive filtration level.

    The differential must lower the filtration level by exactly one.  Each
    bigraded piece is a finite F2 space; pieces are checked on a box of
    gradings reaching ``margin`` (doubled) below the lowest generator, by
    default the total grading spread plus a safety band.
    """
    levels = list(levels)
    for (s, t) in C.differential:
        if levels[t] != levels[s] - 1:
            raise InvalidComplex("differential must lower the filtration level by one")
    # subtracting the level from both gradings makes the differential degree-preserving
    shifted = [(w - 2 * lv, z - 2 * lv) for (w, z), lv in zip(C.gradings, levels)]
    ws = [w for w, _ in shifted]
    zs = [z for _, z in shifted]
    spread = (max(ws) - min(ws)) + (max(zs) - min(zs))
    if margin is None:
        margin = 2 * spread + 8
    out_adj: dict[int, list[int]] = {}
    for (s, t), mono in C.differential.items():
        if len(mono) % 2:
            out_adj.setdefault(s, []).append(t)
    top = max(levels)
    for a in range(min(ws) - margin, max(ws) + 1):
        for b in range(min(zs) - margin, max(zs) + 1):
            piece: dict[int, list[int]] = {}
            for i, (w, z) in enumerate(shifted):
                if w >= a and z >= b and (w - a) % 4 == 0 and (z - b) % 4 == 0:
                    piece.setdefault(levels[i], []).append(i)
            for lvl in range(1, top + 1):
                here = piece.get(lvl, [])
                if not here:
                    continue
                below = {j: k for k, j in enumerate(piece.get(lvl - 1, []))}
                cycles = len(here) - _image_rank(here, out_adj, below)
                above = piece.get(lvl + 1, [])
                local = {j: k for k, j in enumerate(here)}
                boundaries = _image_rank(above, out_adj, local)
                if cycles != boundaries:
                    return False
    return True


def _image_rank(sources: list[int], adj: Mapping[int, list[int]], targets: Mapping[int, int]) -> int:
    basis: dict[int, int] = {}
    rank = 0
    for s in sources:
        v = 0
        for t in adj.get(s, ()):
            if t in targets:
                v ^= 1 << targets[t]
        rank += _bit_rank_insert(basis, v)
    return rank
