import json
from fractions import Fraction
from itertools import product
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from floercurves.complexes import (
    BigradedComplex,
    MonomialSum,
    compose,
    complex_from_json,
    complex_to_json,
    dualize_complex,
    load_complex,
    save_complex,
    shift_complex,
    staircase_complex,
    tensor,
    tensor_all,
    trivial_complex,
)
from floercurves.errors import ActionNotChainMap, CapExceeded, HalfIntegerLevel, InvalidComplex, NoTower
from floercurves.homology import (
    GradedUComplex,
    a_s_subcomplex,
    d_invariant,
    d_invariant_localized,
    exactness_check,
    reduce_complex,
    v_s_oracle,
    v_top_bot_oracle,
)
from floercurves.semigroups import counting_function, torus_knot_semigroup, v_from_r
from floercurves.staircases import basic_staircase, basic_v, staircase_from_semigroup


def M(a, b):
    return MonomialSum({(a, b)})


def trefoil():
    return staircase_complex(staircase_from_semigroup(torus_knot_semigroup(2, 3)))


def stair_levels(stairs):
    return [sum(t) for t in product(*[[i % 2 for i in range(s.rank)] for s in stairs])]


class TestMonomials:
    def test_addition_cancels(self):
        assert M(1, 0) + M(1, 0) == MonomialSum()
        assert repr(MonomialSum()) == "0"

    def test_product(self):
        assert (M(1, 0) + M(0, 1)) * (M(1, 0) + M(0, 1)) == M(2, 0) + M(0, 2)

    def test_compose_applies_right_first(self):
        A = {(1, 2): M(0, 1)}
        B = {(0, 1): M(1, 0)}
        assert compose(A, B) == {(0, 2): M(1, 1)}
        assert compose(B, A) == {}


class TestBigradedComplex:
    def test_staircase_validates(self):
        trefoil().validate()

    def test_wrong_bidegree(self):
        C = BigradedComplex(((0, 0), (0, 0)), {(1, 0): M(1, 0)})
        with pytest.raises(InvalidComplex):
            C.validate()

    def test_d_squared(self):
        C = BigradedComplex(((0, 0), (-2, -2), (-4, -4)), {(0, 1): M(0, 0), (1, 2): M(0, 0)})
        with pytest.raises(InvalidComplex, match="square"):
            C.validate()

    def test_out_of_range(self):
        with pytest.raises(InvalidComplex):
            BigradedComplex(((0, 0),), {(0, 3): M(0, 0)}).validate()

    def test_action_not_chain_map(self):
        C = trefoil()
        bad = {(0, 1): M(0, 0)}
        with pytest.raises(InvalidComplex):
            C.check_action(bad)
        # right bidegree but not commuting with the differential
        D = BigradedComplex(((0, 0), (-2, -2), (2, 2)), {(0, 1): M(0, 0)})
        with pytest.raises(ActionNotChainMap):
            D.check_action({(2, 0): M(0, 0)})

    def test_tensor_and_dual(self):
        C = trefoil()
        T = tensor(C, dualize_complex(C))
        T.validate()
        assert len(T) == 9
        assert len(tensor_all([])) == 1
        S = shift_complex(C, 2, -2)
        assert S.gradings[0] == (2, -6)

    def test_cap(self, monkeypatch):
        monkeypatch.setenv("FLOERCURVES_GENERATOR_CAP", "8")
        with pytest.raises(CapExceeded):
            tensor(trefoil(), trefoil())


class TestJson:
    def test_roundtrip(self, tmp_path):
        C = tensor(trefoil(), dualize_complex(trefoil()))
        act = {}
        path = tmp_path / "c.json"
        save_complex(path, C, [act])
        C2, acts = load_complex(path)
        assert C2 == C and acts == [act]
        assert complex_to_json(C2, acts) == json.loads(path.read_text())

    def test_rejects_malformed(self):
        with pytest.raises(InvalidComplex):
            complex_from_json({"differential": []})
        with pytest.raises(InvalidComplex):
            complex_from_json({"generators": [[0, 0], [0, 0]], "differential": [{"from": 1, "to": 0, "monomials": [[1, 0]]}]})

    def test_cap_on_load(self, monkeypatch):
        monkeypatch.setenv("FLOERCURVES_GENERATOR_CAP", "2")
        with pytest.raises(CapExceeded):
            complex_from_json(complex_to_json(trefoil()))


class TestLevelSubcomplex:
    def test_trefoil_level_zero(self):
        A = a_s_subcomplex(trefoil(), 0)
        assert A.gradings == (-4, -2, -4)
        assert A.entries == frozenset({(1, 0), (1, 2)})
        assert {A.degree(s, t) for s, t in A.entries} == {0}
        assert d_invariant(A) == -4

    def test_high_level_keeps_gradings(self):
        C = trefoil()
        A = a_s_subcomplex(C, 5)
        assert A.gradings == tuple(w for w, _ in C.gradings)

    def test_half_integer_level_rejected(self):
        C = BigradedComplex(((2, 0),))
        with pytest.raises(HalfIntegerLevel):
            a_s_subcomplex(C, 0)

    def test_trivial(self):
        assert d_invariant(a_s_subcomplex(trivial_complex(), 0)) == 0
        assert v_s_oracle(trivial_complex(), 0) == 0

    def test_no_tower(self):
        with pytest.raises(NoTower):
            d_invariant(GradedUComplex((-4, -2), frozenset({(1, 0)})))
        torsion_only = GradedUComplex((0, -2), frozenset({(1, 0)}))
        assert reduce_complex(torsion_only).torsion == [(0, 1)]
        with pytest.raises(NoTower):
            d_invariant_localized(torsion_only)


@st.composite
def random_u_complexes(draw):
    """Free generators plus (y -> U^c x) pairs, scrambled by homogeneous basis changes."""
    n_free = draw(st.integers(1, 3))
    n_pairs = draw(st.integers(0, 4))
    gradings, entries, free, torsion = [], set(), [], []
    for _ in range(n_free):
        g = 2 * draw(st.integers(-6, 2))
        free.append(g)
        gradings.append(g)
    for _ in range(n_pairs):
        gx = 2 * draw(st.integers(-6, 2))
        c = draw(st.integers(0, 3))
        gradings += [gx, gx + 2 - 4 * c]
        entries.add((len(gradings) - 1, len(gradings) - 2))
        if c:
            torsion.append(c)
    n = len(gradings)
    ops = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=12))
    rows = {i: {t for s, t in entries if s == i} for i in range(n)}
    for i, j in ops:
        gi, gj = gradings[i], gradings[j]
        if i == j or (gj - gi) % 4 or gj < gi:
            continue
        # new basis f_i = e_i + U^k e_j: row i += row j, then column j += column i
        rows[i] ^= rows[j]
        for r in rows.values():
            if i in r:
                r ^= {j}
    ent = frozenset((s, t) for s, ts in rows.items() for t in ts)
    return GradedUComplex(tuple(gradings), ent), sorted(free, reverse=True), sorted(torsion)


class TestReduction:
    @settings(max_examples=300)
    @given(random_u_complexes())
    def test_reduction_matches_structure(self, data):
        A, free, torsion = data
        A.validate()
        red = reduce_complex(A)
        assert sorted((w for _i, w in red.free), reverse=True) == free
        assert sorted(c for _g, c in red.torsion) == torsion
        assert d_invariant(A) == free[0] == d_invariant_localized(A)

    def test_tracked_basis_is_cycle(self):
        C = tensor_all([trefoil(), trefoil(), dualize_complex(trefoil())])
        A = a_s_subcomplex(C, 0)
        red = reduce_complex(A, track_basis=True)
        out = {}
        for s, t in A.entries:
            out.setdefault(s, 0)
            out[s] ^= 1 << t
        for idx, z in red.chain.items():
            image, bits = 0, z
            while bits:
                low = bits & -bits
                image ^= out.get(low.bit_length() - 1, 0)
                bits ^= low
            assert image == 0
            assert bin(red.coord[idx] & z).count("1") % 2 == 1


def torus_pairs(limit):
    return [(p, q) for p in range(2, limit) for q in range(p + 1, limit) if gcd(p, q) == 1 and p * q <= limit]


class TestOracleVsFormulas:
    @pytest.mark.parametrize("p,q", torus_pairs(60))
    def test_torus_knots(self, p, q):
        S = torus_knot_semigroup(p, q)
        C = staircase_complex(staircase_from_semigroup(S))
        R = counting_function(S)
        for s in range(-S.genus - 2, S.genus + 3):
            assert v_s_oracle(C, s) == v_from_r(R, s=s)

    @pytest.mark.parametrize("n", [-3, -2, -1, 1, 2, 3])
    def test_basic_staircases(self, n):
        C = staircase_complex(basic_staircase(n))
        for s in range(-5, 6):
            assert v_s_oracle(C, s) == basic_v(n, s)

    def test_oracle_dual_trefoil(self):
        C = dualize_complex(trefoil())
        assert [v_s_oracle(C, s) for s in (-1, 0, 1)] == [1, 0, 0]

    def test_counterexample(self):
        X = tensor_all([dualize_complex(trefoil()),
                        staircase_complex(staircase_from_semigroup(torus_knot_semigroup(6, 7))),
                        staircase_complex(staircase_from_semigroup(torus_knot_semigroup(4, 5)))])
        assert len(X) == 231
        assert v_s_oracle(X, 0) == 7

    def test_half_integer_levels(self):
        C = shift_complex(trefoil(), 2, 0)
        assert v_s_oracle(C, Fraction(1, 2)) == v_s_oracle(trefoil(), 0) - Fraction(1, 2)
        with pytest.raises(HalfIntegerLevel):
            v_s_oracle(C, 0)
        with pytest.raises(HalfIntegerLevel):
            v_s_oracle(trefoil(), Fraction(1, 2))

    def test_mixed_half_and_integer_rejected(self):
        C = BigradedComplex(((0, 0), (2, 0)))
        with pytest.raises(HalfIntegerLevel):
            v_s_oracle(C, 0)

    def test_empty_actions_give_plain_v(self):
        C = tensor(trefoil(), trefoil())
        for s in range(-3, 4):
            v = v_s_oracle(C, s)
            assert v_top_bot_oracle(C, [], s) == (v, v)


class TestExactness:
    @pytest.mark.parametrize("pq", [(2, 3), (3, 4), (2, 7), (3, 5)])
    def test_single_staircase(self, pq):
        S = staircase_from_semigroup(torus_knot_semigroup(*pq))
        assert exactness_check(staircase_complex(S), stair_levels([S]))

    @pytest.mark.parametrize("a,b", [((2, 3), (2, 5)), ((2, 3), (3, 4)), ((3, 4), (3, 5)), ((2, 3), (2, 3))])
    def test_pairs(self, a, b):
        stairs = [staircase_from_semigroup(torus_knot_semigroup(*x)) for x in (a, b)]
        C = tensor_all(staircase_complex(s) for s in stairs)
        assert exactness_check(C, stair_levels(stairs))

    def test_triple_trefoil_is_not_exact(self):
        stairs = [staircase_from_semigroup(torus_knot_semigroup(2, 3))] * 3
        C = tensor_all(staircase_complex(s) for s in stairs)
        assert not exactness_check(C, stair_levels(stairs))

    def test_levels_must_drop_by_one(self):
        with pytest.raises(InvalidComplex):
            exactness_check(trefoil(), [0, 0, 0])


SMALL_KNOTS = [(2, 3), (2, 5), (3, 4), (3, 5), (4, 5)]


def _stair(pq):
    return staircase_from_semigroup(torus_knot_semigroup(*pq))


class TestProductsWithBasics:
    @pytest.mark.parametrize("pq", SMALL_KNOTS)
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_positive_basics(self, pq, n):
        from floercurves.staircases import v_s_with_positive_basics
        K = _stair(pq)
        X = tensor(staircase_complex(K), staircase_complex(basic_staircase(n)))
        for s in range(-K.genus - n - 1, K.genus + n + 2):
            assert v_s_oracle(X, s) == v_s_with_positive_basics([K], n, s)

    @pytest.mark.parametrize("pq", SMALL_KNOTS)
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_negative_basics(self, pq, n):
        from floercurves.staircases import v_s_with_negative_basics
        K = _stair(pq)
        X = tensor(staircase_complex(K), staircase_complex(basic_staircase(-n)))
        for s in range(-K.genus - n - 1, K.genus + n + 2):
            assert v_s_oracle(X, s) == v_s_with_negative_basics(K, n, s)

    @pytest.mark.parametrize("pos", SMALL_KNOTS)
    @pytest.mark.parametrize("negs", [[(2, 3)], [(2, 3), (2, 3)], [(2, 5)], [(2, 3), (3, 4)], [(3, 4)]])
    def test_mixed_bound_is_exact_for_single_positive(self, pos, negs):
        from floercurves.staircases import dualize, v_s_mixed_bound
        from floercurves.staircases import GradedGeneratorSet
        P = _stair(pos)
        Ns = [dualize(_stair(x)) for x in negs]
        N0 = GradedGeneratorSet.unit()
        for N in Ns:
            N0 = N0 * N.zero_level()
        X = tensor_all([staircase_complex(P)] + [staircase_complex(N) for N in Ns])
        span = P.genus + sum(N.genus for N in Ns) + 1
        for s in range(-span, span + 1):
            assert v_s_oracle(X, s) == v_s_mixed_bound(N0, P.zero_level(), s)

    def test_mixed_bound_is_only_a_bound_for_two_positives(self):
        from floercurves.staircases import v_s_mixed_bound
        N0 = basic_staircase(-1).zero_level()
        P0 = _stair((6, 7)).zero_level() * _stair((4, 5)).zero_level()
        assert v_s_mixed_bound(N0, P0, 0) == 6 < 7


class TestLocalEquivalence:
    @pytest.mark.parametrize("k", range(-3, 4))
    @pytest.mark.parametrize("l", range(-3, 4))
    def test_basic_products(self, k, l):
        def block(n):
            return trivial_complex() if n == 0 else staircase_complex(basic_staircase(n))
        X = tensor(block(k), block(l))
        Y = block(k + l)
        span = abs(k) + abs(l) + 1
        for s in range(-span, span + 1):
            assert v_s_oracle(X, s) == v_s_oracle(Y, s) == basic_v(k + l, s)
