from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semilat.errors import CycleError, SemilatError, UnknownElement
from semilat.poset import (
    Poset,
    downset,
    height,
    local_finiteness_constant,
    mobius,
    poset_from_leq,
)
from semilat.semilattice import enumerate_semilattices


def chain(names):
    return poset_from_leq(names, list(zip(names, names[1:])))


DIAMOND = poset_from_leq(
    ["theta", "a", "b", "1"], [("theta", "a"), ("theta", "b"), ("a", "1"), ("b", "1")]
)


def brute_mobius(P):
    """Möbius values by inverting the zeta matrix with exact Gauss-Jordan."""
    n = len(P)
    Z = [[Fraction(v) for v in row] for row in P.zeta_matrix()]
    A = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(Z)]
    for c in range(n):
        p = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [v / piv for v in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [u - f * v for u, v in zip(A[r], A[c])]
    return [row[n:] for row in A]


@st.composite
def posets(draw, max_size=8):
    n = draw(st.integers(1, max_size))
    names = [f"p{i}" for i in range(n)]
    pairs = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda t: t[0] < t[1])))
    return poset_from_leq(names, [(names[i], names[j]) for i, j in pairs])


class TestConstruction:
    def test_one_point(self):
        P = poset_from_leq(["a"], [])
        assert P.relation == {("a", "a")}

    def test_single_cover(self):
        P = poset_from_leq(["a", "b"], [("a", "b")])
        assert P.relation == {("a", "a"), ("b", "b"), ("a", "b")}
        assert len(P.relation) == 3

    def test_cycle(self):
        with pytest.raises(CycleError):
            poset_from_leq(["a", "b"], [("a", "b"), ("b", "a")])

    def test_long_cycle(self):
        with pytest.raises(CycleError):
            poset_from_leq(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])

    def test_dangling(self):
        with pytest.raises(UnknownElement):
            poset_from_leq(["a"], [("a", "z")])

    def test_transitive_closure(self):
        P = chain(["a", "b", "c", "d"])
        assert P.leq("a", "d") and not P.leq("d", "a")

    def test_from_downsets_validates(self):
        with pytest.raises(SemilatError, match="transitive"):
            Poset.from_downsets(["a", "b", "c"], [{0}, {0, 1}, {1, 2}])
        with pytest.raises(SemilatError, match="reflexive"):
            Poset.from_downsets(["a"], [set()])
        with pytest.raises(CycleError):
            Poset.from_downsets(["a", "b"], [{0, 1}, {0, 1}])


class TestDownset:
    def test_chain_top(self):
        assert downset(chain(["a", "b", "c"]), "c") == {"a", "b", "c"}

    def test_chain_bottom(self):
        assert downset(chain(["a", "b", "c"]), "a") == {"a"}

    def test_diamond_top(self):
        assert downset(DIAMOND, "1") == {"theta", "a", "b", "1"}

    def test_unknown(self):
        with pytest.raises(UnknownElement):
            downset(DIAMOND, "zz")

    @given(posets())
    def test_downset_is_down_closed(self, P):
        for x in P:
            D = downset(P, x)
            assert x in D
            for y in D:
                assert downset(P, y) <= D


class TestConstants:
    def test_fan_with_bottom(self):
        names = ["theta"] + [f"a{i}" for i in range(6)]
        P = poset_from_leq(names, [("theta", a) for a in names[1:]])
        assert local_finiteness_constant(P) == 2

    @pytest.mark.parametrize("n", [1, 2, 5, 9])
    def test_chain_constant(self, n):
        assert local_finiteness_constant(chain([str(i) for i in range(n)])) == n

    def test_one_point(self):
        P = poset_from_leq(["a"], [])
        assert local_finiteness_constant(P) == 1
        assert height(P) == 0

    def test_fan_unital_height(self):
        names = ["theta", "a", "b", "c", "1"]
        pairs = [("theta", x) for x in "abc"] + [(x, "1") for x in "abc"]
        assert height(poset_from_leq(names, pairs)) == 2

    def test_chain4_height(self):
        assert height(chain(list("abcd"))) == 3

    def test_antichain_height(self):
        assert height(poset_from_leq(list("abc"), [])) == 0


class TestMobius:
    def test_chain3(self):
        mu = mobius(chain(["a", "b", "c"]))
        assert mu["a", "b"] == -1
        assert mu["a", "c"] == 0
        assert mu["b", "c"] == -1

    def test_diamond(self):
        mu = mobius(DIAMOND)
        assert mu["theta", "1"] == 1
        assert mu["a", "1"] == mu["b", "1"] == -1

    def test_incomparable_lookup(self):
        mu = mobius(DIAMOND)
        with pytest.raises(KeyError):
            mu["a", "b"]
        assert mu.value("a", "b") == 0

    @given(posets())
    def test_diagonal_is_one(self, P):
        mu = mobius(P)
        assert all(mu[x, x] == 1 for x in P)

    @given(posets())
    def test_interval_sums_vanish(self, P):
        mu = mobius(P)
        for x in P:
            for y in downset(P, x):
                if y != x:
                    total = sum(mu[z, x] for z in downset(P, x) if P.leq(y, z))
                    assert total == 0

    @settings(max_examples=60)
    @given(posets())
    def test_zeta_mobius_duality(self, P):
        n = len(P)
        Z = P.zeta_matrix()
        M = mobius(P).matrix()
        I = [[int(i == j) for j in range(n)] for i in range(n)]
        ZM = [[sum(Z[i][k] * M[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        MZ = [[sum(M[i][k] * Z[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        assert ZM == I and MZ == I

    @settings(max_examples=40)
    @given(posets(max_size=7))
    def test_matches_matrix_inverse(self, P):
        assert mobius(P).matrix() == brute_mobius(P)

    def test_values_are_fractions(self):
        assert all(isinstance(v, Fraction) for v in mobius(DIAMOND).values())

    def test_enumerated_lattice_posets(self):
        for S in enumerate_semilattices(5):
            assert mobius(S.poset).matrix() == brute_mobius(S.poset)


def test_extension_by_small_maximal_element_keeps_constant():
    names = ["theta", "a", "b"]
    P = poset_from_leq(names, [("theta", "a"), ("theta", "b")])
    C = local_finiteness_constant(P)
    for k in range(1, 5):
        ext = names + [f"m{k}"]
        Q = poset_from_leq(ext, [("theta", "a"), ("theta", "b"), ("a", f"m{k}")])
        # new element's downset {theta, a, m} has 3 > C elements
        assert local_finiteness_constant(Q) == max(C, 3)
    Q = poset_from_leq(names + ["m"], [("theta", "a"), ("theta", "b"), ("theta", "m")])
    assert local_finiteness_constant(Q) == C


def test_restrict_keeps_induced_order():
    R = DIAMOND.restrict(["theta", "a", "1"])
    assert R.elements == ("theta", "a", "1")
    assert R.leq("theta", "1") and R.leq("a", "1")
    for x, y in combinations(R.elements, 2):
        assert R.leq(x, y) == DIAMOND.leq(x, y)
