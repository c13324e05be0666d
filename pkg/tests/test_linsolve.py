from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from semilat.linsolve import rank, solve


def test_unique_two_by_two():
    sol = solve([({0: 1, 1: 1}, 3), ({0: 1, 1: -1}, 1)], 2)
    assert sol.unique and sol.particular == {0: 2, 1: 1}


def test_inconsistent():
    sol = solve([({0: 1}, 1), ({0: 2}, 3)], 1)
    assert not sol.consistent and not sol.unique


def test_underdetermined():
    sol = solve([({0: 1, 1: 1}, 1)], 3)
    assert sol.consistent and sol.nullity == 2


def test_redundant_rows():
    sol = solve([({0: 1}, 1), ({0: 3}, 3), ({}, 0)], 1)
    assert sol.unique and sol.particular == {0: 1}


def test_zero_rhs_only_empty_particular():
    assert solve([({0: 1, 1: 2}, 0)], 2).particular == {}


def test_rank():
    assert rank([{0: 1, 1: 1}, {0: 2, 1: 2}, {2: 1}], 3) == 2


@st.composite
def square_systems(draw):
    n = draw(st.integers(1, 5))
    M = [[draw(st.integers(-3, 3)) for _ in range(n)] for _ in range(n)]
    x = [draw(st.fractions(min_value=-4, max_value=4, max_denominator=4)) for _ in range(n)]
    return M, x


def det(M):
    A = [[Fraction(v) for v in row] for row in M]
    n, d = len(A), Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        d *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            A[r] = [u - f * v for u, v in zip(A[r], A[c])]
    return d


@given(square_systems())
def test_recovers_planted_solution(data):
    M, x = data
    n = len(M)
    eqs = [({j: M[i][j] for j in range(n)}, sum(M[i][j] * x[j] for j in range(n))) for i in range(n)]
    sol = solve(eqs, n)
    assert sol.consistent
    assert sol.unique == (det(M) != 0)
    # the particular solution satisfies every equation
    for row, b in eqs:
        assert sum(v * sol.particular.get(j, 0) for j, v in row.items()) == b
    if sol.unique:
        assert [sol.particular.get(j, 0) for j in range(n)] == x
