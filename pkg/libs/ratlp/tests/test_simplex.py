from fractions import Fraction

import pytest
from pytest_mock import MockerFixture
from ratlp.exceptions import InfeasibleError, UnboundedError, VertexLimitError
from ratlp.simplex import Tableau, maximize, minimize
from ratlp.vertices import enumerate_vertices, maximize_by_vertices

F = Fraction


def transport_polytope() -> tuple[list[list[Fraction]], list[Fraction]]:
    # 2x2 couplings with marginals (1/3, 2/3) and (1/2, 1/2); one equation is redundant.
    a_eq = [
        [F(1), F(1), F(0), F(0)],
        [F(0), F(0), F(1), F(1)],
        [F(1), F(0), F(1), F(0)],
        [F(0), F(1), F(0), F(1)],
    ]
    b_eq = [F(1, 3), F(2, 3), F(1, 2), F(1, 2)]
    return a_eq, b_eq


def test_maximize_simple() -> None:
    solution = maximize([F(1), F(2)], [[F(1), F(1)]], [F(1)])

    assert solution.value == 2
    assert solution.x == (F(0), F(1))


def test_minimize_simple() -> None:
    solution = minimize([F(1), F(2)], [[F(1), F(1)]], [F(1)])

    assert solution.value == 1
    assert solution.x == (F(1), F(0))


def test_redundant_rows_are_dropped() -> None:
    a_eq, b_eq = transport_polytope()

    solution = maximize([F(1), F(0), F(0), F(0)], a_eq, b_eq)

    assert solution.value == F(1, 3)
    assert sum(solution.x) == 1
    assert all(value >= 0 for value in solution.x)


def test_negative_rhs_rows_are_flipped() -> None:
    solution = maximize([F(1), F(1)], [[F(-1), F(-1)]], [F(-3)])

    assert solution.value == 3


def test_infeasible() -> None:
    with pytest.raises(InfeasibleError):
        maximize([F(1)], [[F(1)], [F(1)]], [F(1), F(2)])


def test_unbounded() -> None:
    with pytest.raises(UnboundedError):
        maximize([F(1), F(0)], [[F(1), F(-1)]], [F(0)])


def test_degenerate_program_terminates() -> None:
    # Classic cycling example for the largest-coefficient rule, written in equality form.
    a_eq = [
        [F(1, 2), F(-11, 2), F(-5, 2), F(9), F(1), F(0), F(0)],
        [F(1, 2), F(-3, 2), F(-1, 2), F(1), F(0), F(1), F(0)],
        [F(1), F(0), F(0), F(0), F(0), F(0), F(1)],
    ]
    b_eq = [F(0), F(0), F(1)]
    cost = [F(10), F(-57), F(-9), F(-24), F(0), F(0), F(0)]

    solution = maximize(cost, a_eq, b_eq)

    assert solution.value == 1


def test_pivot_counts_are_recorded(mocker: MockerFixture) -> None:
    spy = mocker.spy(Tableau, 'pivot')
    a_eq, b_eq = transport_polytope()

    solution = maximize([F(0), F(1), F(1), F(0)], a_eq, b_eq)

    assert solution.pivots == spy.call_count
    assert solution.value == F(5, 6)


def test_vertices_match_simplex() -> None:
    a_eq, b_eq = transport_polytope()
    costs = [
        [F(1), F(0), F(0), F(0)],
        [F(0), F(1), F(1), F(0)],
        [F(-1), F(2), F(3), F(-4)],
    ]

    for cost in costs:
        assert maximize(cost, a_eq, b_eq).value == maximize_by_vertices(cost, a_eq, b_eq).value


def test_enumerate_vertices_of_transport_polytope() -> None:
    a_eq, b_eq = transport_polytope()

    vertices = enumerate_vertices(a_eq, b_eq)

    assert set(vertices) == {
        (F(1, 3), F(0), F(1, 6), F(1, 2)),
        (F(0), F(1, 3), F(1, 2), F(1, 6)),
    }


def test_enumerate_vertices_limit() -> None:
    a_eq = [[F(1)] * 70]

    with pytest.raises(VertexLimitError) as error:
        enumerate_vertices(a_eq, [F(1)])
    assert error.value.kind == 'variables'
    assert error.value.size == 70  # noqa: PLR2004
    assert error.value.limit == 64  # noqa: PLR2004


def test_enumerate_vertices_basis_limit() -> None:
    a_eq, b_eq = transport_polytope()

    with pytest.raises(VertexLimitError) as error:
        enumerate_vertices(a_eq, b_eq, basis_limit=3)
    assert error.value.kind == 'candidate bases'
    assert error.value.size == 4  # noqa: PLR2004
    assert error.value.limit == 3  # noqa: PLR2004
    assert 'limit 3' in str(error.value)
