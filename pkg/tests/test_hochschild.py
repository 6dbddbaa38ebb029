import pytest

from thhtate.errors import DegreeBudgetExceeded, NonPolynomialInput
from thhtate.fpgca import GeneratorSpec, Window, basis, make_presentation, poincare_table
from thhtate.hochschild import (
    bar_hh_bigraded,
    bar_hh_oracle,
    bokstedt_e2,
    boundary_squares,
    hh_closed_form,
    hh_closed_form_table,
    hochschild_complex,
)
from thhtate.presets import Preset

P = GeneratorSpec.polynomial


def poly(p, *degrees):
    return make_presentation(p, [P(f"b{i}", (0, d)) for i, d in enumerate(degrees, start=1)])


def test_closed_form_x1():
    A = hh_closed_form(Preset.parse("X1").homology(2))
    assert A.names == ("b1", "sigma_b1")
    assert A.generator("sigma_b1").bidegree == (0, 3)
    assert A.generator("sigma_b1").kind == "exterior"


def test_closed_form_t1_p3():
    A = hh_closed_form(Preset.parse("T1").homology(3))
    assert A.generator("xi1").t == 4
    assert A.generator("sigma_xi1").t == 5


def test_closed_form_of_ground_field():
    A = hh_closed_form(make_presentation(2, []))
    assert A.names == ()
    assert [d for _, d in hh_closed_form_table(make_presentation(2, []), 3).items()] == [1, 0, 0, 0]


def test_non_polynomial_input():
    A = make_presentation(2, [GeneratorSpec.exterior("e", (0, 3))])
    with pytest.raises(NonPolynomialInput):
        hh_closed_form(A)
    with pytest.raises(NonPolynomialInput):
        bokstedt_e2(A)
    with pytest.raises(NonPolynomialInput):
        bar_hh_oracle(A, 4)


def test_bokstedt_degrees():
    page = bokstedt_e2(Preset.parse("X1").homology(2))
    assert page.algebra.generator("sigma_b1").bidegree == (1, 2)
    assert page.collapses
    page = bokstedt_e2(Preset.parse("T1").homology(3))
    assert page.algebra.generator("sigma_xi1").bidegree == (1, 4)


def test_bokstedt_total_degrees_match_closed_form():
    H = Preset.parse("X2").homology(3)
    e2 = bokstedt_e2(H).algebra
    closed = hh_closed_form(H)
    for d in range(15):
        n = sum(len(basis(e2, (s, d - s))) for s in range(0, 3))
        assert n == len(basis(closed, (0, d)))


@pytest.mark.parametrize("p", [2, 3])
def test_oracle_x1(p):
    A = poly(p, 2)
    assert [d for _, d in bar_hh_oracle(A, 10).items()] == [1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1]


def test_oracle_x2_p3():
    A = poly(3, 2, 4)
    got = [d for _, d in bar_hh_oracle(A, 12).items()]
    assert got == [1, 0, 1, 1, 2, 2, 2, 3, 4, 4, 4, 5, 6]


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("degrees", [(2,), (4,), (2, 4), (2, 2)])
def test_oracle_matches_closed_form(p, degrees):
    A = poly(p, *degrees)
    assert bar_hh_oracle(A, 9).entries == hh_closed_form_table(A, 9).entries


@pytest.mark.parametrize("p", [2, 3])
def test_boundary_squares_to_zero(p):
    assert boundary_squares(hochschild_complex(poly(p, 2, 4), 10)) == []


def test_bigraded_oracle_matches_bokstedt_page():
    # the bar filtration degree k agrees with the Bokstedt s-degree
    H = poly(3, 2, 4)
    bigraded = bar_hh_bigraded(H, 10)
    e2 = bokstedt_e2(H).algebra
    for (k, w), dim in bigraded.items():
        assert dim == len(basis(e2, (k, w))), (k, w)


def test_degree_budget():
    with pytest.raises(DegreeBudgetExceeded):
        hochschild_complex(poly(2, 2, 4), 12, max_chain_dim=5)


def test_negative_degree():
    with pytest.raises(ValueError):
        hochschild_complex(poly(2, 2), -1)


def test_closed_form_table_is_a_poincare_table():
    A = poly(2, 2)
    assert hh_closed_form_table(A, 6) == poincare_table(hh_closed_form(A), Window(0, 0, 0, 6))
