import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thhtate.errors import NonIncreasing, WindowTooSmall
from thhtate.fpgca import EXTERIOR, LAURENT, Monomial
from thhtate.presets import Preset
from thhtate.singer import (
    phi,
    phi_is_multiplicative,
    s_shift,
    singer_index,
    singer_map,
    singer_presentation,
    t_power,
    verify_bijection,
)

X1, X2 = Preset.parse("X1"), Preset.parse("X2")


def test_presentation_degrees():
    A = singer_presentation(X1, 3).algebra
    assert A.generator("b1^x3").bidegree == (0, 6)
    assert A.generator("sigma_b1^x3").bidegree == (0, 9)
    assert A.generator("sigma_b1^x3").kind == EXTERIOR
    A = singer_presentation(X2, 2).algebra
    assert A.generator("sigma_b2^x2").bidegree == (0, 10)


def test_t_power():
    assert t_power(2) == 1
    assert t_power(3) == 1
    assert t_power(5) == 2
    assert t_power(7) == 3


def test_phi_on_generators():
    smap = singer_map(X1, 3)
    assert phi(Monomial.of({"b1^3": 1}), smap) == Monomial.of({"b1^x3": 1})
    assert phi(Monomial.of({"b1^2*sigma_b1": 1}), smap) == Monomial.of({"t": 1, "sigma_b1^x3": 1})
    smap = singer_map(X1, 5)
    assert phi(Monomial.of({"b1^4*sigma_b1": 1}), smap) == Monomial.of({"t": 2, "sigma_b1^x5": 1})


@pytest.mark.parametrize("p", [2, 3, 5])
def test_exterior_shift(p):
    assert singer_map(X1, p).exterior_shift == -(p - 1)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_phi_preserves_total_degree_on_generators(p):
    smap = singer_map(X2, p)
    for g in smap.source.generators:
        m = Monomial.of({g.name: 1 if g.kind != LAURENT else -1})
        assert smap.target.algebra.total_degree(phi(m, smap)) == smap.source.total_degree(m)


def test_s_shift_examples():
    assert s_shift([], 3) == 0
    assert s_shift([1], 2) == -3
    assert s_shift([1], 3) == -6
    assert s_shift([1, 2], 3) == -2 * (2 * 3 + 2)


def test_s_shift_rejects_bad_sequences():
    with pytest.raises(NonIncreasing):
        s_shift([2, 2], 3)
    with pytest.raises(NonIncreasing):
        s_shift([3, 1], 3)
    with pytest.raises(NonIncreasing):
        s_shift([0, 1], 3)


def test_singer_index_examples():
    assert singer_index(5, 1, 2) == 9
    assert singer_index(4, 4, 7) == 4
    assert singer_index(0, 2, 3) == -4


@settings(max_examples=100)
@given(st.integers(-500, 500), st.integers(-500, 500), st.sampled_from([2, 3, 5, 7]))
def test_singer_index_property(k, d, p):
    assert singer_index(k, d, p) - d == p * (k - d)


@settings(max_examples=100)
@given(st.sets(st.integers(1, 40), max_size=8), st.sampled_from([2, 3, 5]))
def test_s_shift_property(L, p):
    L = sorted(L)
    expected = sum(-(p - 1) * (2 * ell + 1) for ell in L)
    assert s_shift(L, p) == expected


@pytest.mark.parametrize("preset", [Preset.parse("X0"), X1, X2])
@pytest.mark.parametrize("p", [2, 3])
def test_bijection(preset, p):
    rep = verify_bijection(preset, p, 24)
    assert rep.ok, rep.failures[:3]
    assert all(a == b for a, b in rep.counts.values())


def test_bijection_window_too_small():
    with pytest.raises(WindowTooSmall):
        verify_bijection(X1, 5, 10, s_range=(0, 1))


def _monomials(smap):
    gens = smap.source.generators
    parts = []
    for g in gens:
        if g.kind == EXTERIOR:
            parts.append(st.integers(0, 1))
        elif g.kind == LAURENT:
            parts.append(st.integers(-5, 5))
        else:
            parts.append(st.integers(0, 3))
    return st.tuples(*parts).map(smap.source.sparse)


@pytest.mark.parametrize("p", [2, 3])
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_phi_multiplicative(p, data):
    smap = singer_map(X2, p)
    m1 = data.draw(_monomials(smap))
    m2 = data.draw(_monomials(smap))
    assert phi_is_multiplicative(m1, m2, smap)
