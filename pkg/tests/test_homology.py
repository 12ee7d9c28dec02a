import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from tfhomology import (DomainError, HomologyMap, MajoranaConstants,
                        SingularityError, apply_homology, homology_exponent,
                        solve_dresner_constants, solve_majorana_constants,
                        to_coppel, to_dresner, to_majorana, to_milne)
from tfhomology.homology import (chart_values, dresner_to_majorana,
                                 majorana_slope, majorana_to_dresner)
from tfhomology.invariance import charts_for, invariance_sweep

pos = st.floats(0.05, 20.0)
slope = st.floats(-20.0, 20.0).filter(lambda v: abs(v) > 1e-3)
exponents = st.sampled_from([0.0, 0.5, 1.2, 1.5, 2.0, 2.5, 3.0, 5.0])


@pytest.mark.parametrize("p, q", [(1.5, 3.0), (3.0, 0.0), (0.0, -3.0), (2.0, 1.0)])
def test_homology_exponent(p, q):
    assert homology_exponent(p) == q


def test_homology_exponent_pole():
    with pytest.raises(DomainError, match="p = 1"):
        homology_exponent(1.0)


def test_apply_homology_example():
    # Y(X) = 2^-3 y(X/2) carries (2, 5, -1) to (4, 5/8, -1/16)
    assert apply_homology((2.0, 5.0, -1.0), HomologyMap(2.0, 3.0)) == (4.0, 0.625, -0.0625)


@given(x=pos, y=pos, yp=slope, q=st.floats(-3, 5))
def test_identity_map_is_exact(x, y, yp, q):
    assert apply_homology((x, y, yp), HomologyMap(1.0, q)) == (x, y, yp)


@given(x=pos, y=pos, yp=slope, l1=st.floats(0.2, 5), l2=st.floats(0.2, 5),
       p=exponents.filter(lambda p: p != 1))
def test_composition(x, y, yp, l1, l2, p):
    h1, h2 = HomologyMap.for_exponent(l1, p), HomologyMap.for_exponent(l2, p)
    composed = apply_homology((x, y, yp), h1.compose(h2))
    stepwise = apply_homology(apply_homology((x, y, yp), h2), h1)
    assert np.allclose(composed, stepwise, rtol=1e-12, atol=0)


def test_homology_rejects_bad_input():
    with pytest.raises(DomainError):
        HomologyMap(0.0, 3.0)
    with pytest.raises(DomainError):
        apply_homology((0.0, 1.0, 1.0), HomologyMap(2.0, 3.0))
    with pytest.raises(DomainError):
        HomologyMap(2.0, 3.0).compose(HomologyMap(2.0, 1.0))


def test_coppel_examples():
    assert to_coppel(1.0, 1.0, 2.0, 2.7) == (0.5, 2.0)
    u, v = to_coppel(1.0, 1.0, 1.0, 1.5)
    assert (u, v) == (1.0, 1.0)
    with pytest.raises(SingularityError):
        to_coppel(1.0, 1.0, 0.0, 1.5)
    with pytest.raises(SingularityError):
        to_coppel(1.0, 0.0, 1.0, 1.5)


def test_milne_examples():
    assert to_milne(1.0, 1.0, 2.0, 1.5) == (1.0, 1.0)
    with pytest.raises(SingularityError):
        to_milne(2.0, 2.0, 1.0, 0.0)


def test_dresner_examples():
    assert to_dresner(2.0, 1.0, -1.0) == (8.0, -16.0)
    tau, s = to_dresner(1e-9, 1.0, -1.588)
    assert abs(tau) < 1e-26 and abs(s) < 1e-35


def test_majorana_examples():
    t, u = to_majorana(1.0, 1.0, 0.0)
    assert t == pytest.approx(144 ** (-1 / 6), rel=1e-15)
    assert t == pytest.approx(0.436790, abs=1e-6)
    assert u == 0.0
    B = -1.588071
    t, u = to_majorana(1e-30, 1.0, B)
    assert t < 1e-15
    assert u == pytest.approx(-(16 / 3) ** (1 / 3) * B, rel=1e-14)
    with pytest.raises(DomainError):
        to_majorana(1.0, -1.0, 0.0)


@given(x=pos, y=pos, yp=slope, p=exponents.filter(lambda p: p != 1))
def test_coppel_product_identity(x, y, yp, p):
    u, v = to_coppel(x, y, yp, p)
    assert u * v == pytest.approx(x ** (3 - p) * y ** (p - 1), rel=1e-12)


@given(x=pos, y=pos, yp=slope, p=exponents.filter(lambda p: p != 1))
def test_milne_product_identity(x, y, yp, p):
    theta = y / x
    assume(abs(x * yp - y) > 1e-3 * (abs(x * yp) + y))
    u, v = to_milne(x, y, yp, p)
    assert u * v == pytest.approx(x ** 2 * theta ** (p - 1), rel=1e-12)


@given(x=pos, y=pos, yp=slope, lam=st.floats(0.1, 10),
       p=exponents.filter(lambda p: p != 1))
def test_charts_invariant_on_points(x, y, yp, lam, p):
    assume(abs(x * yp - y) > 1e-3 * (abs(x * yp) + y))
    hmap = HomologyMap.for_exponent(lam, p)
    moved = apply_homology((x, y, yp), hmap)
    for chart in charts_for(p):
        before = chart_values(chart, x, y, yp, p)
        after = chart_values(chart, *moved, p)
        assert np.allclose(after, before, rtol=1e-11, atol=0), chart


@given(x=pos, y=pos, yp=slope)
def test_cross_chart_consistency(x, y, yp):
    tau, s = to_dresner(x, y, yp)
    t, u = to_majorana(x, y, yp)
    assert 144 * t ** 6 == pytest.approx(tau, rel=1e-12)
    assert -(144 ** (1 / 3)) / 3 * s / tau ** (4 / 3) == pytest.approx(u, rel=1e-12)
    t2, u2 = dresner_to_majorana(tau, s)
    assert (t2, u2) == pytest.approx((t, u), rel=1e-12)
    assert majorana_to_dresner(t, u) == pytest.approx((tau, s), rel=1e-12)
    assert majorana_slope(y, u) == pytest.approx(yp, rel=1e-12)


def test_chart_values_rejects_tf_charts_elsewhere():
    with pytest.raises(DomainError):
        chart_values("dresner", 1.0, 1.0, 1.0, 2.0)
    with pytest.raises(DomainError):
        chart_values("nope", 1.0, 1.0, 1.0, 1.5)


def test_majorana_constants():
    c = solve_majorana_constants()
    assert c.a == pytest.approx(12 ** (-1 / 3), rel=1e-15)
    assert c.b / c.a == pytest.approx(-4.0, rel=1e-14)
    assert 4 / (3 * c.a * c.b ** 2) == pytest.approx(1.0, rel=1e-14)
    assert 1 / (3 * c.a ** 2 * c.b) == pytest.approx(-1.0, rel=1e-14)
    assert 2 * c.b / c.a == pytest.approx(-8.0, rel=1e-14)
    assert c.a == pytest.approx(MajoranaConstants.canonical().a, rel=1e-15)


@pytest.mark.parametrize("tu2, t2u", [(1.0, 1.0), (-1.0, 1.0), (2.0, -0.5)])
def test_majorana_constants_other_targets(tu2, t2u):
    c = solve_majorana_constants(tu2, t2u)
    assert c.tu2_coeff == pytest.approx(tu2, rel=1e-14)
    assert c.t2u_coeff == pytest.approx(t2u, rel=1e-14)


def test_dresner_constants():
    c = solve_dresner_constants()
    assert (c.A, c.B, c.n, c.m) == (144.0, -432.0, 6, 8)
    assert 4 * c.B ** 2 / (3 * c.A ** 2.5) == pytest.approx(1.0, rel=1e-14)
    assert c.B / (3 * c.A) == -1.0
    assert 4 * c.n - 3 * c.m == 0


def test_invariance_sweep_tf():
    results = invariance_sweep(1.5, 2.0, n_points=50)
    assert {r.chart for r in results} == {"coppel", "milne", "dresner", "majorana"}
    assert max(max(r.max_dev, r.mapped_dev) for r in results) < 1e-6


def test_invariance_sweep_rejects_p_one():
    with pytest.raises(DomainError):
        invariance_sweep(1.0, 2.0)


def test_invariance_sweep_seeded():
    a = invariance_sweep(2.5, 0.5, n_points=30, seed=3)
    b = invariance_sweep(2.5, 0.5, n_points=30, seed=3)
    assert a == b
