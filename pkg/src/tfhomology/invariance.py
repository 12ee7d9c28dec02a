"""Numerical check that the charts are constant under homology."""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .homology import CHARTS, HomologyMap, apply_homology, chart_values
from .odes import EquationParams, TF_P, integrate_direct


@dataclass(frozen=True)
class InvarianceResult:
    p: float
    lam: float
    chart: str
    max_dev: float
    mapped_dev: float


def charts_for(p):
    """Charts defined for exponent p."""
    return CHARTS if p == TF_P else ("coppel", "milne")


def _solution_pair(p, lam, x_hi, tol, slope0):
    """A solution and its homolog, each integrated from its own start."""
    params = EquationParams(p)
    hmap = HomologyMap.for_exponent(lam, p)
    if p == TF_P:
        orig = integrate_direct(params, slope0, x_hi, tol, atol=1e-300)
        # Y(X) = lam**-q y(X/lam): Y(0) = lam**-q, Y'(0) = lam**(-q-1) y'(0)
        _, y0, yp0 = hmap.apply(1.0, 1.0, slope0)
        image = integrate_direct(params, yp0, lam * x_hi, tol, y0=y0, atol=1e-300)
    else:
        # theta = y/x scales as lam**(-q-1) = lam**(-2/(p-1))
        orig = integrate_direct(params, 0.0, x_hi, tol, lane_emden=True,
                                atol=1e-300)
        image = integrate_direct(params, 0.0, lam * x_hi, tol, lane_emden=True,
                                 y0=lam ** (-hmap.q - 1.0), atol=1e-300)
    return hmap, orig, image


def invariance_sweep(p, lam, charts=None, *, n_points=200, x_lo=0.05,
                     x_hi=2.0, tol=1e-12, seed=0, slope0=None):
    """
    Largest relative change of each chart under the homology with factor lam.

    The original solution and its homolog are integrated independently (the
    homolog from the scaled initial data).  At ``n_points`` abscissae drawn
    from [x_lo, x_hi] with ``seed``, the charts of the original at x are
    compared with the charts of the homolog at lam*x (``max_dev``) and with
    the charts of the mapped samples ``apply_homology`` (``mapped_dev``).

    For p = 3/2 the pair is Thomas-Fermi with y(0) = 1 and slope ``slope0``
    (default: the decaying solution via the Majorana route); otherwise
    Lane-Emden with theta(0) = 1, theta'(0) = 0.  Runs that stop before
    reaching the range raise DomainError.
    """
    if p == 1:
        raise DomainError("p = 1: homology exponent q = (3-p)/(p-1) is singular")
    charts = charts_for(p) if charts is None else charts
    if slope0 is None and p == TF_P:
        from .reconstruct import initial_slope_from_u0
        from .reduced import solve_majorana
        slope0 = initial_slope_from_u0(solve_majorana(2).dep[0])
    hmap, orig, image = _solution_pair(p, lam, x_hi, tol, slope0)
    for table in (orig, image):
        if table.termination.reason != "reached_x_max":
            raise DomainError(
                f"solution for p={p} stopped early: {table.termination}")

    rng = np.random.default_rng(seed)
    x = np.sort(rng.uniform(x_lo, x_hi, n_points))
    _, y, yp = orig.emden_fowler(x)
    X, Y, Yp = image.emden_fowler(lam * x)
    mx, my, myp = apply_homology((x, y, yp), hmap)

    results = []
    for chart in charts:
        base = chart_values(chart, x, y, yp, p)
        moved = chart_values(chart, X, Y, Yp, p)
        mapped = chart_values(chart, mx, my, myp, p)
        dev = max(_rel(m, b) for m, b in zip(moved, base))
        mdev = max(_rel(m, b) for m, b in zip(mapped, base))
        results.append(InvarianceResult(p, lam, chart, dev, mdev))
    return results


def _rel(a, b):
    return float(np.max(np.abs(a - b) / np.abs(b)))
