"""
Parametric reconstruction of the Thomas-Fermi solution from the reduced
Majorana (or Dresner) solution.

With W(t) = -6 t u / (1 - t^2 u) and I(t) = integral of W from 0 to t,

    y(t) = exp(I(t)),    x(t) = 144**(1/3) t**2 exp(-I(t)/3).

I(t) diverges logarithmically at t = 1 (y -> 0, x -> infinity), so the
reconstruction stops at t_max = 1 - eps_rec.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad_vec
from scipy.interpolate import CubicHermiteSpline, CubicSpline, PchipInterpolator

from .errors import DomainError, SingularityError
from .homology import (DresnerConstants, MajoranaConstants, majorana_slope,
                       to_majorana)
from .reduced import ReducedSolution, majorana_boundary_slope, majorana_rhs

#: Default distance from t = 1 at which reconstruction stops.
EPS_REC = 1e-4


def w_of_t(t, u):
    """Integrand W = -6 t u / (1 - t^2 u) of the log of y."""
    den = 1.0 - t * t * u
    if np.any(np.asarray(den) == 0):
        raise SingularityError("1 - t^2 u vanishes", location=t)
    return -6.0 * t * u / den


@dataclass(frozen=True)
class ParametricSolution:
    """Samples (t, x(t), y(t)) of the reconstructed solution.

    ``log_y`` is the cumulative integral I(t); ``yp`` is y'(x) recovered
    from the chart, y' = u y**(4/3) / b; ``quad_error`` is the summed error
    estimate of the quadrature.
    """

    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    yp: np.ndarray
    log_y: np.ndarray
    quadrature_tol: float
    quad_error: float

    def __post_init__(self):
        for name in ("t", "x", "y", "yp", "log_y"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def samples(self):
        return np.column_stack([self.t, self.x, self.y])


def _l1(v):
    return np.sum(np.abs(v))


def _cumulative_quad(f, nodes, quad_tol):
    """
    Integral of a vectorized f from nodes[0] to each node, and the error
    estimate.

    All cells are mapped onto [0, 1] and integrated together by the
    adaptive Gauss-Kronrod scheme of ``quad_vec``.  Errors are measured in
    the 1-norm over cells, which bounds the error of every partial sum.
    """
    a, h = nodes[:-1], np.diff(nodes)
    pieces, err = quad_vec(lambda r: h * f(a + r * h), 0.0, 1.0,
                           epsabs=quad_tol, epsrel=0.0, norm=_l1, limit=10000)
    return np.concatenate([[0.0], np.cumsum(pieces)]), err


def _u_function(reduced):
    if reduced.interpolant is not None:
        return reduced.interpolant
    # samples only: Hermite interpolation with slopes from the equation itself
    t, u = reduced.indep, reduced.dep
    slopes = np.empty_like(u)
    for i, (ti, ui) in enumerate(zip(t, u)):
        try:
            slopes[i] = majorana_rhs(ti, ui)
        except SingularityError:
            slopes[i] = majorana_boundary_slope()
    return CubicHermiteSpline(t, u, slopes)


def _nodes(grid, t_max):
    nodes = grid[grid < t_max]
    return np.append(nodes, t_max)


def reconstruct_majorana(reduced, quad_tol=1e-10, eps_rec=EPS_REC):
    """
    (t, x, y) along the solution encoded by a Majorana ReducedSolution.

    The cumulative integral of W is computed once over the reduced grid
    (adaptive Gauss-Kronrod, total error at most ``quad_tol``) and shared
    by the x and y formulas.  Output nodes are the reduced grid points
    below t_max, plus t_max itself.
    """
    if reduced.chart != "majorana":
        raise DomainError(f"expected a Majorana solution, got {reduced.chart}")
    if quad_tol <= 0:
        raise DomainError("quad_tol must be positive")
    if not 0 < eps_rec < 1:
        raise DomainError("eps_rec must lie in (0, 1)")
    t_max = 1.0 - eps_rec
    if reduced.indep[0] != 0.0 or reduced.indep[-1] < t_max:
        raise DomainError(f"reduced solution must cover [0, {t_max}]")
    u_of = _u_function(reduced)

    def w(t):
        return w_of_t(t, u_of(t))

    t = _nodes(reduced.indep, t_max)
    log_y, err = _cumulative_quad(w, t, quad_tol)
    consts = MajoranaConstants.canonical()
    y = np.exp(log_y)
    x = (t / consts.a) ** 2 * np.exp(-log_y / 3.0)
    yp = majorana_slope(y, u_of(t), consts)
    return ParametricSolution(t, x, y, yp, log_y, quad_tol, err)


def majorana_to_dresner_solution(reduced):
    """Re-express a Majorana solution u(t) as s(tau), tau = A t^6, s = B t^8 u."""
    if reduced.chart != "majorana":
        raise DomainError(f"expected a Majorana solution, got {reduced.chart}")
    c = DresnerConstants.canonical()
    u_of = _u_function(reduced)
    t = reduced.indep
    tau = c.A * t ** c.n
    s = c.B * t ** c.m * reduced.dep

    def s_of(sigma):
        tt = (np.asarray(sigma, dtype=float) / c.A) ** (1.0 / c.n)
        return c.B * tt ** c.m * u_of(tt)

    return ReducedSolution("dresner", tau, s, reduced.boundary, interpolant=s_of)


def reconstruct_dresner(reduced, quad_tol=1e-10, eps_rec=EPS_REC):
    """
    (tau, x, y) from a Dresner solution s(tau) that starts at tau = 0.

        y(tau) = exp(J),  x(tau) = tau**(1/3) exp(-J/3),
        J = integral from 0 to tau of s / (sigma (3 sigma + s)) d sigma

    The integrand behaves like sigma**(-2/3) at the origin; the quadrature
    runs in the variable t with sigma = A t^6, where it is smooth.

    Returns
    -------
    tau, x, y : ndarray
    """
    if reduced.chart != "dresner":
        raise DomainError(f"expected a Dresner solution, got {reduced.chart}")
    c = DresnerConstants.canonical()
    if reduced.indep[0] > 1e-12:
        raise DomainError("s(tau) data must extend down to tau = 0")
    tau_max = c.A * (1.0 - eps_rec) ** c.n
    if reduced.indep[-1] < tau_max:
        raise DomainError(f"Dresner solution must reach tau = {tau_max}")

    if reduced.interpolant is not None:
        s_of = reduced.interpolant
    else:
        # interpolate the regular combination s / (B t^8) in t
        tt = (reduced.indep / c.A) ** (1.0 / c.n)
        with np.errstate(divide="ignore", invalid="ignore"):
            reg = reduced.dep / (c.B * tt ** c.m)
        ok = tt > 0
        reg_of = PchipInterpolator(tt[ok], reg[ok], extrapolate=True)

        def s_of(sigma):
            ts = (np.asarray(sigma, dtype=float) / c.A) ** (1.0 / c.n)
            return c.B * ts ** c.m * reg_of(ts)

    def integrand(t):
        sigma = c.A * t ** c.n
        s = s_of(sigma)
        with np.errstate(divide="ignore", invalid="ignore"):
            g = s / (sigma * (3.0 * sigma + s)) * c.n * c.A * t ** (c.n - 1)
        return np.where(t == 0.0, 0.0, g)

    tau = reduced.indep[reduced.indep < tau_max]
    tau = np.append(tau, tau_max)
    nodes = (tau / c.A) ** (1.0 / c.n)
    log_y, _ = _cumulative_quad(integrand, nodes, quad_tol)
    y = np.exp(log_y)
    x = np.cbrt(tau) * np.exp(-log_y / 3.0)
    return tau, x, y


def initial_slope_from_u0(u0, consts=None):
    """y'(0) from u(0): at x = 0, y = 1 so u = b y'(0)."""
    consts = MajoranaConstants.canonical() if consts is None else consts
    return u0 / consts.b


def compare_to_direct(param, table, x_lo=0.01, x_hi=50.0):
    """
    Relative difference between reconstructed and directly integrated y.

    The direct solution is evaluated at the reconstructed abscissae in
    [x_lo, x_hi] through its dense output.

    Returns
    -------
    x, y_direct, y_reconstructed, rel_err : ndarray
    """
    mask = (param.x >= x_lo) & (param.x <= x_hi)
    if x_hi > table.x[-1]:
        raise DomainError(f"direct solution only reaches x = {table.x[-1]}")
    x = param.x[mask]
    _, y_direct, _ = table.emden_fowler(x)
    y_rec = param.y[mask]
    return x, y_direct, y_rec, np.abs(y_rec - y_direct) / np.abs(y_direct)


def round_trip(param, consts=None):
    """
    Map a reconstruction back into the Majorana chart.

    y' comes from differentiating the samples alone: a cubic spline of ln y
    against s = -ln(1-t), a coordinate in which ln y stays smooth at both
    t -> 0 and t -> 1, gives d(ln y)/dt; the chart identity
    ln x = 2 ln(t/a) - (ln y)/3 then gives d(ln x)/dt, and
    y' = y d(ln y)/dt / (x d(ln x)/dt).  The endpoint t = 0 is dropped.

    Returns
    -------
    MajoranaTU
    """
    consts = MajoranaConstants.canonical() if consts is None else consts
    s = -np.log1p(-param.t)
    dlny = CubicSpline(s, np.log(param.y))(s, 1) / (1.0 - param.t)
    t, x, y, dlny = param.t[1:], param.x[1:], param.y[1:], dlny[1:]
    if t[0] <= 0:
        raise DomainError("parametric samples must start at t = 0")
    dlnx = 2.0 / t - dlny / 3.0
    return to_majorana(x, y, y * dlny / (x * dlnx), consts)
