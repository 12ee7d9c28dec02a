"""
First-order equations left after dividing out the homology scaling, and
their integration.

    Coppel    du/dv   = u (2 - p + p v - u) / (v (1 + u - v))
    Milne     du/dv   = u (3 + p v - u) / (v (u - v - 1))
    Dresner   ds/dtau = (4 s + tau**(3/2)) / (s + 3 tau)
    Majorana  du/dt   = -8 (1 - t u**2) / (1 - t**2 u)

The Majorana equation is solved on [0, 1] from the boundary data u(1) = 1.
(1, 1) is a saddle of the equation in which both numerator and denominator
vanish, so integration starts a distance ``eps`` below t = 1 on the branch
u = 1 + a1 (t-1) + a2 (t-1)**2 + ... with a1 = -9 + sqrt(73).
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DomainError, SingularityError
from .homology import MajoranaConstants, chart_values


def _denominator_check(den, where):
    if np.any(np.asarray(den) == 0):
        raise SingularityError(f"denominator of the {where} equation vanishes")


def _on_invariant_line(u):
    # u = 0 is a solution of both equations, so du/dv = 0 there even where
    # the denominator vanishes
    u = np.asarray(u)
    return np.all(u == 0)


def coppel_rhs(u, v, p):
    """du/dv = u (2 - p + p v - u) / (v (1 + u - v))."""
    if _on_invariant_line(u):
        return 0.0 * np.asarray(v, dtype=float) if np.ndim(v) else 0.0
    den = v * (1.0 + u - v)
    _denominator_check(den, "Coppel")
    return u * (2.0 - p + p * v - u) / den


def milne_rhs(u, v, p):
    """du/dv = u (3 + p v - u) / (v (u - v - 1))."""
    if _on_invariant_line(u):
        return 0.0 * np.asarray(v, dtype=float) if np.ndim(v) else 0.0
    den = v * (u - v - 1.0)
    _denominator_check(den, "Milne")
    return u * (3.0 + p * v - u) / den


def dresner_rhs(tau, s):
    if np.any(np.asarray(tau) < 0):
        raise DomainError("tau must be non-negative")
    den = s + 3.0 * tau
    _denominator_check(den, "Dresner")
    return (4.0 * s + tau ** 1.5) / den


def majorana_rhs(t, u):
    den = 1.0 - t * t * u
    _denominator_check(den, "Majorana")
    return -8.0 * (1.0 - t * u * u) / den


def majorana_general_rhs(t, u, consts):
    """Reduced equation for arbitrary chart constants a, b.

    du/dt = 2 (b/a) (1 - 4 t u^2 / (3 a b^2)) / (1 + t^2 u / (3 a^2 b))
    """
    den = 1.0 + consts.t2u_coeff * t * t * u
    _denominator_check(den, "Majorana")
    return 2.0 * consts.b / consts.a * (1.0 - consts.tu2_coeff * t * u * u) / den


def majorana_boundary_slope():
    """
    u'(1) on the physical branch through the saddle (1, 1).

    Writing u = 1 + a (t-1) and balancing the leading terms of
    u' (1 - t^2 u) = -8 (1 - t u^2) gives a^2 + 18 a + 8 = 0.  The root
    -9 - sqrt(73) is the unstable direction of the saddle; the solution
    is the other one.
    """
    # -9 + sqrt(73) written without the cancellation
    return -8.0 / (9.0 + np.sqrt(73.0))


def majorana_series_coefficients():
    """Coefficients (a1, a2, a3) of u = 1 + sum a_k (t-1)**k at t = 1.

    Matching orders (t-1)**2 and (t-1)**3:

        a2 = -a1 (10 a1 + 17) / (3 a1 + 20)
        a3 = -(9 a1^2 + 22 a1 a2 + 2 a2^2 + 18 a2) / (4 a1 + 22)
    """
    a1 = majorana_boundary_slope()
    a2 = -a1 * (10.0 * a1 + 17.0) / (3.0 * a1 + 20.0)
    a3 = -(9.0 * a1 ** 2 + 22.0 * a1 * a2 + 2.0 * a2 ** 2 + 18.0 * a2) / (4.0 * a1 + 22.0)
    return a1, a2, a3


def majorana_series(t, order=2):
    """Truncated expansion of the physical u(t) about t = 1."""
    coeffs = majorana_series_coefficients()[:order]
    d = np.asarray(t, dtype=float) - 1.0
    return 1.0 + sum(c * d ** (k + 1) for k, c in enumerate(coeffs))


@dataclass(frozen=True)
class Outcome:
    reason: str  # "completed" or "hit_singularity"
    location: Optional[float] = None


@dataclass(frozen=True)
class ReducedSolution:
    """Samples of a reduced equation, independent variable increasing."""

    chart: str
    indep: np.ndarray
    dep: np.ndarray
    boundary: str
    outcome: Outcome = Outcome("completed")
    interpolant: Optional[Callable] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        for name in ("indep", "dep"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        if self.indep.shape != self.dep.shape or self.indep.ndim != 1:
            raise ValueError("indep and dep must be 1-d arrays of equal length")
        if np.any(np.diff(self.indep) <= 0):
            raise ValueError("independent variable must be strictly increasing")

    @property
    def samples(self):
        return np.column_stack([self.indep, self.dep])

    def __call__(self, s):
        """Dependent variable at ``s``; needs a dense interpolant."""
        if self.interpolant is None:
            raise ValueError("solution was built from samples only")
        return self.interpolant(s)


def solve_majorana(grid_size=2001, tol=1e-12, eps=1e-6, order=2):
    """
    Physical solution of du/dt = -8 (1 - t u^2) / (1 - t^2 u) on [0, 1].

    Starts at t = 1 - eps from the series about the saddle and integrates
    down to t = 0 with DOP853 (relative tolerance ``tol``).  Moving away
    from the saddle along its stable direction is itself stable, so errors
    in the start value decay.

    Returns
    -------
    ReducedSolution
        Uniform grid of ``grid_size`` points on [0, 1] with u(1) = 1 exact.
        The dense interpolant reproduces the series on [1 - eps, 1].
    """
    if grid_size < 2:
        raise DomainError("grid_size must be at least 2")
    if tol <= 0:
        raise DomainError("tol must be positive")
    if not 0 < eps < 0.1:
        raise DomainError("eps must lie in (0, 0.1)")
    t_start = 1.0 - eps
    u_start = float(majorana_series(t_start, order))

    def rhs(t, u):
        return -8.0 * (1.0 - t * u * u) / (1.0 - t * t * u)

    def denominator(t, u):
        return 1.0 - t * t * u[0]
    denominator.terminal = True

    sol = solve_ivp(rhs, (t_start, 0.0), [u_start], method="DOP853",
                    rtol=tol, atol=tol * 1e-3, events=denominator,
                    dense_output=True)
    if sol.status < 0:
        raise RuntimeError(f"integration failed: {sol.message}")
    if sol.t_events[0].size:
        loc = float(sol.t_events[0][0])
        raise SingularityError(f"1 - t^2 u vanished at t = {loc}", location=loc)

    def interpolant(t):
        t = np.asarray(t, dtype=float)
        near = t >= t_start
        inner = sol.sol(np.where(near, t_start, t))[0]
        out = np.where(near, majorana_series(t, order), inner)
        out = np.where(t == 1.0, 1.0, out)
        return out if out.ndim else float(out)

    grid = np.linspace(0.0, 1.0, grid_size)
    return ReducedSolution("majorana", grid, interpolant(grid), "u(1)=1",
                           interpolant=interpolant)


def _generic_system(chart, p):
    if chart == "coppel":
        return (lambda v, u: u * (2.0 - p + p * v - u) / (v * (1.0 + u - v)),
                lambda v, u: v * (1.0 + u - v))
    if chart == "milne":
        return (lambda v, u: u * (3.0 + p * v - u) / (v * (u - v - 1.0)),
                lambda v, u: v * (u - v - 1.0))
    if chart == "dresner":
        return (lambda tau, s: (4.0 * s + max(tau, 0.0) ** 1.5) / (s + 3.0 * tau),
                lambda tau, s: s + 3.0 * tau)
    if chart == "majorana":
        return (lambda t, u: -8.0 * (1.0 - t * u * u) / (1.0 - t * t * u),
                lambda t, u: 1.0 - t * t * u)
    raise DomainError(f"unknown chart {chart!r}")


def solve_reduced_generic(chart, p, start, span, tol=1e-10):
    """
    Integrate one of the reduced equations from ``start`` across ``span``.

    Parameters
    ----------
    chart : {"coppel", "milne", "dresner", "majorana"}
    p : float
        Emden-Fowler exponent (ignored by the Thomas-Fermi charts).
    start : (float, float)
        Initial (independent, dependent) pair; its abscissa must be one
        end of ``span``.
    span : (float, float)
        Range of the independent variable.
    tol : float
        Relative local error tolerance.

    Returns
    -------
    ReducedSolution
        ``outcome.reason`` is ``"hit_singularity"`` when the denominator
        changed sign before the far end; samples stop there.
    """
    lo, hi = sorted(float(s) for s in span)
    s0, d0 = float(start[0]), float(start[1])
    if s0 not in (lo, hi):
        raise DomainError("start must sit at one end of the span")
    if chart == "dresner" and lo < 0:
        raise DomainError("Dresner chart needs tau >= 0")
    f, den = _generic_system(chart, p)
    if den(s0, d0) == 0:
        raise SingularityError(f"start {start} lies on the singular locus", location=s0)

    def rhs(s, d):
        return [f(s, d[0])]

    def singular(s, d):
        return den(s, d[0])
    singular.terminal = True

    end = hi if s0 == lo else lo
    sol = solve_ivp(rhs, (s0, end), [d0], method="DOP853", rtol=tol,
                    atol=tol * 1e-3, events=singular, dense_output=True)
    if sol.status < 0:
        raise RuntimeError(f"integration failed: {sol.message}")
    outcome = Outcome("completed")
    if sol.t_events[0].size:
        outcome = Outcome("hit_singularity", float(sol.t_events[0][0]))
    s, d = sol.t, sol.y[0]
    keep = np.concatenate([[True], np.abs(np.diff(s)) > 0])
    s, d = s[keep], d[keep]
    if end < s0:
        s, d = s[::-1], d[::-1]

    def interpolant(x):
        out = sol.sol(x)[0]
        return out if np.ndim(out) else float(out)

    return ReducedSolution(chart, s, d, f"{chart}({s0:.17g})={d0:.17g}",
                           outcome, interpolant)


def chart_path(table, chart):
    """Map a direct solution through a chart into (independent, dependent).

    Coppel and Milne use v as the independent variable; Dresner uses tau and
    Majorana t.  Raises DomainError if the independent variable is not
    monotone along the table.
    """
    x, y, yp = table.emden_fowler()
    vals = chart_values(chart, x, y, yp, table.params.p)
    if chart in ("coppel", "milne"):
        indep, dep = vals.v, vals.u
    else:
        indep, dep = vals[0], vals[1]
    step = np.diff(indep)
    if np.all(step < 0):
        indep, dep = indep[::-1], dep[::-1]
    elif not np.all(step > 0):
        raise DomainError(f"{chart} independent variable is not monotone here")
    return ReducedSolution(chart, indep, dep, "mapped from direct solution")


def _richardson_log_derivative(f, x, h):
    """x * df/dx by central differences at h and h/2, Richardson-combined."""
    def central(step):
        return (f(x + step) - f(x - step)) / (2.0 * step)
    return x * (4.0 * central(h / 2) - central(h)) / 3.0


def derivative_identities(table, chart, x=None, rel_step=1e-3):
    """
    Finite-difference x d/dx of both chart coordinates next to the closed
    forms the equation predicts for them.

    Parameters
    ----------
    table : SolutionTable
    chart : {"coppel", "milne", "dresner", "majorana"}
    x : array_like, optional
        Evaluation points; defaults to the interior stored samples.
    rel_step : float
        Difference step as a fraction of x (clipped to the stored range).

    Returns
    -------
    dict
        coordinate name -> (finite_difference, closed_form) arrays.
    """
    p = table.params.p
    x = table.x[1:-1] if x is None else np.asarray(x, dtype=float)
    lo, hi = table.x[0], table.x[-1]
    h = np.minimum.reduce([rel_step * x, 0.5 * (x - lo), 0.5 * (hi - x)])

    def coords(xx):
        _, y, yp = table.emden_fowler(xx)
        return chart_values(chart, xx, y, yp, p)

    first = _richardson_log_derivative(lambda xx: coords(xx)[0], x, h)
    second = _richardson_log_derivative(lambda xx: coords(xx)[1], x, h)
    c = coords(x)
    if chart == "coppel":
        u, v = c
        return {"u": (first, (2.0 - p) * u + p * u * v - u * u),
                "v": (second, v + u * v - v * v)}
    if chart == "milne":
        u, v = c
        return {"u": (first, u * (3.0 + p * v - u)),
                "v": (second, v * (u - v - 1.0))}
    if chart == "dresner":
        tau, s = c
        return {"tau": (first, 3.0 * tau + s),
                "s": (second, 4.0 * s + tau ** 1.5)}
    consts = MajoranaConstants.canonical()
    t, u = c
    return {"t": (first, 0.5 * t * (1.0 + consts.t2u_coeff * t * t * u)),
            "u": (second, consts.b * t / consts.a * (1.0 - consts.tu2_coeff * t * u * u))}
