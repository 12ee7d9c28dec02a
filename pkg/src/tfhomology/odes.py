"""
Direct integration of the Emden-Fowler equation y'' = x**(1-p) * y**p and
of its Lane-Emden form theta'' + 2 theta'/x = theta**p (theta = y/x).

The Thomas-Fermi equation is the case p = 3/2 with y(0) = 1.  Its right-hand
side behaves like x**(-1/2) at the origin, so integration starts from a
truncated series a short distance away from x = 0.  The physical (decaying)
solution is located by bisection on the initial slope.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicHermiteSpline

from .errors import BracketError, DomainError
from .homology import homology_exponent

TF_P = 1.5

#: Integration start for the Thomas-Fermi series.
TF_X0 = 1e-6
#: Integration start for the Lane-Emden series.
LE_X0 = 1e-4
#: Blow-up threshold used to classify a run as diverged.
DIVERGENCE_CAP = 1e6

TERMINATIONS = ("reached_x_max", "crossed_zero", "diverged", "turned")


@dataclass(frozen=True)
class EquationParams:
    """Exponent of the Emden-Fowler equation."""

    p: float

    @property
    def q(self) -> float:
        """Homology exponent (3-p)/(p-1); raises DomainError at p = 1."""
        return homology_exponent(self.p)

    @property
    def is_thomas_fermi(self) -> bool:
        return self.p == TF_P


@dataclass(frozen=True)
class Termination:
    """Why an integration stopped, and where.

    ``reason`` is one of ``reached_x_max``, ``crossed_zero`` (y hit 0),
    ``diverged`` (y exceeded the cap) or ``turned`` (y' changed sign from
    negative to positive with y > 0, which for y'' > 0 guarantees
    unbounded growth).
    """

    reason: str
    x: float

    def __str__(self):
        if self.reason == "reached_x_max":
            return self.reason
        return f"{self.reason}({self.x:.17g})"


@dataclass(frozen=True)
class SolutionTable:
    """Samples (x, y, y') of a direct integration.

    In ``form == "lane_emden"`` the ``y`` and ``yp`` columns hold theta and
    theta'; :meth:`emden_fowler` converts to the y = x*theta variable.
    """

    x: np.ndarray
    y: np.ndarray
    yp: np.ndarray
    params: EquationParams
    slope0: float
    termination: Termination
    form: str = "emden_fowler"
    y0: float = 1.0
    dense: Optional[Callable] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        for name in ("x", "y", "yp"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        if self.x.ndim != 1 or not (self.x.shape == self.y.shape == self.yp.shape):
            raise ValueError("x, y, yp must be 1-d arrays of equal length")
        if np.any(np.diff(self.x) <= 0):
            raise ValueError("x must be strictly increasing")

    def __len__(self):
        return self.x.size

    @property
    def samples(self):
        return np.column_stack([self.x, self.y, self.yp])

    def __call__(self, x):
        """Dependent variable and its derivative at arbitrary abscissae.

        Uses the integrator's dense output when available and otherwise a
        cubic Hermite interpolant built from the stored (y, y') pairs.
        """
        x = np.asarray(x, dtype=float)
        if np.any(x < self.x[0]) or np.any(x > self.x[-1]):
            raise DomainError(
                f"evaluation outside stored range [{self.x[0]}, {self.x[-1]}]")
        if self.dense is not None:
            vals = self.dense(x)
            return vals[0], vals[1]
        spline = CubicHermiteSpline(self.x, self.y, self.yp)
        return spline(x), spline(x, 1)

    def emden_fowler(self, x=None):
        """Return (x, y, y') of the Emden-Fowler variable y."""
        if x is None:
            x, f, fp = self.x, self.y, self.yp
        else:
            x = np.asarray(x, dtype=float)
            f, fp = self(x)
        if self.form == "lane_emden":
            return x, x * f, f + x * fp
        return x, f, fp

    def rhs(self, x, f, fp):
        """Second derivative implied by the equation for this table's form."""
        p = self.params.p
        if self.form == "lane_emden":
            return _pos_pow(f, p) - 2.0 * fp / x
        return x ** (1.0 - p) * _pos_pow(f, p)


def _pos_pow(y, p):
    # non-integer powers of tiny negative overshoots near a zero crossing
    if float(p).is_integer():
        return np.asarray(y, dtype=float) ** p
    return np.maximum(y, 0.0) ** p


def ef_rhs(x, y, p):
    """
    Right-hand side x**(1-p) * y**p of the Emden-Fowler equation.

    Raises DomainError for x <= 0, or for y < 0 when p is not an integer.
    """
    if x <= 0:
        raise DomainError(f"x must be positive, got {x}")
    if y < 0 and not float(p).is_integer():
        raise DomainError(f"y must be non-negative for non-integer p={p}, got {y}")
    return x ** (1.0 - p) * y ** p


def tf_series_start(slope0, x0=TF_X0, y0=1.0):
    """
    Series solution of y'' = x**(-1/2) y**(3/2) near the origin.

    With y(0) = c and y'(0) = B,

        y = c + B x + (4/3) c**(3/2) x**(3/2) + (2/5) c**(1/2) B x**(5/2)
            + (c**2/3) x**3 + O(x**(7/2))

    obtained by substituting the ansatz and matching powers of x.  The
    neglected term is (3/70) c**(-1/2) B**2 x**(7/2), about 1e-22 at
    x0 = 1e-6 for the Thomas-Fermi slope.

    Returns
    -------
    (y, yp) : tuple of float
    """
    if x0 < 0:
        raise DomainError(f"x0 must be non-negative, got {x0}")
    if y0 <= 0:
        raise DomainError(f"y(0) must be positive, got {y0}")
    c, B = y0, slope0
    rc = np.sqrt(c)
    sx = np.sqrt(x0)
    y = c + B * x0 + (4.0 / 3.0) * c * rc * x0 * sx \
        + 0.4 * rc * B * x0 ** 2 * sx + c * c / 3.0 * x0 ** 3
    yp = B + 2.0 * c * rc * sx + rc * B * x0 * sx + c * c * x0 ** 2
    return y, yp


def lane_emden_series_start(p, x0=LE_X0, theta0=1.0):
    """
    Regular series of theta'' + 2 theta'/x = theta**p with theta(0) = c,
    theta'(0) = 0:

        theta = c + c**p x**2/6 + p c**(2p-1) x**4/120 + g x**6 + O(x**8)

    with g = (p c**(p-1) b4 + p (p-1)/2 c**(p-2) b2**2) / 42, where b2, b4
    are the x**2 and x**4 coefficients.
    """
    if theta0 <= 0:
        raise DomainError(f"theta(0) must be positive, got {theta0}")
    c = theta0
    b2 = c ** p / 6.0
    b4 = p * c ** (2 * p - 1) / 120.0
    b6 = (p * c ** (p - 1) * b4 + 0.5 * p * (p - 1) * c ** (p - 2) * b2 ** 2) / 42.0
    theta = c + b2 * x0 ** 2 + b4 * x0 ** 4 + b6 * x0 ** 6
    dtheta = 2 * b2 * x0 + 4 * b4 * x0 ** 3 + 6 * b6 * x0 ** 5
    return theta, dtheta


def integrate_direct(params, slope0=0.0, x_max=10.0, tol=1e-10, *,
                     lane_emden=False, y0=1.0, x0=None, atol=None,
                     cap=DIVERGENCE_CAP, stop_at_turning=False):
    """
    Integrate the Emden-Fowler (or Lane-Emden) equation from the origin.

    Parameters
    ----------
    params : EquationParams
    slope0 : float
        y'(0).  Only used in Emden-Fowler form, which is restricted to the
        Thomas-Fermi exponent p = 3/2.  Lane-Emden runs are regular at the
        origin and require theta'(0) = 0.
    x_max : float
        Upper end of the integration range.
    tol : float
        Relative local error tolerance of the DOP853 stepper.
    lane_emden : bool
        Integrate theta'' + 2 theta'/x = theta**p instead of the y equation.
    y0 : float
        y(0) (or theta(0) in Lane-Emden form).
    x0 : float, optional
        Series start; defaults to 1e-6 (Thomas-Fermi) or 1e-4 (Lane-Emden).
    atol : float, optional
        Absolute tolerance, default ``tol * 1e-6``.
    cap : float
        Runs with y > cap stop as ``diverged``.
    stop_at_turning : bool
        Stop as ``turned`` once y' crosses zero upward with y > 0.

    Returns
    -------
    SolutionTable
        Samples at the integrator's accepted steps.  Zero crossing and
        divergence are reported through ``termination``, not raised.
    """
    if x_max <= 0:
        raise DomainError(f"x_max must be positive, got {x_max}")
    if tol <= 0:
        raise DomainError(f"tol must be positive, got {tol}")
    p = params.p
    if lane_emden:
        if slope0 != 0:
            raise DomainError("Lane-Emden form requires theta'(0) = 0")
        x0 = LE_X0 if x0 is None else x0
        start = lane_emden_series_start(p, x0, y0)

        def rhs(x, s):
            return [s[1], _pos_pow(s[0], p) - 2.0 * s[1] / x]
    else:
        if p != TF_P:
            raise DomainError(
                f"Emden-Fowler form with a slope start needs p = 3/2, got p={p}; "
                "use the Lane-Emden form for general p")
        x0 = TF_X0 if x0 is None else x0
        start = tf_series_start(slope0, x0, y0)

        def rhs(x, s):
            return [s[1], x ** -0.5 * max(s[0], 0.0) ** 1.5]
    if x_max <= x0:
        raise DomainError(f"x_max must exceed the series start {x0}")

    def crossed(x, s):
        return s[0]
    crossed.terminal = True
    crossed.direction = -1

    def diverged(x, s):
        return s[0] - cap
    diverged.terminal = True
    diverged.direction = 1

    events = [crossed, diverged]
    if stop_at_turning:
        def turned(x, s):
            return s[1]
        turned.terminal = True
        turned.direction = 1
        events.append(turned)

    sol = solve_ivp(rhs, (x0, x_max), start, method="DOP853", rtol=tol,
                    atol=tol * 1e-6 if atol is None else atol,
                    events=events, dense_output=True)
    if sol.status < 0:
        raise RuntimeError(f"integration failed: {sol.message}")

    termination = Termination("reached_x_max", float(sol.t[-1]))
    for name, hits in zip(("crossed_zero", "diverged", "turned"), sol.t_events):
        if hits.size:
            termination = Termination(name, float(hits[0]))
            break

    x, y, yp = sol.t, sol.y[0], sol.y[1]
    # the event point can duplicate the last accepted step
    keep = np.concatenate([[True], np.diff(x) > 0])
    return SolutionTable(x[keep], y[keep], yp[keep], params, float(slope0),
                         termination,
                         form="lane_emden" if lane_emden else "emden_fowler",
                         y0=float(y0), dense=sol.sol)


def second_derivative_residual(table, rel_step=1e-2):
    """
    Relative mismatch between a finite-difference y'' and the equation's
    right-hand side at every interior stored sample.

    y'' is the central difference of the dense-output y' at steps h and
    h/2, combined by Richardson extrapolation, (4 D(h/2) - D(h)) / 3.
    Differencing y' rather than y keeps the integrator's error from being
    amplified by 1/h**2 near the series start.
    """
    x = table.x[1:-1]
    lo, hi = table.x[0], table.x[-1]
    h = np.minimum.reduce([rel_step * x, 0.5 * (x - lo), 0.5 * (hi - x)])

    def d1(step):
        _, up = table(x + step)
        _, um = table(x - step)
        return (up - um) / (2.0 * step)

    fd = (4.0 * d1(h / 2) - d1(h)) / 3.0
    f, fp = table(x)
    exact = table.rhs(x, f, fp)
    return np.abs(fd - exact) / np.maximum(np.abs(exact), np.finfo(float).tiny)


def classify_slope(slope0, *, step_tol=1e-13, x_max=1e4):
    """Run the Thomas-Fermi equation at ``slope0`` until its fate is clear."""
    table = integrate_direct(EquationParams(TF_P), slope0, x_max, step_tol,
                             stop_at_turning=True, atol=1e-300)
    return table.termination


def shoot_initial_slope(tol=1e-8, bracket=(-2.0, -1.0), *, step_tol=1e-13,
                        x_max=1e4):
    """
    Initial slope y'(0) of the decaying Thomas-Fermi solution.

    Bisection on ``bracket``: slopes below the critical value cross zero,
    slopes above it turn upward and diverge.  Stops when the bracket is no
    wider than ``tol`` or cannot be split further in floating point.

    Raises
    ------
    BracketError
        If the endpoints do not show opposite behaviour.
    """
    if tol <= 0:
        raise DomainError(f"tol must be positive, got {tol}")
    lo, hi = sorted(float(b) for b in bracket)
    fate_lo = classify_slope(lo, step_tol=step_tol, x_max=x_max).reason
    fate_hi = classify_slope(hi, step_tol=step_tol, x_max=x_max).reason
    if fate_lo != "crossed_zero" or fate_hi not in ("diverged", "turned"):
        raise BracketError(
            f"bracket [{lo}, {hi}] does not separate behaviours: "
            f"{fate_lo} at {lo}, {fate_hi} at {hi}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        fate = classify_slope(mid, step_tol=step_tol, x_max=x_max).reason
        if fate == "crossed_zero":
            lo = mid
        elif fate in ("diverged", "turned"):
            hi = mid
        else:
            # neither fate within x_max: mid is as good as the data allows
            return mid
    return 0.5 * (lo + hi)
