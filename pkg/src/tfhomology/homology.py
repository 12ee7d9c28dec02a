"""
Homology transformations and homology-invariant charts.

Under x -> lam*x, y -> lam**(-q) * y with q = (3-p)/(p-1), solutions of
y'' = x**(1-p) y**p map to solutions.  Each chart below sends a sample
(x, y, y') to a pair of quantities that do not change under that scaling:

    Coppel    v = x y'/y,               u = x**(2-p) y**p / y'
    Milne     v = x theta'/theta,       u = x theta**p / theta',  theta = y/x
    Dresner   tau = x**3 y,             s = x**4 y'               (p = 3/2)
    Majorana  t = a x**(1/2) y**(1/6),  u = b y**(-4/3) y'        (p = 3/2)

All chart functions accept scalars or numpy arrays.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, SingularityError

#: Relative tolerance required of the solved chart constants.
CONSTANT_TOL = 1e-14


def homology_exponent(p):
    """Exponent q = (3-p)/(p-1) of the scaling y -> lam**(-q) y."""
    if p == 1:
        raise DomainError("homology exponent q = (3-p)/(p-1) is singular at p = 1")
    return (3.0 - p) / (p - 1.0)


@dataclass(frozen=True)
class HomologyMap:
    """The scaling x -> lam*x, y -> lam**(-q) y acting on samples."""

    lam: float
    q: float

    def __post_init__(self):
        if not self.lam > 0:
            raise DomainError(f"scale factor must be positive, got {self.lam}")

    @classmethod
    def for_exponent(cls, lam, p):
        return cls(lam, homology_exponent(p))

    def apply(self, x, y, yp):
        """
        Image of a solution sample.

        If y(x) solves the equation so does Y(X) = lam**(-q) y(X/lam); the
        sample (x, y(x), y'(x)) lands on (lam x, Y(lam x), Y'(lam x)).
        """
        lam, q = self.lam, self.q
        return lam * x, lam ** -q * y, lam ** (-q - 1.0) * yp

    def compose(self, other):
        """Map equal to applying ``other`` and then ``self``."""
        if other.q != self.q:
            raise DomainError("cannot compose homology maps with different q")
        return HomologyMap(self.lam * other.lam, self.q)

    def initial_value(self, y0):
        """y(0) of the image of a solution with y(0) = y0."""
        return self.lam ** -self.q * y0


def apply_homology(point, hmap):
    """Apply ``hmap`` to a point (x, y, y')."""
    x, y, yp = point
    if np.any(np.asarray(x) <= 0):
        raise DomainError("homology acts on samples with x > 0")
    return hmap.apply(x, y, yp)


class CoppelUV(NamedTuple):
    u: float
    v: float


class MilneUV(NamedTuple):
    u: float
    v: float


class DresnerTauS(NamedTuple):
    tau: float
    s: float


class MajoranaTU(NamedTuple):
    t: float
    u: float


ChartPoint = (CoppelUV, MilneUV, DresnerTauS, MajoranaTU)


@dataclass(frozen=True)
class MajoranaConstants:
    """Constants a, b of the chart t = a x**(1/2) y**(1/6), u = b y**(-4/3) y'."""

    a: float
    b: float

    @classmethod
    def canonical(cls):
        return solve_majorana_constants()

    @property
    def tu2_coeff(self):
        """Coefficient 4/(3 a b**2) of t u**2 in the reduced equation."""
        return 4.0 / (3.0 * self.a * self.b ** 2)

    @property
    def t2u_coeff(self):
        """Coefficient 1/(3 a**2 b) of t**2 u in the reduced equation."""
        return 1.0 / (3.0 * self.a ** 2 * self.b)


@dataclass(frozen=True)
class DresnerConstants:
    """Substitution tau = A t**n, s = B t**m u."""

    A: float
    B: float
    n: int
    m: int

    @classmethod
    def canonical(cls):
        return solve_dresner_constants()


def _check(name, value, target):
    if abs(value - target) > CONSTANT_TOL * abs(target):
        raise ArithmeticError(f"{name} = {value!r}, expected {target}")


def solve_majorana_constants(tu2=1.0, t2u=-1.0):
    """
    Chart constants making 4/(3ab^2) = tu2 and 1/(3a^2 b) = t2u.

    The second condition gives b = 1/(3 a^2 t2u); substituting into the
    first leaves 12 t2u^2 a^3 = tu2.  The defaults give a = 12**(-1/3) and
    b = -4a, for which t runs over [0, 1] on the Thomas-Fermi solution.
    ``tu2=-1, t2u=1`` is the mirror choice with t <= 0.
    """
    if tu2 == 0 or t2u == 0:
        raise DomainError("both coefficients must be non-zero")
    a = float(np.cbrt(tu2 / (12.0 * t2u ** 2)))
    b = 1.0 / (3.0 * a * a * t2u)
    consts = MajoranaConstants(a, b)
    _check("4/(3ab^2)", consts.tu2_coeff, tu2)
    _check("1/(3a^2b)", consts.t2u_coeff, t2u)
    return consts


def solve_dresner_constants(tu2=1.0, t2u=-1.0):
    """
    Exponents and constants of tau = A t**n, s = B t**m u.

    n is the smallest even integer with 4n - 3m = 0 for integer m, which
    keeps s**3/tau**4 free of t; this gives (n, m) = (6, 8).  A and B then
    solve 4B^2/(3A^(5/2)) = tu2 and B/(3A) = t2u, i.e. B = 3 t2u A and
    A = (12 t2u^2 / tu2)**2.
    """
    if tu2 <= 0 or t2u == 0:
        raise DomainError("need tu2 > 0 and t2u != 0 for a real A")
    n = 2
    while (4 * n) % 3:
        n += 2
    m = 4 * n // 3
    A = (12.0 * t2u ** 2 / tu2) ** 2
    B = 3.0 * t2u * A
    _check("4B^2/(3A^(5/2))", 4.0 * B ** 2 / (3.0 * A ** 2.5), tu2)
    _check("B/(3A)", B / (3.0 * A), t2u)
    return DresnerConstants(A, B, n, m)


def _nonzero(name, value):
    value = np.asarray(value, dtype=float)
    if np.any(value == 0):
        raise SingularityError(f"{name} vanishes")


def _power(base, p, name):
    base = np.asarray(base, dtype=float)
    if not float(p).is_integer() and np.any(base < 0):
        raise DomainError(f"{name} must be non-negative for non-integer p={p}")
    return base ** p


def _positive_x(x):
    if np.any(np.asarray(x) <= 0):
        raise DomainError("charts are defined for x > 0")


def _general_p(p):
    if p == 1:
        raise DomainError("p = 1 has no homology exponent (q singular)")


def to_coppel(x, y, yp, p):
    """Coppel variables v = x y'/y, u = x**(2-p) y**p / y'."""
    _positive_x(x)
    _general_p(p)
    _nonzero("y", y)
    _nonzero("y'", yp)
    v = x * yp / y
    u = x ** (2.0 - p) * _power(y, p, "y") / yp
    return CoppelUV(u, v)


def to_milne(x, y, yp, p):
    """Milne variables of theta = y/x: v = x theta'/theta, u = x theta**p/theta'."""
    _positive_x(x)
    _general_p(p)
    theta = y / x
    dtheta = (yp * x - y) / x ** 2
    _nonzero("theta", theta)
    _nonzero("theta'", dtheta)
    v = x * dtheta / theta
    u = x * _power(theta, p, "theta") / dtheta
    return MilneUV(u, v)


def to_dresner(x, y, yp):
    """Dresner variables tau = x**3 y, s = x**4 y' (Thomas-Fermi only)."""
    _positive_x(x)
    return DresnerTauS(x ** 3 * y, x ** 4 * yp)


def to_majorana(x, y, yp, consts=None):
    """Majorana variables t = a x**(1/2) y**(1/6), u = b y**(-4/3) y'."""
    consts = MajoranaConstants.canonical() if consts is None else consts
    _positive_x(x)
    if np.any(np.asarray(y) <= 0):
        raise DomainError("Majorana chart needs y > 0")
    t = consts.a * np.sqrt(x) * y ** (1.0 / 6.0)
    u = consts.b * y ** (-4.0 / 3.0) * yp
    return MajoranaTU(t, u)


def majorana_slope(y, u, consts=None):
    """Invert the u coordinate: y' = u y**(4/3) / b."""
    consts = MajoranaConstants.canonical() if consts is None else consts
    return u * np.asarray(y, dtype=float) ** (4.0 / 3.0) / consts.b


def dresner_to_majorana(tau, s, consts=None):
    """(tau, s) -> (t, u) through tau = A t**n, s = B t**m u."""
    consts = DresnerConstants.canonical() if consts is None else consts
    tau = np.asarray(tau, dtype=float)
    if np.any(tau / consts.A < 0):
        raise DomainError("tau/A must be non-negative")
    _nonzero("tau", tau)
    t = (tau / consts.A) ** (1.0 / consts.n)
    u = s / (consts.B * t ** consts.m)
    return MajoranaTU(t, u)


def majorana_to_dresner(t, u, consts=None):
    """(t, u) -> (tau, s) = (A t**n, B t**m u)."""
    consts = DresnerConstants.canonical() if consts is None else consts
    t = np.asarray(t, dtype=float)
    return DresnerTauS(consts.A * t ** consts.n, consts.B * t ** consts.m * u)


CHARTS = ("coppel", "milne", "dresner", "majorana")


def chart_values(chart, x, y, yp, p):
    """Evaluate a chart by name; Dresner and Majorana require p = 3/2."""
    if chart == "coppel":
        return to_coppel(x, y, yp, p)
    if chart == "milne":
        return to_milne(x, y, yp, p)
    if chart in ("dresner", "majorana") and p != 1.5:
        raise DomainError(f"{chart} chart is specific to p = 3/2, got p={p}")
    if chart == "dresner":
        return to_dresner(x, y, yp)
    if chart == "majorana":
        return to_majorana(x, y, yp)
    raise DomainError(f"unknown chart {chart!r}")
