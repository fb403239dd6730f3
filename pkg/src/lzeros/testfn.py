"""Test functions Phi and their Mellin transforms, plus the smooth weight W.

The central pair is the "sinc squared" function

    Phi(x) = 1/2 - |log x|/4   for e^{-2} < x < e^{2},  0 otherwise,

whose Mellin transform is the entire function

    Phi_hat(s) = integral_0^inf Phi(x) x^{s-1} dx = ((e^s - e^{-s})/(2s))^2,

so that on the critical vertical line Phi_hat(ix) = (sin x / x)^2. Phi is
not smooth (corners at 1 and e^{+-2}); the decay Phi_hat(ix) << |x|^{-2}
replaces smoothness in every truncation argument, so a TestFunction
carries an explicit decay exponent and constant instead of a smoothness
promise.

The weight W is fixed to the standard symmetric bump on (1,2),

    W(x) = exp(-1/((x-1)(2-x))),

with W_hat(1) = integral_1^2 W(x) dx = 0.00702985840660966 (quadrature).
Any smooth compactly supported weight would do; fixing one makes all
downstream numbers reproducible.

All quadrature is scipy adaptive Gauss-Kronrod with absolute tolerance
1e-12 per panel; oscillatory Mellin integrands (large |Im s|) use the
cos/sin weighted rules after the substitution x = e^u.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import integrate

from .errors import ConfigurationError, QuadratureError

__all__ = [
    "TestFunction",
    "SmoothWeight",
    "phi_sinc",
    "phi_hat_sinc",
    "w_bump",
    "w_hat",
    "mellin_numeric",
    "plancherel_check",
    "phi_hat_sq_integral",
    "sinc_squared",
    "custom_testfn",
    "bump_weight",
]

_QUAD_EPSABS = 1.0e-12
# |x| truncation of the vertical-line integrals in plancherel_check
_PLANCHEREL_CUT = 1.0e4


# --------------------------------------------------------------------------
# point evaluators
# --------------------------------------------------------------------------

def phi_sinc(x):
    """The piecewise test function: 1/2 - |log x|/4 on (e^-2, e^2), else 0.

    phi_sinc(1) = 1/2, phi_sinc(e^2) = 0, and phi_sinc(x) = phi_sinc(1/x).
    Accepts scalars or arrays; x must be positive.
    """
    arr = np.asarray(x, dtype=np.float64)
    if np.any(arr <= 0.0):
        raise ConfigurationError("phi_sinc requires x > 0")
    lx = np.abs(np.log(arr))
    out = np.where(lx < 2.0, 0.5 - 0.25 * lx, 0.0)
    return float(out) if np.isscalar(x) or arr.ndim == 0 else out


def phi_hat_sinc(s):
    """Mellin transform ((e^s - e^{-s})/(2s))^2, entire (s=0 removable).

    At s = ix this is (sin x / x)^2. Accepts complex scalars or arrays.
    """
    arr = np.asarray(s, dtype=np.complex128)
    small = np.abs(arr) < 1.0e-6
    safe = np.where(small, 1.0, arr)
    val = (np.sinh(safe) / safe) ** 2
    # sinh(s)/s = 1 + s^2/6 + O(s^4); square it for the near-origin branch
    ser = 1.0 + arr * arr / 3.0
    out = np.where(small, ser, val)
    return complex(out) if np.isscalar(s) or arr.ndim == 0 else out


def w_bump(x):
    """The fixed smooth weight: exp(-1/((x-1)(2-x))) on (1,2), 0 elsewhere."""
    arr = np.asarray(x, dtype=np.float64)
    inside = (arr > 1.0) & (arr < 2.0)
    t = np.where(inside, (arr - 1.0) * (2.0 - arr), 1.0)
    with np.errstate(over="ignore"):
        out = np.where(inside, np.exp(-1.0 / t), 0.0)
    return float(out) if np.isscalar(x) or arr.ndim == 0 else out


# --------------------------------------------------------------------------
# containers
# --------------------------------------------------------------------------

@dataclass
class TestFunction:
    """A Mellin pair (Phi, Phi_hat) with compact support and decay metadata.

    decay_exponent beta and decay_constant C promise |Phi_hat(ix)| <= C |x|^-beta;
    every zero-sum truncation budget downstream is computed from them.
    """

    kind: str
    support: tuple[float, float]
    decay_exponent: float
    decay_constant: float = 1.0
    point: Callable = field(repr=False, default=None)
    transform: Callable = field(repr=False, default=None)

    def __post_init__(self) -> None:
        a, b = self.support
        if not (0.0 < a < b):
            raise ConfigurationError("TestFunction support needs 0 < a < b")

    def phi(self, x):
        """Point value Phi(x); zero outside the support by construction."""
        return self.point(x)

    def phi_hat(self, s):
        """Transform value Phi_hat(s); numeric Mellin fallback if no closed form."""
        if self.transform is not None:
            return self.transform(s)
        return mellin_numeric(self, s)

    def value(self, x):
        return self.point(x)


@dataclass
class SmoothWeight:
    """Smooth nonnegative weight supported in (1,2) with its Mellin data."""

    support: tuple[float, float] = (1.0, 2.0)
    point: Callable = field(repr=False, default=w_bump)
    _w_hat_1: float | None = field(default=None, repr=False)

    def w(self, x):
        return self.point(x)

    def value(self, x):
        return self.point(x)

    def w_hat(self, s) -> complex:
        """W_hat(s) = integral_1^2 W(x) x^{s-1} dx by adaptive quadrature."""
        return mellin_numeric(self, s)

    @property
    def w_hat_1(self) -> float:
        """Normalization W_hat(1) = integral of W; computed once and cached."""
        if self._w_hat_1 is None:
            val = self.w_hat(1.0)
            self._w_hat_1 = float(val.real)
        return self._w_hat_1


def sinc_squared() -> TestFunction:
    """The headline test function: Phi_hat(ix) = (sin x/x)^2."""
    return TestFunction(
        kind="sinc_squared",
        support=(math.exp(-2.0), math.exp(2.0)),
        decay_exponent=2.0,
        decay_constant=1.0,
        point=phi_sinc,
        transform=phi_hat_sinc,
    )


def custom_testfn(point, support, decay_exponent, decay_constant=1.0,
                  transform=None) -> TestFunction:
    """Wrap a user-supplied compactly supported Phi as a TestFunction."""
    return TestFunction(
        kind="custom",
        support=tuple(map(float, support)),
        decay_exponent=float(decay_exponent),
        decay_constant=float(decay_constant),
        point=point,
        transform=transform,
    )


def bump_weight() -> SmoothWeight:
    """The fixed bump weight W(x) = exp(-1/((x-1)(2-x))) on (1,2)."""
    return SmoothWeight()


def w_hat(s) -> complex:
    """Module-level W_hat(s) for the fixed bump (convenience wrapper)."""
    return bump_weight().w_hat(s)


# --------------------------------------------------------------------------
# quadrature
# --------------------------------------------------------------------------

def _quad(fn, lo, hi, epsabs: float = _QUAD_EPSABS, epsrel: float = 1.0e-11,
          tol: float = 1.0e-9, **kw) -> float:
    """quad with failure detection; returns the value, raises on bad error.

    IntegrationWarnings are tolerated as long as the reported error
    estimate still clears tol (QUADPACK warns about roundoff well before
    the estimate degrades meaningfully).
    """
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(fn, lo, hi, epsabs=epsabs,
                                  epsrel=epsrel, limit=400, **kw)
    if err > tol:
        raise QuadratureError(
            "quadrature error estimate %.3e exceeds tolerance %.3e" % (err, tol))
    return val


def mellin_numeric(f, s) -> complex:
    """integral_a^b f(x) x^{s-1} dx over f's compact support.

    Substituting x = e^u turns the integrand into f(e^u) e^{u Re s} times
    e^{i u Im s}; for |Im s| > 8 the oscillation is handled with the
    weighted cos/sin quadrature rules, otherwise plain adaptive panels.
    Absolute error target 1e-10.
    """
    a, b = f.support
    point = f.value
    s = complex(s)
    sigma, t = s.real, s.imag
    lo, hi = math.log(a), math.log(b)
    if hi <= lo:
        return 0.0 + 0.0j

    def base(u):
        return point(math.exp(u)) * math.exp(sigma * u)

    if abs(t) > 8.0:
        re = _quad(base, lo, hi, weight="cos", wvar=t)
        im = _quad(base, lo, hi, weight="sin", wvar=t)
    else:
        re = _quad(lambda u: base(u) * math.cos(t * u), lo, hi)
        im = _quad(lambda u: base(u) * math.sin(t * u), lo, hi)
    return complex(re, im)


def phi_hat_sq_integral(phi: TestFunction, cut: float = _PLANCHEREL_CUT
                        ) -> tuple[float, float]:
    """integral_{-inf}^{inf} |Phi_hat(ix)|^2 dx, truncated at |x| = cut.

    Returns (value, tail_bound). The integrand is even, so we integrate
    [0, cut] and double: one adaptive panel on [0, 8], then fixed panels of
    width pi (one oscillation arch each) up to the cut. The tail beyond the
    cut is bounded by the decay promise:

        2 * integral_cut^inf (C x^-beta)^2 dx = 2 C^2 cut^{1-2beta} / (2beta - 1).

    For the sinc pair (C=1, beta=2) at cut = 1e4 the bound is 6.7e-13.
    """
    if phi.decay_exponent <= 0.5:
        raise ConfigurationError("|Phi_hat(ix)|^2 not integrable at this decay")
    tf = phi.phi_hat

    def sq(x):
        v = tf(complex(0.0, x))
        return (v * v.conjugate()).real

    pieces = [_quad(sq, 0.0, 8.0)]
    edges = np.arange(8.0, cut, math.pi)
    for k in range(len(edges)):
        hi = edges[k + 1] if k + 1 < len(edges) else cut
        pieces.append(_quad(sq, edges[k], hi))
    val = 2.0 * math.fsum(pieces)
    C, beta = phi.decay_constant, phi.decay_exponent
    tail = 2.0 * C * C * cut ** (1.0 - 2.0 * beta) / (2.0 * beta - 1.0)
    return val, tail


def plancherel_check(phi: TestFunction) -> tuple[float, float]:
    """Both sides of (1/2pi) integral |Phi_hat(ix)|^2 dx = integral Phi(e^-u)^2 du.

    The left side is truncated at |x| = 1e4 with the analytic tail bound
    added; the right side is adaptive quadrature over the support. For the
    sinc pair both sides equal 1/3.
    """
    if phi.decay_exponent < 1.5:
        raise ConfigurationError(
            "plancherel_check needs decay exponent >= 3/2 for a reliable cut")
    val, tail = phi_hat_sq_integral(phi)
    lhs = (val + tail) / (2.0 * math.pi)

    a, b = phi.support
    point = phi.value

    def sq(u):
        return point(math.exp(-u)) ** 2

    rhs = _quad(sq, -math.log(b), -math.log(a))
    return lhs, rhs
