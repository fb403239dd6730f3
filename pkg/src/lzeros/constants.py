"""Euler products and multiplicative series: A0, A, K(s), g(s), B_s, R_s.

The products in play, all over primes p:

    A0   = prod (1 - 1/p^2 - 1/p^3)                   (= g(1), see below)
    K(s) = prod (1 + 1/((p-1) p^{s+1}))               abs. conv. Re s > -1
    g(s) = prod (1 - 1/((p-1)p^s) + 1/((p-1)p^{2s}) - 1/p^{2s+1})
                                                      abs. conv. Re s > 0

and the finite companions over p | m:

    B_s(m) = prod (1 - 1/p^{s+1}),
    R_s(m) = prod (1 + 1/((p-1) p^{s+1}))^{-1}.

They assemble into exact identities verified here numerically:

    sum_{(d,m)=1} 1/(phi(ad) d^s) = (1/phi(a)) zeta(1+s) K(s) B_s(m) R_s(a) R_s(m)
    K(-s) = zeta(2-s) prod (1 + 1/((l-1) l^{2-s}) - 1/((l-1) l^{3-2s}))
    A = W_hat(1) * A0

Truncation policy: a product prod(1 + O(p^-theta)) cut at P carries the
rigorous log-tail bound c * P^{1-theta} / (theta - 1), with the
factor-specific constant c stated per product (the sum over primes is
bounded by the sum over all integers > P). The d-series
sum 1/(d phi(d)) is summed directly, never via its Euler product, so it
stays an independent oracle against the product-based constants; its tail
beyond D is completed multiplicatively with mean value
zeta(2) zeta(3) / zeta(6) of d/phi(d).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .arith import ArithmeticTables, divisors, get_tables
from .errors import ConfigurationError

__all__ = [
    "EulerProductValue",
    "euler_product",
    "bsm_rsm",
    "sum_varphi_identity_check",
    "ozluk_series",
    "ozluk_constant",
    "a_constant",
    "k_minus_s_check",
]

# zeta(2) zeta(3) / zeta(6): the mean value of d/phi(d), used to complete
# the tail of sum 1/(d phi(d)) beyond the direct summation cutoff
_MEAN_D_OVER_PHI = 1.9435964368561106

_DEFAULT_PRIME_CUTOFF = 4_000_000
_DEFAULT_SERIES_CUTOFF = 10_000_000


@dataclass
class EulerProductValue:
    """A truncated Euler product with its rigorous log-tail bound."""

    value: complex
    truncation_prime: int
    tail_bound: float
    spec_id: str

    @property
    def real(self) -> float:
        return float(np.real(self.value))


def _primes_to(P: int, tables: ArithmeticTables | None) -> np.ndarray:
    tab = tables if tables is not None else get_tables(max(P, 2))
    if P > tab.limit:
        raise ConfigurationError("truncation prime beyond table limit")
    pr = tab.primes
    return pr[pr <= P]


def _log_product(x: np.ndarray) -> complex:
    """sum log(1 + x_p) with deterministic compensated summation."""
    if np.min(np.abs(1.0 + x)) < 1.0e-12:
        raise ConfigurationError("Euler factor vanished inside the product")
    if np.iscomplexobj(x):
        logs = np.log(1.0 + x)
        return complex(math.fsum(logs.real), math.fsum(logs.imag))
    return complex(math.fsum(np.log1p(x)))


def euler_product(spec_id: str, P: int = _DEFAULT_PRIME_CUTOFF,
                  s: complex | None = None,
                  tables: ArithmeticTables | None = None) -> EulerProductValue:
    """Truncated product for spec_id in {"A0", "K", "g"} with tail bound.

    A0 needs no s. K(s) requires Re s > -1 (factor ~ p^{-s-2}); g(s)
    requires Re s > 0 (factor ~ p^{-s-1}). The tail bound is on
    |log full - log truncated|; since every value here has modulus ~ 1 it
    doubles as an absolute value bound after multiplying by |value|, and
    tests use it directly as a relative bound.
    """
    p = _primes_to(int(P), tables).astype(np.float64)
    if spec_id == "A0":
        x = -(p ** -2.0 + p ** -3.0)
        c, theta = 2.0, 2.0
    elif spec_id == "K":
        if s is None:
            raise ConfigurationError("K(s) requires s")
        s = complex(s)
        if s.real <= -1.0:
            raise ConfigurationError("K(s) requires Re s > -1")
        x = 1.0 / ((p - 1.0) * p ** (s + 1.0))
        c, theta = 2.5, s.real + 2.0
    elif spec_id == "g":
        if s is None:
            raise ConfigurationError("g(s) requires s")
        s = complex(s)
        if s.real <= 0.0:
            raise ConfigurationError("g(s) requires Re s > 0")
        ps = p ** s
        x = -1.0 / ((p - 1.0) * ps) + 1.0 / ((p - 1.0) * ps * ps) \
            - 1.0 / (ps * ps * p)
        c, theta = 4.0, s.real + 1.0
    else:
        raise ConfigurationError("unknown Euler product %r" % (spec_id,))

    if np.isrealobj(x):
        val: complex = math.exp(_log_product(x).real)
    else:
        val = cmath.exp(_log_product(x))
    bound = c * float(P) ** (1.0 - theta) / (theta - 1.0)
    return EulerProductValue(value=val, truncation_prime=int(P),
                             tail_bound=bound, spec_id=spec_id)


def bsm_rsm(s: complex, m: int) -> tuple[complex, complex]:
    """The finite products B_s(m) and R_s(m) over p | m.

    m = 1 gives (1, 1). A vanishing factor (possible at complex s) is a
    configuration error.
    """
    if m < 1:
        raise ConfigurationError("m must be a positive integer")
    s = complex(s)
    B = R = 1.0 + 0.0j
    n = m
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            B *= 1.0 - p ** (-s - 1.0)
            rf = 1.0 + 1.0 / ((p - 1.0) * p ** (s + 1.0))
            if abs(rf) < 1.0e-12 or abs(B) < 1.0e-300:
                raise ConfigurationError("vanishing factor in B_s/R_s")
            R /= rf
        p += 1 if p == 2 else 2
    if n > 1:
        B *= 1.0 - n ** (-s - 1.0)
        rf = 1.0 + 1.0 / ((n - 1.0) * n ** (s + 1.0))
        if abs(rf) < 1.0e-12:
            raise ConfigurationError("vanishing factor in R_s")
        R /= rf
    if m == 1:
        return 1.0 + 0.0j, 1.0 + 0.0j
    return B, R


def sum_varphi_identity_check(a: int, m: int, s: complex, N: int,
                              tables: ArithmeticTables | None = None
                              ) -> tuple[complex, complex]:
    """Both sides of sum_{(d,m)=1} 1/(phi(ad) d^s) = (1/phi(a)) zeta(1+s) K(s) B_s(m) R_s(a) R_s(m).

    lhs is the direct series over d <= N (phi(ad) expanded through
    multiplicativity, phi(ad) = phi(a) phi(d) g/phi(g) with g = gcd(a,d),
    so only a sieve to N is needed); rhs is the product formula. The gap
    shrinks like the lhs truncation tail as N grows.
    """
    if math.gcd(a, m) != 1:
        raise ConfigurationError("need gcd(a, m) = 1")
    s = complex(s)
    if s.real <= 0.0:
        raise ConfigurationError("identity requires Re s > 0")
    tab = tables if tables is not None else get_tables(max(N, a, 2))
    if N > tab.limit or a > tab.limit:
        raise ConfigurationError("N or a beyond table limit")

    d = np.arange(1, N + 1, dtype=np.int64)
    keep = np.gcd(d, m) == 1
    d = d[keep]
    g = np.gcd(d, a)
    phi = tab.totient
    phi_ad = phi[a] * phi[d].astype(np.float64) * (g / phi[g].astype(np.float64))
    if s.imag == 0.0:
        weights = d.astype(np.float64) ** (-s.real)
        lhs: complex = complex(math.fsum(weights / phi_ad))
    else:
        weights = np.exp(-s * np.log(d.astype(np.float64)))
        terms = weights / phi_ad
        lhs = complex(math.fsum(terms.real), math.fsum(terms.imag))

    zeta = kernels.hurwitz_point(1.0 + s, 1.0)
    cutoff = min(_DEFAULT_PRIME_CUTOFF, tab.limit)
    K = euler_product("K", P=cutoff, s=s, tables=tab).value
    Bm, Rm = bsm_rsm(s, m)
    _, Ra = bsm_rsm(s, a)
    rhs = zeta * K * Bm * Ra * Rm / phi[a]
    return lhs, complex(rhs)


def ozluk_series(dmax: int = _DEFAULT_SERIES_CUTOFF,
                 tables: ArithmeticTables | None = None
                 ) -> tuple[float, float]:
    """sum_{d >= 1} 1/(d phi(d)) by direct summation to dmax.

    Returns (value, tail_uncertainty). The tail beyond dmax is completed
    multiplicatively: sum_{d > D} 1/(d phi(d)) ~ (zeta(2)zeta(3)/zeta(6))/D
    since d/phi(d) has that mean value; the remaining uncertainty is
    O(log D / D^2) and is reported with an empirical safety constant.
    """
    tab = tables if tables is not None else get_tables(max(dmax, 2))
    if dmax > tab.limit:
        raise ConfigurationError("dmax beyond table limit")
    d = np.arange(1, dmax + 1, dtype=np.float64)
    partial = float(np.sum(1.0 / (d * tab.totient[1:dmax + 1])))
    value = partial + _MEAN_D_OVER_PHI / dmax
    tail = 100.0 * math.log(dmax) / dmax ** 2
    return value, tail


def ozluk_constant(dmax: int = _DEFAULT_SERIES_CUTOFF,
                   prime_cutoff: int = _DEFAULT_PRIME_CUTOFF) -> float:
    """(11/12) * (sum_d 1/(d phi(d)))^{-1} * A0^{-1}, both parts converged.

    The series is summed directly (d <= dmax, multiplicative tail
    completion); A0 comes from its truncated Euler product. The two inputs
    are computed along independent routes on purpose.
    """
    tab = get_tables(max(dmax, prime_cutoff))
    series, _ = ozluk_series(dmax, tables=tab)
    a0 = euler_product("A0", prime_cutoff, tables=tab).real
    return (11.0 / 12.0) / (series * a0)


def a_constant(weight=None, prime_cutoff: int = _DEFAULT_PRIME_CUTOFF) -> float:
    """A = W_hat(1) * A0 (the zero-density constant of the family)."""
    if weight is None:
        from .testfn import bump_weight
        weight = bump_weight()
    a0 = euler_product("A0", prime_cutoff).real
    return weight.w_hat_1 * a0


def k_minus_s_check(s: complex, P: int = _DEFAULT_PRIME_CUTOFF,
                    tables: ArithmeticTables | None = None
                    ) -> tuple[complex, complex]:
    """Both sides of K(-s) = zeta(2-s) prod_l (1 + 1/((l-1)l^{2-s}) - 1/((l-1)l^{3-2s})).

    Left side: the direct K product evaluated at -s (convergent for
    Re s < 1). Right side: Euler-Maclaurin zeta times the rapidly
    convergent companion product. Grid use: Re s <= -0.1.
    """
    s = complex(s)
    if s.real >= 1.0:
        raise ConfigurationError("K(-s) requires Re s < 1")
    tab = tables if tables is not None else get_tables(max(P, 2))
    lhs = euler_product("K", P, s=-s, tables=tab).value

    p = _primes_to(int(P), tab).astype(np.float64)
    x = 1.0 / ((p - 1.0) * p ** (2.0 - s)) - 1.0 / ((p - 1.0) * p ** (3.0 - 2.0 * s))
    zeta = kernels.hurwitz_point(2.0 - s, 1.0)
    rhs = zeta * cmath.exp(_log_product(np.asarray(x, dtype=np.complex128)))
    return complex(lhs), complex(rhs)


def lemma_gaps_summary(N: int = 1_000_000) -> list[tuple[int, int, complex, float]]:
    """Convenience: |lhs - rhs| of the varphi identity on the standard triples."""
    out = []
    for (a, m, s) in [(1, 1, 1.0), (3, 2, 1.0), (2, 15, 0.5)]:
        lhs, rhs = sum_varphi_identity_check(a, m, s, N)
        out.append((a, m, complex(s), abs(lhs - rhs)))
    return out
