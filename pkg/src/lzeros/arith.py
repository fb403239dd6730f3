"""Elementary number-theoretic tables: primes, Lambda, mu, phi, phi*, divisors.

Everything downstream (character groups, prime sums, the BDH variance)
consumes these tables. A single smallest-prime-factor sieve is the only
O(N) memory structure; the derived tables are filled by per-prime numpy
slice updates, so construction is O(N log log N) with small constants.

Conventions:
  - Lambda(n) is the von Mangoldt function in natural-log units, stored as
    a double. Lambda(p^k) = log p, zero elsewhere.
  - mu(n) in {-1, 0, +1}, stored as int8.
  - phi(n) = Euler totient, int64.
  - phi*(q) = sum_{cd=q} phi(d) mu(c), the number of primitive characters
    mod q. phi*(q) = 0 exactly when q = 2 (mod 4).

Tables are immutable by convention after build_tables returns; nothing in
this package writes to them, and concurrent reads are safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError

__all__ = [
    "ArithmeticTables",
    "build_tables",
    "get_tables",
    "primitive_count",
    "phi_star_table",
    "divisors",
    "family_moduli",
]


# --------------------------------------------------------------------------
# table container
# --------------------------------------------------------------------------

@dataclass
class ArithmeticTables:
    """Sieve tables for 1..limit (index 0 is a dead slot).

    Fields
    ------
    limit : int
        Largest n covered.
    smallest_prime_factor : int64[limit+1]
        spf[n] for n >= 2; spf[0] = spf[1] = 0.
    mangoldt : float64[limit+1]
        Lambda(n), natural log.
    moebius : int8[limit+1]
        mu(n); mu[0] = 0 by convention.
    totient : int64[limit+1]
        phi(n); phi[0] = 0 by convention.
    primes : int64 array
        All primes <= limit, increasing.
    """

    limit: int
    smallest_prime_factor: np.ndarray
    mangoldt: np.ndarray
    moebius: np.ndarray
    totient: np.ndarray
    primes: np.ndarray

    def __post_init__(self) -> None:
        if self.limit < 2:
            raise ConfigurationError("table limit must be >= 2")


def build_tables(N: int) -> ArithmeticTables:
    """Sieve all tables for 1..N.

    Lambda(9) = log 3, mu(30) = -1, phi(10) = 4 are asserted in the test
    suite; here we only guard the range.
    """
    N = int(N)
    if N < 2:
        raise ConfigurationError("build_tables requires N >= 2 (got %r)" % N)

    # smallest prime factor: mark from p^2 for p <= sqrt(N); every composite
    # n has spf(n) <= sqrt(n), so the unmarked survivors >= 2 are prime.
    spf = np.zeros(N + 1, dtype=np.int64)
    root = int(math.isqrt(N))
    for p in range(2, root + 1):
        if spf[p] == 0:
            seg = spf[p * p :: p]
            seg[seg == 0] = p
    unset = spf == 0
    unset[:2] = False
    spf[unset] = np.nonzero(unset)[0]

    primes = np.nonzero(spf == np.arange(N + 1, dtype=np.int64))[0]
    primes = primes[primes >= 2]  # index 0 matches trivially (spf[0] = 0)

    # totient: phi(n) = n prod_{p|n} (1 - 1/p), one integer pass per prime
    phi = np.arange(N + 1, dtype=np.int64)
    phi[0] = 0
    for p in primes:
        seg = phi[p::p]
        seg -= seg // p

    # Moebius: sign flip per prime factor, kill squares
    mu = np.ones(N + 1, dtype=np.int8)
    mu[0] = 0
    for p in primes:
        mu[p::p] *= -1
        p2 = int(p) * int(p)
        if p2 <= N:
            mu[p2::p2] = 0

    # von Mangoldt: log p exactly at prime powers
    lam = np.zeros(N + 1, dtype=np.float64)
    logs = np.log(primes.astype(np.float64))
    lam[primes] = logs
    k = 2
    while True:
        base = primes[primes <= int(N ** (1.0 / k)) + 1]
        pk = base**k
        keep = pk <= N
        if not keep.any():
            break
        lam[pk[keep]] = np.log(base[keep].astype(np.float64))
        k += 1

    return ArithmeticTables(
        limit=N,
        smallest_prime_factor=spf,
        mangoldt=lam,
        moebius=mu,
        totient=phi,
        primes=primes,
    )


# A small process-local cache so hot paths (delta sums, prime sums) do not
# rebuild sieves. Sizes are bucketed to the next power of two to encourage
# reuse; tables are read-only so sharing is safe.
_TABLES: dict[int, ArithmeticTables] = {}


def get_tables(N: int) -> ArithmeticTables:
    """Return cached tables covering at least 1..N."""
    if N < 2:
        raise ConfigurationError("get_tables requires N >= 2")
    for lim in sorted(_TABLES):
        if lim >= N:
            return _TABLES[lim]
    size = 1 << max(10, int(N - 1).bit_length())
    tab = build_tables(size)
    _TABLES[size] = tab
    # keep at most a few resident sieves
    while len(_TABLES) > 3:
        del _TABLES[min(_TABLES)]
    return tab


# --------------------------------------------------------------------------
# derived quantities
# --------------------------------------------------------------------------

def primitive_count(q: int, tables: ArithmeticTables | None = None) -> int:
    """phi*(q) = sum_{cd=q} phi(d) mu(c), the primitive-character count.

    q=1 -> 1 (the trivial character is primitive mod 1); q=4 -> 1; q=8 -> 2.
    Matches the brute-force count from the characters module (tested).
    """
    if q < 1:
        raise ConfigurationError("primitive_count requires q >= 1")
    tab = tables if tables is not None else get_tables(max(q, 2))
    if q > tab.limit:
        raise ConfigurationError("q=%d beyond table limit %d" % (q, tab.limit))
    total = 0
    for d in divisors(q):
        total += int(tab.totient[d]) * int(tab.moebius[q // d])
    return total


def phi_star_table(M: int, tables: ArithmeticTables | None = None) -> np.ndarray:
    """Vector of phi*(q) for q = 0..M (index 0 unused).

    Dirichlet convolution phi * mu accumulated by divisor: for each d <= M,
    phi*(dk) += phi(d) mu(k). O(M log M) slice updates.
    """
    tab = tables if tables is not None else get_tables(max(M, 2))
    if M > tab.limit:
        raise ConfigurationError("M=%d beyond table limit %d" % (M, tab.limit))
    out = np.zeros(M + 1, dtype=np.int64)
    for d in range(1, M + 1):
        ks = np.arange(1, M // d + 1)
        out[d * ks] += tab.totient[d] * tab.moebius[ks].astype(np.int64)
    return out


def divisors(n: int) -> list[int]:
    """Strictly increasing, complete divisor list of n (trial division).

    Desk-scale n only; O(sqrt(n)).
    """
    if n < 1:
        raise ConfigurationError("divisors requires n >= 1")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def family_moduli(Q: float) -> list[int]:
    """Moduli in the open window (Q, 2Q) that carry primitive characters.

    q = 2 (mod 4) is skipped: such moduli have no primitive characters
    (every character mod 2m with m odd is induced from modulus m).
    Requires Q > 1 so the window stays above the trivial modulus.
    """
    if Q <= 1.0:
        raise ConfigurationError("family window needs Q > 1")
    lo, hi = int(math.floor(Q)) + 1, int(math.ceil(2.0 * Q)) - 1
    return [q for q in range(lo, hi + 1) if Q < q < 2.0 * Q and q % 4 != 2]
