"""Dirichlet character groups mod q and the exact character-sum identities.

A character is stored as an integer exponent table: chi(a) = e^{2 pi i k(a)/m}
for gcd(a,q) = 1, where m is the character's order, with a sentinel -1 at
non-units. All group identities (orthogonality, the primitive-character
divisor sum, the U/L partition of Delta(p,r), the Moebius flip) are then
exact integer statements; complex values are materialized only at the final
evaluation step, so the foundational tests carry no float drift.

Construction is the standard CRT decomposition of (Z/qZ)*: one generator
per odd prime-power factor (a primitive root), the pair (-1, 3) for 2^k
with k >= 3, a single generator 3 for the factor 4, and no generator for
the factor 2. Characters are indexed deterministically by their tuple of
generator exponents in lexicographic (odometer) order, which is also the
cache identity used by the CLI.

The conductor is found by the direct minimal-induction test: the smallest
divisor d | q with chi(a) = 1 for every unit a = 1 (mod d). q is desk-scale
(<= ~10^4) throughout, so no CRT-theoretic shortcut is needed; the phi*
totals cross-check the enumeration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np

from .arith import divisors, get_tables
from .errors import ConfigurationError

__all__ = [
    "DirichletCharacter",
    "CharacterGroup",
    "character_group",
    "conductor",
    "induced_primitive",
    "primitive_orthogonality_sum",
    "delta_pr",
    "delta_pr_direct",
    "delta_split",
    "mobius_flip_check",
]


# --------------------------------------------------------------------------
# unit-group structure
# --------------------------------------------------------------------------

def _factorize(q: int) -> list[tuple[int, int]]:
    """Prime-power factorization [(p, p^k), ...] by trial division."""
    out = []
    n, p = q, 2
    while p * p <= n:
        if n % p == 0:
            pk = 1
            while n % p == 0:
                n //= p
                pk *= p
            out.append((p, pk))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, n))
    return out


def _primitive_root(p: int, pk: int) -> int:
    """A generator of (Z/p^k Z)* for odd p."""
    fact = [f for f, _ in _factorize(p - 1)]
    g = 2
    while True:
        if all(pow(g, (p - 1) // f, p) != 1 for f in fact):
            break
        g += 1
    if pk > p and pow(g, p - 1, p * p) == 1:
        g += p
    return g % pk


def _factor_generators(p: int, pk: int) -> list[tuple[int, int]]:
    """Generators [(g, order)] of (Z/pk Z)* for one prime-power factor."""
    if pk == 1 or pk == 2:
        return []
    if p == 2:
        if pk == 4:
            return [(3, 2)]
        return [(pk - 1, 2), (3, pk // 4)]  # <-1> x <3>, orders 2 and 2^{k-2}
    return [(_primitive_root(p, pk), (p - 1) * (pk // p))]


def _factor_dlogs(p: int, pk: int, gens: list[tuple[int, int]]) -> np.ndarray:
    """Discrete logs: table[len(gens), pk] with exponents, -1 at non-units.

    Only called for factors with a nontrivial unit group (gens nonempty).
    """
    table = np.full((len(gens), pk), -1, dtype=np.int64)
    if len(gens) == 1:
        g, d = gens[0]
        x = 1
        for j in range(d):
            table[0, x] = j
            x = (x * g) % pk
        return table
    (g0, d0), (g1, d1) = gens
    for e0 in range(d0):
        for e1 in range(d1):
            x = (pow(g0, e0, pk) * pow(g1, e1, pk)) % pk
            table[0, x] = e0
            table[1, x] = e1
    return table


def _crt_lift(residue: int, f: int, q: int) -> int:
    """x = residue (mod f), x = 1 (mod q/f); unique mod q."""
    other = q // f
    if other == 1:
        return residue % q
    inv = pow(other, -1, f)
    return (1 + other * ((residue - 1) * inv % f)) % q


# --------------------------------------------------------------------------
# characters
# --------------------------------------------------------------------------

@dataclass
class DirichletCharacter:
    """One character mod q as an exponent table.

    values[a] = k(a) with chi(a) = e^{2 pi i k(a)/order} for units a,
    and -1 where gcd(a, q) > 1. exponents is the generator-exponent tuple
    (the deterministic index and cache identity).
    """

    modulus: int
    order: int
    values: np.ndarray
    conductor: int
    is_primitive: bool
    is_principal: bool
    index: int
    exponents: tuple[int, ...]
    _group: "CharacterGroup" = field(repr=False, default=None)
    _complex: np.ndarray = field(repr=False, default=None)

    @property
    def char_id(self) -> tuple[int, tuple[int, ...]]:
        return (self.modulus, self.exponents)

    @property
    def parity(self) -> int:
        """kappa in {0,1}: 0 for even (chi(-1)=1), 1 for odd."""
        k = self.value_exponent(self.modulus - 1 if self.modulus > 1 else 0)
        return 0 if k == 0 else 1

    def value_exponent(self, a: int) -> int:
        """k(a) mod order, or -1 for non-units."""
        return int(self.values[a % self.modulus])

    def value(self, a: int) -> complex:
        k = self.values[a % self.modulus]
        if k < 0:
            return 0.0 + 0.0j
        return complex(np.exp(2j * np.pi * (int(k) / self.order)))

    def complex_table(self) -> np.ndarray:
        """chi(a) for a = 0..q-1 as complex128 (cached); zeros at non-units."""
        if self._complex is None:
            k = self.values
            tab = np.exp(2j * np.pi * (np.maximum(k, 0) / self.order))
            tab = np.where(k < 0, 0.0, tab)
            self._complex = tab
        return self._complex

    def conjugate(self) -> "DirichletCharacter":
        grp = self._group
        exps = tuple((-e) % d for e, d in zip(self.exponents, grp.orders))
        return grp.by_exponents(exps)

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if self.modulus != other.modulus:
            raise ConfigurationError("character product needs equal moduli")
        grp = self._group
        exps = tuple((a + b) % d for a, b, d in
                     zip(self.exponents, other.exponents, grp.orders))
        return grp.by_exponents(exps)


@dataclass
class CharacterGroup:
    """All phi(q) characters mod q with conductors precomputed."""

    modulus: int
    generators: list[tuple[int, int]]     # (CRT-lifted generator, order)
    orders: tuple[int, ...]
    characters: list[DirichletCharacter]
    units: np.ndarray
    _index: dict = field(repr=False, default=None)

    def by_exponents(self, exps: tuple[int, ...]) -> DirichletCharacter:
        return self.characters[self._index[exps]]

    @property
    def primitive(self) -> list[DirichletCharacter]:
        return [c for c in self.characters if c.is_primitive]

    def __iter__(self):
        return iter(self.characters)

    def __len__(self) -> int:
        return len(self.characters)


@lru_cache(maxsize=64)
def character_group(q: int) -> CharacterGroup:
    """Build the full character group mod q (deterministic order, cached)."""
    if q < 1:
        raise ConfigurationError("character_group requires q >= 1")

    ar = np.arange(q if q > 1 else 1, dtype=np.int64)
    units = ar[np.gcd(ar, q) == 1] if q > 1 else np.array([0], dtype=np.int64)

    factors = _factorize(q)
    gens: list[tuple[int, int]] = []     # lifted generators with orders
    dlog_rows = []                       # rows of x_i(a) over the units of q
    for p, pk in factors:
        fg = _factor_generators(p, pk)
        if not fg:
            continue
        table = _factor_dlogs(p, pk, fg)
        res = units % pk
        for i, (g, d) in enumerate(fg):
            gens.append((_crt_lift(g, pk, q), d))
            dlog_rows.append(table[i, res])
    orders = tuple(d for _, d in gens)
    r = len(gens)
    nunits = len(units)

    M = 1
    for d in orders:
        M = M * d // math.gcd(M, d)

    if r:
        X = np.vstack(dlog_rows)                          # (r, nunits)
        weights = np.array([M // d for d in orders], dtype=np.int64)
        tuples = list(product(*[range(d) for d in orders]))
        E = np.array(tuples, dtype=np.int64)              # (nchars, r)
        K = (E * weights) @ X % M                         # (nchars, nunits)
    else:
        tuples = [()]
        K = np.zeros((1, nunits), dtype=np.int64)
    nchars = K.shape[0]

    # conductor: smallest divisor d with K == 0 on all units = 1 (mod d);
    # the reduction map is onto, so triviality on its kernel is exactly
    # "factors through modulus d". (1 % d handles d = 1: every unit.)
    cond = np.zeros(nchars, dtype=np.int64)
    for d in divisors(q):
        cols = np.nonzero(units % d == 1 % d)[0]
        ok = (K[:, cols] == 0).all(axis=1)
        fresh = ok & (cond == 0)
        cond[fresh] = d

    chars: list[DirichletCharacter] = []
    for i in range(nchars):
        row = K[i]
        g = math.gcd(int(np.gcd.reduce(row)) if nunits else 0, M)
        m = M // g if g else 1
        vals = np.full(q if q > 1 else 1, -1, dtype=np.int64)
        vals[units] = row // (M // m)
        chars.append(DirichletCharacter(
            modulus=q,
            order=m,
            values=vals,
            conductor=int(cond[i]),
            is_primitive=bool(cond[i] == q),
            is_principal=bool(m == 1),
            index=i,
            exponents=tuples[i],
        ))

    grp = CharacterGroup(
        modulus=q,
        generators=gens,
        orders=orders,
        characters=chars,
        units=units,
        _index={t: i for i, t in enumerate(tuples)},
    )
    for c in chars:
        c._group = grp
    return grp


def conductor(chi: DirichletCharacter) -> int:
    """The least d | q from which chi is induced (precomputed at build)."""
    return chi.conductor


def induced_primitive(chi: DirichletCharacter) -> DirichletCharacter:
    """The primitive character mod conductor(chi) inducing chi.

    Matched by exact exponent fractions: chi*(u) must equal chi(u') for any
    unit lift u' of u, compared as k/m rationals, no floats involved.
    """
    d, q = chi.conductor, chi.modulus
    grp_d = character_group(d)
    lifts = {}
    for u in (int(x) for x in grp_d.units):
        v = u if d > 1 else 1
        while math.gcd(v, q) != 1:
            v += d
        lifts[u] = v
    for cand in grp_d.characters:
        if not cand.is_primitive:
            continue
        if all(cand.value_exponent(u) * chi.order ==
               chi.value_exponent(lifts[u]) * cand.order
               for u in lifts):
            return cand
    raise RuntimeError("no inducing primitive character found (bug)")


# --------------------------------------------------------------------------
# the section-3 identities
# --------------------------------------------------------------------------

def primitive_orthogonality_sum(q: int, p: int, r: int) -> complex:
    """sum* over primitive chi mod q of chi(p) conj(chi(r)), two ways.

    Route 1: direct summation over the primitive characters. Route 2: the
    divisor sum sum_{d | gcd(q, p-r)} phi(d) mu(q/d). Asserted to agree
    within 1e-9 absolute; the (exact) divisor-sum value is returned.
    p = r gives phi*(q) exactly.
    """
    if q < 1:
        raise ConfigurationError("q >= 1 required")
    if math.gcd(p * r, q) != 1:
        raise ConfigurationError("primitive_orthogonality_sum needs gcd(pr, q) = 1")
    tab = get_tables(max(q, 2))
    g = math.gcd(q, abs(p - r)) if p != r else q
    exact = sum(int(tab.totient[d]) * int(tab.moebius[q // d])
                for d in divisors(g) if q % d == 0)

    grp = character_group(q)
    direct = 0.0 + 0.0j
    for chi in grp.primitive:
        direct += chi.value(p) * chi.value(r).conjugate()
    if abs(direct - exact) >= 1.0e-9:
        raise AssertionError(
            "orthogonality mismatch at q=%d p=%d r=%d: %r vs %r"
            % (q, p, r, direct, exact))
    return complex(exact)


def _check_weight(W) -> None:
    lo, hi = W.support
    if not (1.0 <= lo and hi <= 2.0):
        raise ConfigurationError("weight support must lie inside (1,2)")


def delta_pr(p: int, r: int, Q: float, W, tables=None) -> float:
    """Delta(p,r) = sum_{(q,pr)=1} (W(q/Q)/phi(q)) sum*_chi chi(p) conj(chi(r)).

    Evaluated through the exact divisor form of the inner sum, so the result
    is real by construction; delta_pr_direct provides the independent
    character-sum route used in tests. Finite: q ranges over (Q, 2Q).
    """
    _check_weight(W)
    tab = tables if tables is not None else get_tables(max(int(2 * Q) + 1, 2))
    if int(2 * Q) > tab.limit:
        raise ConfigurationError("2Q exceeds table limit")
    total = 0.0
    pr = p * r
    for q in range(int(Q) + 1, int(math.ceil(2 * Q))):
        if q <= Q or math.gcd(q, pr) != 1:
            continue
        w = W.w(q / Q)
        if w == 0.0:
            continue
        g = math.gcd(q, abs(p - r)) if p != r else q
        inner = sum(int(tab.totient[d]) * int(tab.moebius[q // d])
                    for d in divisors(g) if q % d == 0)
        total += w * inner / int(tab.totient[q])
    return total


def delta_pr_direct(p: int, r: int, Q: float, W) -> float:
    """Delta(p,r) by direct primitive-character summation (test oracle)."""
    _check_weight(W)
    total = 0.0 + 0.0j
    for q in range(int(Q) + 1, int(math.ceil(2 * Q))):
        if q <= Q or math.gcd(q, p * r) != 1:
            continue
        w = W.w(q / Q)
        if w == 0.0:
            continue
        grp = character_group(q)
        inner = sum(chi.value(p) * chi.value(r).conjugate()
                    for chi in grp.primitive)
        total += w * inner / len(grp)
    assert abs(total.imag) < 1.0e-9, "Delta(p,r) acquired an imaginary part"
    return total.real


def delta_split(p: int, r: int, Q: float, W, C: float,
                tables=None) -> tuple[float, float]:
    """The (U, L) partition of Delta(p,r) at cut C.

    Writing q = cd with d | p - r (d free when p = r),

        U(p,r) = sum_{d} phi(d) sum_{c > C} mu(c) W(cd/Q)/phi(cd),
        L(p,r) = same with c <= C,

    all sums restricted to cd in (Q, 2Q) and gcd(cd, pr) = 1. U + L equals
    delta_pr(p, r) within 1e-9 for every C (asserted).
    """
    _check_weight(W)
    if C < 0:
        raise ConfigurationError("cut parameter C must be >= 0")
    tab = tables if tables is not None else get_tables(max(int(2 * Q) + 1, 2))
    pr = p * r
    hi = int(math.ceil(2 * Q))
    U = L = 0.0
    for c in range(1, hi + 1):
        mu_c = int(tab.moebius[c])
        if mu_c == 0 or math.gcd(c, pr) != 1:
            continue
        if p != r:
            dvals = [d for d in divisors(abs(p - r)) if math.gcd(d, pr) == 1]
        else:
            dvals = range(1, hi // c + 1)
        for d in dvals:
            qv = c * d
            if qv <= Q or qv >= 2 * Q:
                continue
            if p == r and math.gcd(d, pr) != 1:
                continue
            w = W.w(qv / Q)
            if w == 0.0:
                continue
            term = mu_c * int(tab.totient[d]) * w / int(tab.totient[qv])
            if c > C:
                U += term
            else:
                L += term
    full = delta_pr(p, r, Q, W, tables=tab)
    if abs(U + L - full) >= 1.0e-9:
        raise AssertionError("U + L != Delta: %r + %r vs %r" % (U, L, full))
    return U, L


def mobius_flip_check(p: int, r: int, Q: float, C: float, W,
                      tables=None) -> tuple[float, float]:
    """Both sides of the flip sum_{c>C} mu(c) W(cd/Q)/phi(cd) = -sum_{c<=C}.

    Free (c, d) with cd in (Q, 2Q) and gcd(cd, pr) = 1; the full c-sum
    vanishes because sum_{c | k} mu(c) = [k = 1] and q = 1 never lies in
    (Q, 2Q). Returns (lhs, rhs) = (c > C side, negated c <= C side).
    """
    _check_weight(W)
    tab = tables if tables is not None else get_tables(max(int(2 * Q) + 1, 2))
    pr = p * r
    hi = int(math.ceil(2 * Q))
    above = below = 0.0
    for c in range(1, hi + 1):
        mu_c = int(tab.moebius[c])
        if mu_c == 0 or math.gcd(c, pr) != 1:
            continue
        for d in range(1, hi // c + 1):
            qv = c * d
            if qv <= Q or qv >= 2 * Q or math.gcd(d, pr) != 1:
                continue
            w = W.w(qv / Q)
            if w == 0.0:
                continue
            term = mu_c * w / int(tab.totient[qv])
            if c > C:
                above += term
            else:
                below += term
    return above, -below
