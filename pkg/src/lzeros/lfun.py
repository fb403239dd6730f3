"""L(s, chi) evaluation, functional-equation data, and critical-line zeros.

Evaluation route: L(s, chi) = q^{-s} sum_{a mod q} chi(a) zeta(s, a/q),
with the Hurwitz zeta from the Euler-Maclaurin kernel (compiled when
available). For a fixed modulus and height grid, zeta(1/2 + it, a/q) is
computed once per residue a and shared across every character mod q
(HurwitzGrid); that sharing divides the dominant cost by ~phi(q).

On the critical line the rotated function

    Z(t) = e^{i theta(t)} L(1/2 + it, chi),
    theta(t) = -angle(eps)/2 + (t/2) log(q/pi) + Im log Gamma((1/2 + kappa + it)/2)

is real: with Lambda(s,chi) = (q/pi)^{(s+kappa)/2} Gamma((s+kappa)/2) L(s,chi)
and eps = tau(chi)/(i^kappa sqrt(q)), the functional equation
Lambda(s,chi) = eps Lambda(1-s, conj chi) forces conj(Z) = Z. Zeros of Z in
t are exactly the ordinates of zeros of L on the line. Zero location is a
sign-change scan on a uniform grid followed by a bracketed Illinois
(regula falsi with stale-side damping) refinement, batched over all
brackets of one character at a time.

Accuracy envelope: double precision, engineered for q <= ~200 and
|t| <= 500. Counts are validated against the two-sided main term
N(chi, T) ~ (T/pi) log(qT/(2 pi e)) with slack 2 + 2 log(qT).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special as sc

from . import kernels
from .characters import DirichletCharacter, character_group
from .errors import AccuracyError, ConfigurationError

__all__ = [
    "LFunctionData",
    "ZeroRecord",
    "ZeroScan",
    "HurwitzGrid",
    "hurwitz_zeta",
    "dirichlet_l",
    "gauss_sum",
    "lfunction_data",
    "completed_lambda",
    "fe_residual",
    "hardy_z",
    "z_values",
    "find_zeros",
    "zero_count_main_term",
]

MAX_HEIGHT = 500.0
_SIGMA_RANGE = (-5.0, 10.0)
_IMAG_RESIDUE_TOL = 1.0e-8
_BRACKET_TOL = 1.0e-10


# --------------------------------------------------------------------------
# Hurwitz zeta and L
# --------------------------------------------------------------------------

def hurwitz_zeta(s: complex, a: float, max_height: float = MAX_HEIGHT) -> complex:
    """zeta(s, a) for a in (0, 1], to ~1e-10 relative for |Im s| <= 500."""
    s = complex(s)
    if s == 1.0:
        raise ConfigurationError("zeta(s, a) has a pole at s = 1")
    if not (0.0 < a <= 1.0):
        raise ConfigurationError("shift a must lie in (0, 1]")
    if abs(s.imag) > max_height:
        raise AccuracyError(
            "|Im s| = %.1f beyond engineered height %.1f" % (abs(s.imag), max_height))
    if not (_SIGMA_RANGE[0] <= s.real <= _SIGMA_RANGE[1]):
        raise AccuracyError("Re s = %.2f outside engineered range %s"
                            % (s.real, (_SIGMA_RANGE,)))
    return kernels.hurwitz_point(s, a)


def _residue_fraction(a: int, q: int) -> float:
    """a/q as the Hurwitz shift; residue 0 mod 1 means the shift 1."""
    return a / q if a > 0 else 1.0


def dirichlet_l(s: complex, chi: DirichletCharacter) -> complex:
    """L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q); any chi, s != pole.

    At s = 1 the Hurwitz poles 1/(s-1) cancel against sum chi(a) = 0 for
    non-principal chi, leaving the finite parts -psi(a/q):
    L(1, chi) = -(1/q) sum_a chi(a) psi(a/q).
    """
    s = complex(s)
    q = chi.modulus
    grp = character_group(q)
    tab = chi.complex_table()
    if s == 1.0:
        if chi.is_principal:
            raise ConfigurationError("L(s, chi_0) has a pole at s = 1")
        total = -sum(tab[int(a)] * sc.digamma(_residue_fraction(int(a), q))
                     for a in grp.units)
        return total / q
    total = 0.0 + 0.0j
    for a in (int(x) for x in grp.units):
        total += tab[a] * hurwitz_zeta(s, _residue_fraction(a, q))
    return q ** (-s) * total


def gauss_sum(chi: DirichletCharacter) -> complex:
    """tau(chi) = sum_{a mod q} chi(a) e^{2 pi i a / q}."""
    q = chi.modulus
    grp = character_group(q)
    tab = chi.complex_table()
    units = grp.units
    return complex(np.sum(tab[units] * np.exp(2j * np.pi * units / q)))


@dataclass
class LFunctionData:
    """Functional-equation data of a primitive character."""

    character: DirichletCharacter
    parity: int          # kappa = (1 - chi(-1))/2
    gauss: complex       # tau(chi)
    root_number: complex  # eps(chi) = tau / (i^kappa sqrt q)

    @property
    def modulus(self) -> int:
        return self.character.modulus


def lfunction_data(chi: DirichletCharacter) -> LFunctionData:
    """Build and validate tau, eps, kappa for a primitive character."""
    if not chi.is_primitive:
        raise ConfigurationError(
            "lfunction_data requires a primitive character (conductor %d != %d)"
            % (chi.conductor, chi.modulus))
    q = chi.modulus
    kappa = chi.parity
    tau = gauss_sum(chi)
    if abs(abs(tau) ** 2 - q) >= 1.0e-9 * max(q, 1):
        raise AccuracyError("|tau|^2 != q for q=%d: %r" % (q, tau))
    eps = tau / (1j ** kappa * math.sqrt(q))
    if abs(abs(eps) - 1.0) >= 1.0e-10:
        raise AccuracyError("root number off the unit circle: %r" % (eps,))
    return LFunctionData(character=chi, parity=kappa, gauss=tau, root_number=eps)


def completed_lambda(s: complex, data: LFunctionData) -> complex:
    """Lambda(s, chi) = (q/pi)^{(s+kappa)/2} Gamma((s+kappa)/2) L(s, chi)."""
    s = complex(s)
    q, kappa = data.modulus, data.parity
    z = (s + kappa) / 2.0
    pref = np.exp(z * math.log(q / math.pi) + sc.loggamma(z))
    return complex(pref) * dirichlet_l(s, data.character)


def fe_residual(chi: DirichletCharacter, t: float) -> float:
    """Relative residual |Lambda(s,chi) - eps Lambda(1-s, conj chi)| at s = 1/2 + it.

    Both completed values are evaluated independently (the conjugate side
    through the conjugate character's own Dirichlet series), so this is a
    genuine two-route check of the functional equation.
    """
    data = lfunction_data(chi)
    dbar = lfunction_data(chi.conjugate())
    s = 0.5 + 1j * t
    lam = completed_lambda(s, data)
    lam_dual = completed_lambda(1.0 - s, dbar)
    denom = max(abs(lam), 1.0e-300)
    return abs(lam - data.root_number * lam_dual) / denom


# --------------------------------------------------------------------------
# critical line
# --------------------------------------------------------------------------

@dataclass
class HurwitzGrid:
    """zeta(1/2 + it, a/q) over a fixed height grid, one row per unit a.

    Built once per modulus; every character mod q reuses the same rows.
    """

    q: int
    ts: np.ndarray
    rows: dict[int, np.ndarray] = field(repr=False)

    @classmethod
    def build(cls, q: int, ts: np.ndarray) -> "HurwitzGrid":
        ts = np.ascontiguousarray(ts, dtype=np.float64)
        if ts.size and np.max(np.abs(ts)) > MAX_HEIGHT:
            raise AccuracyError("grid exceeds engineered height %.0f" % MAX_HEIGHT)
        grp = character_group(q)
        rows = {int(a): kernels.hurwitz_grid(0.5, ts, _residue_fraction(int(a), q))
                for a in grp.units}
        return cls(q=q, ts=ts, rows=rows)


def _theta(data: LFunctionData, ts: np.ndarray) -> np.ndarray:
    """Rotation phase: -angle(eps)/2 + (t/2) log(q/pi) + Im loggamma(...)."""
    q, kappa = data.modulus, data.parity
    phase = sc.loggamma((0.5 + kappa + 1j * ts) / 2.0).imag
    return (-0.5 * np.angle(data.root_number)
            + 0.5 * ts * math.log(q / math.pi) + phase)


def z_values(data: LFunctionData, ts: np.ndarray,
             grid: HurwitzGrid | None = None) -> np.ndarray:
    """Real Z(t) on a height vector; asserts the rotated imaginary residue.

    If grid is given it must be for the same modulus and exactly the same
    ts vector; otherwise fresh Hurwitz rows are computed.
    """
    ts = np.ascontiguousarray(ts, dtype=np.float64)
    chi = data.character
    q = chi.modulus
    grp = character_group(q)
    tab = chi.complex_table()
    acc = np.zeros(ts.shape[0], dtype=np.complex128)
    if grid is not None and grid.q == q and grid.ts.shape == ts.shape \
            and np.array_equal(grid.ts, ts):
        for a, row in grid.rows.items():
            acc += tab[a] * row
    else:
        for a in (int(x) for x in grp.units):
            acc += tab[a] * kernels.hurwitz_grid(0.5, ts, _residue_fraction(a, q))
    lvals = (q ** -0.5) * np.exp(-1j * ts * math.log(q)) * acc
    zc = np.exp(1j * _theta(data, ts)) * lvals
    worst = float(np.max(np.abs(zc.imag))) if ts.size else 0.0
    if worst >= _IMAG_RESIDUE_TOL:
        raise AccuracyError(
            "Z rotation left imaginary residue %.3e (q=%d)" % (worst, q))
    return zc.real


def hardy_z(t: float, data: LFunctionData,
            grid: HurwitzGrid | None = None) -> float:
    """Z(t) at a single height (zeros of Z <-> ordinates of L zeros)."""
    return float(z_values(data, np.array([float(t)]), grid)[0])


def zero_count_main_term(q: int, T: float) -> float:
    """Two-sided count main term N(chi, T) = (T/pi) log(qT/(2 pi e))."""
    if q * T <= 1.0:
        raise ConfigurationError("zero_count_main_term needs qT > 1")
    return (T / math.pi) * math.log(q * T / (2.0 * math.pi * math.e))


@dataclass
class ZeroRecord:
    """One critical-line ordinate with its final bracket half-width."""

    ordinate: float
    bracket: float
    multiplicity: int = 1


@dataclass
class ZeroScan:
    """find_zeros output: sorted records plus the completeness verdict.

    Iterates like a list of ZeroRecord. complete compares the two-sided
    count against zero_count_main_term within slack 2 + 2 log(qT).
    """

    zeros: list[ZeroRecord]
    complete: bool
    q: int
    exponents: tuple[int, ...]
    T: float
    grid_step: float
    main_term: float

    def __iter__(self):
        return iter(self.zeros)

    def __len__(self) -> int:
        return len(self.zeros)

    def __getitem__(self, i):
        return self.zeros[i]

    @property
    def ordinates(self) -> np.ndarray:
        return np.array([z.ordinate for z in self.zeros])


def _refine_brackets(evalz, lo, hi, flo, fhi) -> tuple[np.ndarray, np.ndarray]:
    """Batched Illinois refinement of sign-change brackets.

    evalz(t_vector) -> Z values. Every fourth step bisects outright, so the
    worst case is still geometric; stale-endpoint f-halving gives the usual
    superlinear behavior on simple zeros. Returns (roots, half_widths).
    """
    lo = lo.copy()
    hi = hi.copy()
    flo = flo.copy()
    fhi = fhi.copy()
    n = lo.shape[0]
    side = np.zeros(n, dtype=np.int8)
    active = np.nonzero(hi - lo > 2.0 * _BRACKET_TOL)[0]
    it = 0
    while active.size:
        it += 1
        if it > 100:
            raise AccuracyError("bracket refinement failed to converge")
        l, h = lo[active], hi[active]
        fl, fh = flo[active], fhi[active]
        w = h - l
        if it % 4 == 0:
            m = 0.5 * (l + h)
        else:
            with np.errstate(all="ignore"):
                m = h - fh * w / (fh - fl)
            bad = ~np.isfinite(m) | (m <= l + 1.0e-3 * w) | (m >= h - 1.0e-3 * w)
            m[bad] = 0.5 * (l + h)[bad]
        fm = evalz(m)

        exact = fm == 0.0
        if exact.any():
            # exact hit: collapse the bracket symmetrically around m
            idx = active[exact]
            lo[idx] = m[exact] - 0.5 * _BRACKET_TOL
            hi[idx] = m[exact] + 0.5 * _BRACKET_TOL
            flo[idx] = -1.0e-300
            fhi[idx] = 1.0e-300

        same_as_hi = (fm * fh > 0.0) & ~exact
        other = ~same_as_hi & ~exact

        idx = active[same_as_hi]
        hi[idx] = m[same_as_hi]
        fhi[idx] = fm[same_as_hi]
        stale = side[idx] == 1
        flo[idx[stale]] *= 0.5
        side[idx] = 1

        idx = active[other]
        lo[idx] = m[other]
        flo[idx] = fm[other]
        stale = side[idx] == -1
        fhi[idx[stale]] *= 0.5
        side[idx] = -1

        active = active[hi[active] - lo[active] > 2.0 * _BRACKET_TOL]
    return 0.5 * (lo + hi), 0.5 * (hi - lo)


def find_zeros(chi: DirichletCharacter, T: float, grid_step: float = 0.05,
               data: LFunctionData | None = None,
               grid: HurwitzGrid | None = None) -> ZeroScan:
    """All sign-change zeros of Z on (-T, T], bisected to bracket <= 1e-9.

    Both signs are scanned: for complex chi the ordinates are not
    symmetric (conjugate symmetry maps them to chi-bar). On completeness
    failure the grid step is halved up to 3 times before the flag is
    reported false. The scan grid is shared across characters of one
    modulus when a prebuilt HurwitzGrid is passed in.
    """
    if grid_step > 0.1 or grid_step <= 0.0:
        raise ConfigurationError("grid_step must lie in (0, 0.1]")
    if T < 0.0:
        raise ConfigurationError("T must be nonnegative")
    if T > MAX_HEIGHT:
        raise AccuracyError("T beyond engineered height %.0f" % MAX_HEIGHT)
    if data is None:
        data = lfunction_data(chi)
    q = chi.modulus

    if T == 0.0:
        return ZeroScan([], True, q, chi.exponents, T, grid_step, 0.0)

    main = zero_count_main_term(q, T) if q * T > 1.0 else 0.0
    slack = 2.0 + 2.0 * math.log(max(q * T, math.e))

    step = grid_step
    records: list[ZeroRecord] = []
    complete = False
    for attempt in range(4):
        n = max(2, int(math.ceil(2.0 * T / step)))
        ts = np.linspace(-T, T, n + 1)
        use_grid = grid if (attempt == 0 and grid is not None) else None
        if use_grid is not None and not (use_grid.q == q
                                         and use_grid.ts.shape == ts.shape
                                         and np.allclose(use_grid.ts, ts)):
            use_grid = None
        zv = z_values(data, ts, grid=use_grid) if use_grid is None \
            else z_values(data, use_grid.ts, grid=use_grid)

        neg = np.signbit(zv)
        flips = np.nonzero(neg[:-1] != neg[1:])[0]
        lo, hi = ts[flips], ts[flips + 1]
        flo, fhi = zv[flips], zv[flips + 1]

        if lo.size:
            roots, halfw = _refine_brackets(
                lambda m: z_values(data, m), lo, hi, flo, fhi)
            order = np.argsort(roots)
            records = [ZeroRecord(float(roots[i]), float(halfw[i]))
                       for i in order]
        else:
            records = []

        complete = abs(len(records) - max(main, 0.0)) <= slack
        if complete:
            break
        step *= 0.5
    return ZeroScan(records, complete, q, chi.exponents, T, step, main)
