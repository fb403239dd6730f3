"""Simple-zero machinery: the Fejer kernel pair, the kernel integral
f(alpha) -> 11/12 pipeline, the pairing identity between the zero-pair
kernel sum and the beta-integral of F_Phi, and multiplicity detection.

The kernel pair at aperture alpha in (1, 2]:

    r(u)       = (sin(pi alpha u) / (pi alpha u))^2,
    r_tilde(b) = (alpha - |b|) / alpha^2   on |b| <= alpha, else 0,

so that r(u) = integral r_tilde(b) e(b u) db (Fejer). Since r(0) = 1 and
r >= 0, the Montgomery argument bounds the proportion of non-simple
zeros by the normalized pair sum, giving

    N_simple / N >= 2 - (1/N_Phi) sum* sum_{g,g'} r((g-g') logQ/2pi)
                                         Phi_hat(ig) Phi_hat(ig'),

and with the main-term evaluation f(beta) = min(|beta|, 1) the kernel
integral

    integral_{-alpha}^{alpha} f(beta) r_tilde(beta) dbeta
        = 1 + 1/(3 alpha^2) - 1/alpha      (1 < alpha < 2)

drives the asymptotic proportion 1 - 1/(3 alpha^2) -> 11/12 as
alpha -> 2.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .arith import family_moduli
from .characters import character_group
from .errors import ConfigurationError
from .lfun import ZeroRecord
from .stats import PairCorrConfig, StatResult, _cache_ordinates, _phi_hat_sq, n_phi
from .testfn import TestFunction

__all__ = [
    "KernelSpec",
    "fejer_pair",
    "kernel_integral_f",
    "phi_term_integral",
    "pairing_identity_check",
    "multiplicity_detect",
    "simple_zero_bound",
]

_RETAIN_CUTOFF = 1.0e-8   # drop zeros with |Phi_hat(i gamma)| below this


@dataclass
class KernelSpec:
    """Aperture of the Fejer pair; alpha in (1, 2]."""

    alpha: float

    def __post_init__(self) -> None:
        if not 1.0 < self.alpha <= 2.0:
            raise ConfigurationError("kernel aperture must satisfy 1 < alpha <= 2")

    def r(self, u):
        """(sin(pi alpha u) / (pi alpha u))^2, value 1 at u = 0."""
        return np.sinc(self.alpha * np.asarray(u, dtype=np.float64)) ** 2

    def r_tilde(self, b):
        """Fourier partner (alpha - |b|)/alpha^2 on [-alpha, alpha]."""
        b = np.abs(np.asarray(b, dtype=np.float64))
        return np.where(b <= self.alpha, (self.alpha - b) / self.alpha ** 2, 0.0)


def fejer_pair(u, b, spec: KernelSpec) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate both kernels of the pair at (u, b)."""
    return spec.r(u), spec.r_tilde(b)


def kernel_integral_f(alpha: float) -> float:
    """integral f(beta) r_tilde(beta) dbeta = 1 + 1/(3 alpha^2) - 1/alpha.

    The closed form holds on the branch 1 < alpha < 2 (f(beta) saturates
    at 1 inside the support but the support still reaches past 1); other
    apertures raise.
    """
    if not 1.0 < alpha < 2.0:
        raise ConfigurationError("closed form valid only for 1 < alpha < 2")
    return 1.0 + 1.0 / (3.0 * alpha * alpha) - 1.0 / alpha


def phi_term_integral(alpha: float, Q: float, phi: TestFunction) -> float:
    """Secondary kernel-weighted term from the Phi(Q^-beta)^2 log Q piece.

    (2/alpha^2) integral_0^1 Phi(Q^-beta)^2 (alpha - beta) dbeta * log Q
    normalized by (1/2pi) integral |Phi_hat|^2. Support of the integrand
    ends where Q^-beta exits the support of Phi.
    """
    if not 1.0 < alpha <= 2.0:
        raise ConfigurationError("need 1 < alpha <= 2")
    if Q < 10.0:
        raise ConfigurationError("need Q >= 10")
    logQ = math.log(Q)
    a_lo, _ = phi.support
    b_max = min(1.0, -math.log(a_lo) / logQ)

    def integrand(b):
        v = float(phi.phi(Q ** (-b)))
        return v * v * (alpha - b)

    val, err = integrate.quad(integrand, 0.0, b_max, epsabs=1e-12, epsrel=1e-11,
                              limit=200)
    if err > 1.0e-8:
        raise ConfigurationError("phi term quadrature failed to converge")
    norm = _phi_hat_sq(phi) / (2.0 * math.pi)
    return (2.0 / alpha ** 2) * val * logQ / norm


# --------------------------------------------------------------------------
# pairing identity over the zero cache
# --------------------------------------------------------------------------

def _family_zero_data(cfg: PairCorrConfig, cache):
    """[(weight, gammas, Phi_hat values)] per primitive character."""
    out = []
    for q in family_moduli(cfg.Q):
        w = cfg.W.w(q / cfg.Q)
        if w == 0.0:
            continue
        grp = character_group(q)
        wq = w / len(grp)
        for chi in grp.primitive:
            g = _cache_ordinates(cache, q, chi, cfg.T_max)
            # Phi_hat(ix) is real for the even Mellin pairs used here
            ph = np.asarray(cfg.Phi.phi_hat(1j * g)).real.astype(np.float64)
            keep = np.abs(ph) > _RETAIN_CUTOFF
            out.append((wq, g[keep], ph[keep]))
    return out


def _pair_kernel_sum(data, spec: KernelSpec, logQ: float) -> float:
    """sum over chi of w_chi sum_{g,g'} r((g-g') logQ / 2pi) ph(g) ph(g')."""
    parts = []
    for wq, g, ph in data:
        if g.size == 0:
            continue
        diff = (g[:, None] - g[None, :]) * (logQ / (2.0 * math.pi))
        kern = spec.r(diff)
        parts.append(wq * float(ph @ kern @ ph))
    return math.fsum(parts)


def _f_phi_grid(data, betas: np.ndarray, logQ: float) -> np.ndarray:
    """Unnormalized F_Phi(Q^beta) on a beta grid (vectorized per character)."""
    vals = np.zeros_like(betas)
    for wq, g, ph in data:
        if g.size == 0:
            continue
        phases = np.exp(1j * np.outer(betas * logQ, g))
        s = phases @ ph.astype(np.complex128)
        vals += wq * np.abs(s) ** 2
    return vals


def pairing_identity_check(cfg: PairCorrConfig, cache, spec: KernelSpec,
                           return_budget: bool = False):
    """Fejer pairing: the zero-pair kernel sum equals the beta integral.

    lhs = N_Phi^{-1} sum_q (W/phi) sum*_chi sum_{g,g'} r((g-g') logQ/2pi)
          Phi_hat(ig) Phi_hat(ig')
    rhs = integral_{-alpha}^{alpha} F_Phi(Q^beta) r_tilde(beta) dbeta

    An exact identity before truncation (expand r through r_tilde and
    swap sum and integral). Zeros with |Phi_hat(i gamma)| <= 1e-8 are
    dropped; the quadrature error is estimated by doubling the beta
    resolution and is included in the optional budget.
    """
    logQ = math.log(cfg.Q)
    nres = n_phi(cfg, cache)
    data = _family_zero_data(cfg, cache)

    lhs = _pair_kernel_sum(data, spec, logQ) / nres.value

    def rhs_at(npts: int) -> float:
        betas = np.linspace(-spec.alpha, spec.alpha, npts)
        integrand = _f_phi_grid(data, betas, logQ) * spec.r_tilde(betas)
        return float(integrate.simpson(integrand, x=betas)) / nres.value

    coarse, fine = rhs_at(1601), rhs_at(3201)
    quad_err = abs(fine - coarse)
    if not return_budget:
        return lhs, fine
    # truncated-tail contributions enter both sides squared in Phi_hat
    trunc = 3.0 * nres.truncation_budget / nres.value
    return lhs, fine, quad_err + trunc


# --------------------------------------------------------------------------
# multiplicities and the simple-zero proportion
# --------------------------------------------------------------------------

def multiplicity_detect(zeros, tol: float = 1.0e-6):
    """Cluster refined ordinates closer than tol into multiple zeros.

    zeros: iterable of ZeroRecord (or a ZeroScan). tol must exceed twice
    the widest bracket half-width, else refinement noise is
    indistinguishable from genuine multiplicity. Returns merged
    ZeroRecords: cluster mean as ordinate, cluster spread plus the widest
    member bracket as the new bracket, and the cluster size as
    multiplicity.
    """
    recs = sorted(zeros, key=lambda z: z.ordinate)
    if not recs:
        return []
    widest = max(z.bracket for z in recs)
    if tol < 2.0 * widest:
        raise ConfigurationError(
            "tolerance %.3g below resolution floor %.3g" % (tol, 2.0 * widest))

    out = []

    def _merge(cluster) -> None:
        mean = math.fsum(z.ordinate for z in cluster) / len(cluster)
        spread = cluster[-1].ordinate - cluster[0].ordinate
        width = max(z.bracket for z in cluster) + 0.5 * spread
        out.append(ZeroRecord(ordinate=mean, bracket=width,
                              multiplicity=len(cluster)))

    cluster = [recs[0]]
    for z in recs[1:]:
        if z.ordinate - cluster[-1].ordinate < tol:
            cluster.append(z)
        else:
            _merge(cluster)
            cluster = [z]
    _merge(cluster)
    return out


def simple_zero_bound(cfg: PairCorrConfig, cache,
                      spec: KernelSpec) -> tuple[StatResult, StatResult]:
    """(empirical, asymptotic) lower bounds on the simple-zero proportion.

    empirical  = 2 - normalized kernel pair sum over the actual zero cache
                 (Montgomery's inequality, valid at any finite Q);
    asymptotic = 1 - 1/(3 alpha^2), the large-Q limit of the same bound
                 under the F_Phi main-term evaluation (-> 11/12).

    Requires the sinc-squared pair: the bound's normalization uses
    Phi_hat(0) = 1 and r(0) = 1.
    """
    if cfg.Phi.kind != "sinc_squared":
        raise ConfigurationError("simple-zero bound requires the sinc-squared pair")
    t0 = time.perf_counter()
    logQ = math.log(cfg.Q)
    nres = n_phi(cfg, cache)
    data = _family_zero_data(cfg, cache)
    pair = _pair_kernel_sum(data, spec, logQ) / nres.value
    wall = time.perf_counter() - t0
    snap = {"Q": cfg.Q, "alpha_kernel": spec.alpha, "T_max": cfg.T_max}
    emp = StatResult(kind="simple_lower_empirical", value=2.0 - pair,
                     config=snap,
                     truncation_budget=3.0 * nres.truncation_budget / nres.value,
                     wall_time=wall)
    asym = StatResult(kind="simple_lower_asymptotic",
                      value=1.0 - 1.0 / (3.0 * spec.alpha ** 2), config=snap)
    return emp, asym
