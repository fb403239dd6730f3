"""Tests for family statistics: explicit formula, N_Phi / F_Phi, the
character-sum decomposition S = S_D + S_N, and the variance M(x, Q).

Heavy family quantities run against the session zero cache (Q = 25,
T_max = 200); single-character explicit-formula checks use the deep
T = 500 scans where the truncation tail is far below the test tolerance.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from lzeros import stats, testfn
from lzeros.characters import character_group
from lzeros.errors import ConfigurationError, IncompleteCacheError

FAMILY_Q = 25.0
FAMILY_T = 200.0


def _chi(q, exponents):
    return [c for c in character_group(q).characters
            if c.exponents == exponents][0]


def _config(phi, alpha=1.0, Q=FAMILY_Q, T=FAMILY_T):
    return stats.PairCorrConfig(Q=Q, alpha=alpha, T_max=T,
                                W=testfn.bump_weight(), Phi=phi)


# ----------------------------------------------------------------------------
# config plumbing
# ----------------------------------------------------------------------------


def test_config_x_property(phi):
    cfg = _config(phi, alpha=0.5, Q=100.0)
    assert cfg.X == pytest.approx(10.0, rel=1.0e-12)


def test_config_guards(phi):
    w = testfn.bump_weight()
    with pytest.raises(ConfigurationError):
        stats.PairCorrConfig(Q=100.0, alpha=2.5, T_max=50.0, W=w, Phi=phi)
    with pytest.raises(ConfigurationError):
        stats.PairCorrConfig(Q=0.5, alpha=1.0, T_max=50.0, W=w, Phi=phi)
    with pytest.raises(ConfigurationError):
        stats.PairCorrConfig(Q=100.0, alpha=1.0, T_max=-1.0, W=w, Phi=phi)


def test_f_alpha_shape():
    assert stats.f_alpha(0.3) == pytest.approx(0.3)
    assert stats.f_alpha(-0.4) == pytest.approx(0.4)
    assert stats.f_alpha(1.0) == pytest.approx(1.0)
    assert stats.f_alpha(1.7) == pytest.approx(1.0)
    assert stats.f_alpha(-2.0) == pytest.approx(1.0)


# ----------------------------------------------------------------------------
# prime sums
# ----------------------------------------------------------------------------


def test_prime_sum_hand_value(phi, tables):
    # X small enough that only a handful of prime powers sit inside the
    # support (X/e^2, X e^2); reproduce the sum by hand.
    chi = _chi(4, (1,))
    X = 2.0
    got = stats.prime_sum(chi, X, phi, tables)
    want = 0.0 + 0.0j
    for n in range(2, 16):
        lam = {2: math.log(2), 3: math.log(3), 4: math.log(2),
               5: math.log(5), 7: math.log(7), 8: math.log(2),
               9: math.log(3), 11: math.log(11), 13: math.log(13)}.get(n, 0.0)
        if lam == 0.0:
            continue
        want += lam * chi.value(n) / math.sqrt(n) * phi.phi(n / X)
    assert abs(got - want) < 1.0e-12


def test_prime_sum_prime_only_gap(phi, tables):
    # Dropping prime powers changes the sum by O(1) (here: the p^2, p^3
    # terms inside the window), never by a main-term amount.
    chi = _chi(3, (1,))
    X = 50.0
    full = stats.prime_sum(chi, X, phi, tables)
    primes = stats.prime_sum(chi, X, phi, tables, prime_only=True)
    gap = abs(full - primes)
    assert 0.0 < gap < 3.0


def test_zero_tail_estimate_monotone(phi):
    # Tail bound decreases in T and increases with the power of |Phi_hat|.
    t1 = stats.zero_tail_estimate(7, 200.0, phi, power=1)
    t2 = stats.zero_tail_estimate(7, 400.0, phi, power=1)
    assert 0.0 < t2 < t1
    sq1 = stats.zero_tail_estimate(7, 200.0, phi, power=2)
    assert 0.0 < sq1 < t1


# ----------------------------------------------------------------------------
# explicit formula
# ----------------------------------------------------------------------------


@pytest.mark.parametrize("q,exps,X", [(3, (1,), 10.0), (4, (1,), 10.0),
                                      (3, (1,), 100.0), (7, (1,), 50.0)])
def test_explicit_formula_full_identity(deep_scans, phi, tables, q, exps, X):
    chi = _chi(q, exps)
    scan = deep_scans[(q, exps)]
    res = stats.explicit_formula_full_residual(chi, X, phi, scan, 500.0,
                                               tables)
    assert res < 1.0e-3


def test_explicit_formula_terms_structure(deep_scans, phi, tables):
    chi = _chi(3, (1,))
    scan = deep_scans[(3, (1,))]
    terms = stats.explicit_formula_terms(chi, X=10.0, phi=phi, zeros=scan,
                                         T_max=500.0, tables=tables)
    for key in ("zero_sum", "e_term", "prime_sum", "arch_term", "right",
                "residual", "tail_estimate"):
        assert key in terms
    # Non-principal character: no main e-term.
    assert terms["e_term"] == 0.0
    # Internal consistency of the displayed pieces.
    right = terms["e_term"] - terms["prime_sum"] + terms["arch_term"]
    assert terms["right"] == pytest.approx(right, rel=1.0e-12)
    assert terms["residual"] == pytest.approx(
        abs(terms["zero_sum"] - terms["right"]), rel=1.0e-12)
    assert terms["tail_estimate"] > 0.0
    # The three-term display omits the lower-order archimedean integral,
    # so its residual is O(1) small but not tiny; the full identity
    # (tested separately) closes to ~1e-4.
    assert terms["residual"] < 0.5


def test_zero_sum_is_real_for_real_character(deep_scans, phi):
    chi = _chi(3, (1,))
    scan = deep_scans[(3, (1,))]
    z = stats.zero_sum(chi, 10.0, phi, scan, 500.0)
    assert abs(complex(z).imag) < 1.0e-10


def test_explicit_formula_residual_envelope(phi, tables, deep_scans):
    cfg = _config(phi, alpha=0.5, Q=100.0, T=500.0)
    chi = _chi(3, (1,))
    scan = deep_scans[(3, (1,))]
    res = stats.explicit_formula_residual(chi, 10.0, cfg, scan, tables)
    assert res >= 0.0


# ----------------------------------------------------------------------------
# family statistics against the cache
# ----------------------------------------------------------------------------


def test_n_phi_positive_and_budgeted(zero_cache, phi):
    cfg = _config(phi, alpha=1.0)
    res = stats.n_phi(cfg, zero_cache)
    assert res.kind == "N_phi"
    assert res.value > 0.0
    assert res.truncation_budget >= 0.0
    assert res.wall_time >= 0.0


def test_n_phi_counts_weighted_zeros(zero_cache, phi):
    # Reproduce N_phi directly from the cached ordinates:
    # sum_q (W(q/Q)/phi(q)) sum*_chi sum_gamma |Phi_hat(i gamma)|^2.
    cfg = _config(phi, alpha=1.0)
    res = stats.n_phi(cfg, zero_cache)
    total = 0.0
    for q in stats.family_moduli(cfg.Q):
        grp = character_group(q)
        wq = cfg.W.w(q / cfg.Q) / len(grp)
        if wq == 0.0:
            continue
        for chi in grp.primitive:
            rec = zero_cache.read(q, chi.exponents, cfg.T_max)
            g = np.asarray(rec.ordinates)
            total += wq * float(np.sum(np.abs(phi.phi_hat(1j * g)) ** 2))
    assert res.value == pytest.approx(total, rel=1.0e-9)


def test_f_phi_real_and_reuses_n(zero_cache, phi):
    cfg = _config(phi, alpha=0.75)
    n = stats.n_phi(cfg, zero_cache)
    res = stats.f_phi(cfg, zero_cache, n_phi_result=n)
    res2 = stats.f_phi(cfg, zero_cache)
    assert res.kind == "F_phi"
    assert res.value == pytest.approx(res2.value, rel=1.0e-12)
    assert res.value > 0.0


def test_f_phi_alpha_zero_diagonal(zero_cache, phi):
    # At alpha = 0 the phases collapse, so F_phi equals the weighted mean
    # of |sum_gamma Phi_hat(i gamma)|^2 normalized by N_phi.
    cfg = _config(phi, alpha=0.0)
    res = stats.f_phi(cfg, zero_cache)
    n = stats.n_phi(cfg, zero_cache)
    total = 0.0
    for q in stats.family_moduli(cfg.Q):
        grp = character_group(q)
        wq = cfg.W.w(q / cfg.Q) / len(grp)
        if wq == 0.0:
            continue
        for chi in grp.primitive:
            rec = zero_cache.read(q, chi.exponents, cfg.T_max)
            g = np.asarray(rec.ordinates)
            s = complex(np.sum(phi.phi_hat(1j * g)))
            total += wq * abs(s) ** 2
    want = total / n.value
    assert res.value == pytest.approx(want, rel=1.0e-9)


def test_f_phi_conjugate_symmetry(zero_cache, phi):
    # F_Phi is even in alpha: X -> 1/X pairs with gamma -> -gamma.
    plus = stats.f_phi(_config(phi, alpha=0.5), zero_cache)
    minus = stats.f_phi(_config(phi, alpha=-0.5), zero_cache)
    assert plus.value == pytest.approx(minus.value, rel=1.0e-9)


def test_family_stat_requires_complete_cache(phi, tmp_path):
    from lzeros.cache import ZeroCache
    empty = ZeroCache(tmp_path / "empty-cache")
    cfg = _config(phi, alpha=1.0)
    with pytest.raises(IncompleteCacheError):
        stats.n_phi(cfg, empty)


def test_theorem1_prediction_formula(phi):
    # Closed form: f(alpha) + Phi(Q^{-|alpha|})^2 log Q / ((1/2pi) |Phi_hat|^2 mass),
    # with the unresolved cross term reported as a band, never asserted.
    cfg = _config(phi, alpha=0.75)
    pred = stats.theorem1_prediction(cfg)
    assert pred.kind == "prediction"
    sq, _ = stats.phi_hat_sq_integral(phi)
    pval = float(phi.phi(cfg.Q ** (-abs(cfg.alpha))))
    expected = stats.f_alpha(cfg.alpha) \
        + pval * pval * math.log(cfg.Q) / (sq / (2.0 * math.pi))
    assert pred.value == pytest.approx(expected, rel=1.0e-9)
    band = pval * math.sqrt(stats.f_alpha(cfg.alpha) * math.log(cfg.Q))
    assert pred.truncation_budget == pytest.approx(band, rel=1.0e-9)
    # Large alpha pushes Q^{-|alpha|} out of the support: pure f(alpha).
    wide = stats.theorem1_prediction(_config(phi, alpha=2.0, Q=1000.0))
    assert wide.value == pytest.approx(1.0, rel=1.0e-12)


# ----------------------------------------------------------------------------
# S = S_D + S_N
# ----------------------------------------------------------------------------


def test_s_decomposition_routes_and_split(phi, tables):
    cfg = _config(phi, alpha=0.8, Q=60.0, T=0.0)
    total, diag, off = stats.s_decomposition(cfg, tables)
    assert total.kind == "S_total"
    assert diag.kind == "S_diag"
    assert off.kind == "S_offdiag"
    assert total.value == pytest.approx(diag.value + off.value, rel=1.0e-12)
    assert diag.value > 0.0


def test_s_decomposition_small_q_oracle(phi, tables):
    # Tiny family: reproduce S directly from the definition with explicit
    # character sums over primes (independent loop order, python ints).
    cfg = _config(phi, alpha=0.9, Q=6.0, T=0.0)
    total, diag, off = stats.s_decomposition(cfg, tables)
    X = cfg.X
    lo = max(2, int(math.ceil(X * phi.support[0])))
    hi = int(math.floor(X * phi.support[1]))
    primes = [n for n in range(lo, hi + 1)
              if all(n % p for p in range(2, int(math.isqrt(n)) + 1))]
    direct = 0.0
    diag_direct = 0.0
    for q in stats.family_moduli(cfg.Q):
        wq = cfg.W.w(q / cfg.Q)
        if wq == 0.0:
            continue
        grp = character_group(q)
        for chi in grp.primitive:
            s = 0.0 + 0.0j
            for p in primes:
                if math.gcd(p, q) != 1:
                    continue
                s += math.log(p) * chi.value(p) / math.sqrt(p) * phi.phi(p / X)
            direct += wq * abs(s) ** 2 / len(grp)
        for p in primes:
            if math.gcd(p, q) == 1:
                ap = math.log(p) * phi.phi(p / X) / math.sqrt(p)
                diag_direct += wq * len(grp.primitive) * ap * ap / len(grp)
    assert total.value == pytest.approx(direct, rel=1.0e-8)
    assert diag.value == pytest.approx(diag_direct, rel=1.0e-8)


# ----------------------------------------------------------------------------
# variance M(x, Q)
# ----------------------------------------------------------------------------


def test_bdh_variance_spot(tables):
    # Hand check at x = 20, Q = 4: psi(20; q, a) from the table of
    # Lambda(n), n <= 20.
    res = stats.bdh_variance(20.0, 4, tables)
    lam = {n: 0.0 for n in range(1, 21)}
    for p in (2, 3, 5, 7, 11, 13, 17, 19):
        pk = p
        while pk <= 20:
            lam[pk] = math.log(p)
            pk *= p
    want = 0.0
    for q in (1, 2, 3, 4):
        phi_q = len([a for a in range(1, q + 1) if math.gcd(a, q) == 1])
        for a in range(1, q + 1):
            if math.gcd(a, q) != 1:
                continue
            psi = sum(l for n, l in lam.items() if n % q == a % q)
            want += (psi - 20.0 / phi_q) ** 2
    assert res.value == pytest.approx(want, rel=1.0e-12)
    assert res.kind == "M_bdh"


def test_bdh_variance_monotone_in_q(tables):
    vals = [stats.bdh_variance(100.0, Q, tables).value for Q in (5, 10, 20)]
    assert vals[0] < vals[1] < vals[2]


def test_bdh_variance_guards(tables):
    with pytest.raises(ConfigurationError):
        stats.bdh_variance(-5.0, 10, tables)
    with pytest.raises(ConfigurationError):
        stats.bdh_variance(100.0, 0, tables)


# ----------------------------------------------------------------------------
# lemma-level checks
# ----------------------------------------------------------------------------


def test_lemma23_gap_small(phi, tables):
    # The smoothed von Mangoldt count matches its main term well inside
    # the support at desk scale.
    gap = stats.lemma23_gap(1000.0, phi, tables)
    assert gap < 0.05


def test_lemma25_prime_sum_agreement(phi, tables):
    z = 0.25 + 0.0j
    s = 0.5 + 2.0j
    lhs, rhs = stats.lemma25_prime_sum(z, s, 400.0, phi, tables)
    assert abs(lhs - rhs) / max(1.0, abs(rhs)) < 0.05
