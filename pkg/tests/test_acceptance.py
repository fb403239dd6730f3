"""Acceptance gate: every advertised end-to-end claim at its stated
tolerance, one criterion per test, one PASS/FAIL line each on the
terminal (printed outside capture so the line shows even when the
assertion that follows it fails).

Criteria 3, 4, 6, 7 and 8 encode asymptotic or published-constant
targets that the desk-scale computation genuinely measures; where the
measured value misses the stated band the test prints FAIL and then
asserts anyway -- the gap is real data, not a defect to hide.
"""

from __future__ import annotations

import math
import random
import time

import numpy as np
import pytest
from scipy import integrate

from lzeros import constants, lfun, simplezeros, stats, testfn
from lzeros.characters import (character_group, delta_pr, delta_split,
                               mobius_flip_check,
                               primitive_orthogonality_sum)

FAMILY_Q = 25.0
FAMILY_T = 200.0


def _report(capsys, n, ok, detail):
    with capsys.disabled():
        print("\nACCEPTANCE %d: %s  (%s)" % (n, "PASS" if ok else "FAIL",
                                             detail))


# ----------------------------------------------------------------------------
# 1. exact identities
# ----------------------------------------------------------------------------


def test_acceptance_1_exact_identities(capsys, weight, tables):
    primes = [p for p in range(2, 101)
              if all(p % d for d in range(2, int(math.isqrt(p)) + 1))]

    # Primitive-orthogonality divisor identity, all q <= 50, p,r <= 100.
    # The direct route is recomputed here with one matrix product per q;
    # the library call is itself a two-route assertion.
    worst_orth = 0.0
    for q in range(1, 51):
        grp = character_group(q)
        good = [p for p in primes if math.gcd(p, q) == 1]
        if not good:
            continue
        if grp.primitive:
            M = np.stack([chi.complex_table()[[p % q for p in good]]
                          for chi in grp.primitive])
            direct = M.conj().T @ M  # direct[r_idx, p_idx]
        else:
            direct = np.zeros((len(good), len(good)), dtype=np.complex128)
        for i, p in enumerate(good):
            for j, r in enumerate(good):
                want = primitive_orthogonality_sum(q, p, r)
                worst_orth = max(worst_orth, abs(direct[j, i] - want))

    # Delta = U + L and the Moebius flip on 200 random triples.
    rng = random.Random(2024)
    worst_split = 0.0
    worst_flip = 0.0
    for _ in range(200):
        p = rng.choice(primes)
        r = rng.choice(primes)
        Q = rng.uniform(10.0, 500.0)
        C = rng.uniform(0.5, 2.0 * Q)
        d = delta_pr(p, r, Q, weight, tables=tables)
        U, L = delta_split(p, r, Q, weight, C, tables=tables)
        worst_split = max(worst_split, abs(d - (U + L)))
        lhs, rhs = mobius_flip_check(p, r, Q, C, weight, tables=tables)
        worst_flip = max(worst_flip, abs(lhs - rhs))

    ok = worst_orth < 1.0e-9 and worst_split < 1.0e-9 and worst_flip < 1.0e-9
    _report(capsys, 1, ok,
            "orthogonality %.2e, U+L %.2e, flip %.2e; all < 1e-9"
            % (worst_orth, worst_split, worst_flip))
    assert worst_orth < 1.0e-9
    assert worst_split < 1.0e-9
    assert worst_flip < 1.0e-9


# ----------------------------------------------------------------------------
# 2. L-function correctness
# ----------------------------------------------------------------------------


def test_acceptance_2_lfunctions(capsys, deep_scans):
    # Functional equation, every primitive chi with q <= 20, |t| <= 30.
    worst_fe = 0.0
    worst_tau = 0.0
    ts = [-30.0, -22.5, -15.0, -7.3, 0.0, 3.7, 11.2, 18.8, 26.2, 30.0]
    for q in range(3, 21):
        for chi in character_group(q).primitive:
            tau = lfun.gauss_sum(chi)
            worst_tau = max(worst_tau, abs(abs(tau) ** 2 - q))
            for t in ts:
                worst_fe = max(worst_fe, lfun.fe_residual(chi, t))

    # Zero counts to T = 100 against the main term, two-sided.
    T = 100.0
    count_ok = True
    worst_excess = -1.0e9
    for (q, _), scan in deep_scans.items():
        n = sum(1 for g in scan.ordinates if abs(g) <= T)
        main = lfun.zero_count_main_term(q, T)
        slack = 2.0 + 2.0 * math.log(q * T)
        excess = abs(n - main) - slack
        worst_excess = max(worst_excess, excess)
        count_ok = count_ok and excess <= 0.0

    # Riemann zeta ordinates through the modulus-1 character.
    chi1 = character_group(1).characters[0]
    got = [g for g in lfun.find_zeros(chi1, 30.0).ordinates if g > 0][:3]
    zeta_ok = all(abs(g - w) < 1.0e-3 for g, w in
                  zip(got, (14.134725, 21.022040, 25.010858)))

    ok = worst_fe < 1.0e-8 and worst_tau < 1.0e-9 and count_ok and zeta_ok
    _report(capsys, 2, ok,
            "FE %.2e < 1e-8, |tau|^2-q %.2e < 1e-9, count slack margin %+.2f, "
            "zeta ordinates %s" % (worst_fe, worst_tau, -worst_excess,
                                   "ok" if zeta_ok else "off"))
    assert worst_fe < 1.0e-8
    assert worst_tau < 1.0e-9
    assert count_ok
    assert zeta_ok


# ----------------------------------------------------------------------------
# 3. explicit formula (three displayed right-side terms)
# ----------------------------------------------------------------------------


def test_acceptance_3_explicit_formula(capsys, deep_scans, phi, tables):
    worst = 0.0
    worst_at = None
    for q in (3, 4, 5, 7, 8):
        for chi in character_group(q).primitive:
            scan = deep_scans[(q, chi.exponents)]
            for X in (2.0, 5.0, 10.0):
                res = stats.explicit_formula_terms(
                    chi, X, phi, scan, 500.0, tables)["residual"]
                if res > worst:
                    worst, worst_at = res, (q, chi.exponents, X)
    ok = worst < 0.05
    _report(capsys, 3, ok,
            "three-term residual worst %.3f at q=%d chi=%s X=%g; "
            "threshold 0.05" % (worst, worst_at[0], worst_at[1], worst_at[2]))
    assert worst < 0.05


# ----------------------------------------------------------------------------
# 4. constants
# ----------------------------------------------------------------------------


def test_acceptance_4_constants(capsys):
    oz = constants.ozluk_constant()
    oz_ok = abs(oz - 0.86883781) <= 1.0e-6

    gaps = {}
    for (a, m, s) in ((1, 1, 1.0), (3, 2, 1.0), (2, 15, 0.5)):
        lhs, rhs = constants.sum_varphi_identity_check(a, m, s, 1000000)
        gaps[(a, m, s)] = abs(lhs - rhs)
    lemma_ok = all(g <= 1.0e-4 for g in gaps.values())

    worst_k = 0.0
    for sr in (-0.1, -0.25, -0.5, -0.75, -1.0):
        for si in (0.0, 0.5):
            lhs, rhs = constants.k_minus_s_check(complex(sr, si))
            worst_k = max(worst_k, abs(lhs - rhs) / max(1.0, abs(rhs)))
    k_ok = worst_k <= 1.0e-8

    ok = oz_ok and lemma_ok and k_ok
    _report(capsys, 4, ok,
            "ozluk %.10f vs 0.86883781 (|diff| %.2e %s 1e-6); lemma gaps "
            "%.1e/%.1e/%.1e vs 1e-4; K(-s) worst %.2e vs 1e-8"
            % (oz, abs(oz - 0.86883781), "<=" if oz_ok else ">",
               gaps[(1, 1, 1.0)], gaps[(3, 2, 1.0)], gaps[(2, 15, 0.5)],
               worst_k))
    assert oz_ok, "ozluk_constant %.10f not within 1e-6 of 0.86883781" % oz
    assert lemma_ok, "lemma identity gaps %r exceed 1e-4" % gaps
    assert k_ok


# ----------------------------------------------------------------------------
# 5. test functions
# ----------------------------------------------------------------------------


def test_acceptance_5_test_functions(capsys, phi):
    worst_mellin = 0.0
    for x in np.linspace(-50.0, 50.0, 41):
        closed = phi.phi_hat(1j * float(x))
        numeric = testfn.mellin_numeric(phi, 1j * float(x))
        worst_mellin = max(worst_mellin, abs(closed - numeric))

    lhs, rhs = testfn.plancherel_check(phi)
    planch_ok = abs(lhs - 1.0 / 3.0) <= 1.0e-6 and abs(rhs - 1.0 / 3.0) <= 1.0e-6

    val, tail = testfn.phi_hat_sq_integral(phi)
    quart_ok = abs(val - 2.0 * math.pi / 3.0) <= 1.0e-8 + tail

    ok = worst_mellin < 1.0e-8 and planch_ok and quart_ok
    _report(capsys, 5, ok,
            "mellin worst %.2e < 1e-8; plancherel %.2e/%.2e off 1/3; "
            "sinc^4 integral off %.2e (tail %.1e)"
            % (worst_mellin, abs(lhs - 1.0 / 3.0), abs(rhs - 1.0 / 3.0),
               abs(val - 2.0 * math.pi / 3.0), tail))
    assert worst_mellin < 1.0e-8
    assert planch_ok
    assert quart_ok


# ----------------------------------------------------------------------------
# 6. kernel machinery
# ----------------------------------------------------------------------------


def test_acceptance_6_kernel_machinery(capsys, phi, zero_cache):
    alphas = (1.1, 1.5, 1.9, 1.999)

    worst_quad = 0.0
    for a in alphas:
        spec = simplezeros.KernelSpec(alpha=a)
        val, _ = integrate.quad(lambda b: min(abs(b), 1.0) * spec.r_tilde(b),
                                -a, a, points=[-1.0, 0.0, 1.0],
                                epsabs=1.0e-13, limit=200)
        worst_quad = max(worst_quad,
                         abs(simplezeros.kernel_integral_f(a) - val))
    quad_ok = worst_quad < 1.0e-10

    Q = 1.0e6
    worst_dev = 0.0
    worst_dev_at = None
    for a in alphas:
        target = 1.0 + 1.0 / (3.0 * a * a)
        combined = simplezeros.kernel_integral_f(a) \
            + simplezeros.phi_term_integral(a, Q, phi)
        dev = abs(combined - target) / target
        if dev > worst_dev:
            worst_dev, worst_dev_at = dev, a
    combined_ok = worst_dev <= 0.02

    cfg = stats.PairCorrConfig(Q=FAMILY_Q, alpha=2.0, T_max=FAMILY_T,
                               W=testfn.bump_weight(), Phi=phi)
    spec2 = simplezeros.KernelSpec(alpha=2.0)
    _, asym = simplezeros.simple_zero_bound(cfg, zero_cache, spec2)
    bound_ok = abs(asym.value - 11.0 / 12.0) < 1.0e-12

    ok = quad_ok and combined_ok and bound_ok
    _report(capsys, 6, ok,
            "f-integral vs quadrature %.1e < 1e-10; combined worst dev "
            "%.2f%% at alpha=%s vs 2%%; asymptotic bound at alpha=2: "
            "%.12f vs 11/12" % (worst_quad, 100.0 * worst_dev, worst_dev_at,
                                asym.value))
    assert quad_ok
    assert combined_ok, ("combined integral off %.2f%% at alpha=%s"
                         % (100.0 * worst_dev, worst_dev_at))
    assert bound_ok


# ----------------------------------------------------------------------------
# 7. desk-scale asymptotics (explicitly loose trend checks)
# ----------------------------------------------------------------------------


def test_acceptance_7_desk_scale(capsys, phi, weight, zero_cache, tables):
    t0 = time.perf_counter()

    def cfg(alpha, Q=FAMILY_Q):
        return stats.PairCorrConfig(Q=Q, alpha=alpha, T_max=FAMILY_T,
                                    W=weight, Phi=phi)

    # N_Phi(25) against (A/2pi) Q log Q int |Phi_hat|^2.
    nres = stats.n_phi(cfg(1.0), zero_cache)
    A = constants.a_constant(weight)
    sq_mass, _ = testfn.phi_hat_sq_integral(phi)
    n_main = (A / (2.0 * math.pi)) * FAMILY_Q * math.log(FAMILY_Q) * sq_mass
    n_ratio = nres.value / n_main
    n_ok = abs(n_ratio - 1.0) <= 0.30

    # F_Phi(25, alpha) against the prediction, alpha in {0.25, 0.5, 0.75}.
    f_ratios = {}
    for alpha in (0.25, 0.5, 0.75):
        c = cfg(alpha)
        fres = stats.f_phi(c, zero_cache, n_phi_result=stats.n_phi(c, zero_cache))
        pred = stats.theorem1_prediction(c)
        f_ratios[alpha] = fres.value / pred.value
    f_ok = all(abs(r - 1.0) <= 0.35 for r in f_ratios.values())

    # S_D at Q = 1e3, X = Q^0.8 against its diagonal main term
    # A Q (log X) / 3  (Sum_p a_p^2 -> (1/3) log X, Sum_q W phi*/phi -> A Q).
    big = stats.PairCorrConfig(Q=1000.0, alpha=0.8, T_max=0.0,
                               W=weight, Phi=phi)
    _, diag, _ = stats.s_decomposition(big, tables)
    sd_main = A * 1000.0 * (0.8 * math.log(1000.0)) / 3.0
    sd_ratio = diag.value / sd_main
    sd_ok = abs(sd_ratio - 1.0) <= 0.30

    # Pairing identity within its own reported budget at Q = 25.
    spec = simplezeros.KernelSpec(alpha=1.5)
    lhs, rhs, budget = simplezeros.pairing_identity_check(
        cfg(1.5), zero_cache, spec, return_budget=True)
    pair_ok = abs(lhs - rhs) <= budget

    wall = time.perf_counter() - t0
    ok = n_ok and f_ok and sd_ok and pair_ok
    _report(capsys, 7, ok,
            "N_phi ratio %.3f (band 30%%); F_phi ratios %.3f/%.3f/%.3f "
            "(band 35%%); S_D ratio %.3f (band 30%%); pairing |lhs-rhs| "
            "%.1e <= budget %.1e; wall %.0fs"
            % (n_ratio, f_ratios[0.25], f_ratios[0.5], f_ratios[0.75],
               sd_ratio, abs(lhs - rhs), budget, wall))
    assert n_ok, "N_phi ratio %.3f outside [0.7, 1.3]" % n_ratio
    assert f_ok, "F_phi ratios %r outside 35%% band" % f_ratios
    assert sd_ok, "S_D ratio %.3f outside [0.7, 1.3]" % sd_ratio
    assert pair_ok


# ----------------------------------------------------------------------------
# 8. BDH variance
# ----------------------------------------------------------------------------


def test_acceptance_8_bdh(capsys, tables):
    x, Q = 1.0e4, 1000
    res = stats.bdh_variance(x, Q, tables)
    norm = res.value / (x * Q * math.log(x))
    band_ok = 0.5 <= norm <= 1.5

    spot = stats.bdh_variance(100.0, 1, tables)
    psi100 = float(np.sum(tables.mangoldt[:101]))
    want = (psi100 - 100.0) ** 2
    spot_ok = abs(spot.value - want) < 1.0e-9

    ok = band_ok and spot_ok
    _report(capsys, 8, ok,
            "M(1e4,1e3)/(xQ log x) = %.4f vs [0.5, 1.5]; spot |M(100,1) - "
            "(psi(100)-100)^2| = %.1e" % (norm, abs(spot.value - want)))
    assert band_ok, "normalized variance %.4f outside [0.5, 1.5]" % norm
    assert spot_ok
