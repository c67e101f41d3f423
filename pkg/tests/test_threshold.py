"""Tests for stratified and universal Bayes-factor thresholding."""

import numpy as np
import pytest

from nicecorr.corr import CorrMatrix, DataMatrix, ZMatrix, sample_correlation, z_matrix
from nicecorr.detect import DetectConfig, permutation_test, select_partition
from nicecorr.errors import InputError
from nicecorr.mixture import fit_mixture, weight_matrix
from nicecorr.threshold import (
    OddsPair,
    ThresholdedEstimate,
    bayes_factors,
    estimate_odds,
    fdr_for_threshold,
    magnitude_threshold,
    nice_threshold,
    odds,
    threshold_for_fdr,
    universal_bf_cutoff,
    universal_threshold,
)

P, N = 40, 50
CLIQUES = [(0, 12), (12, 20)]  # node ranges of the planted blocks


@pytest.fixture(scope="module")
def planted():
    rng = np.random.default_rng(42)
    sigma = np.eye(P)
    for lo, hi in CLIQUES:
        sigma[lo:hi, lo:hi] = 0.7
    np.fill_diagonal(sigma, 1.0)
    x = rng.multivariate_normal(np.zeros(P), sigma, size=N, method="cholesky")
    corr = sample_correlation(DataMatrix(x))
    zm = z_matrix(corr)
    fit = fit_mixture(zm.upper_values(), n=N)
    w = weight_matrix(zm, fit)
    cfg = DetectConfig(kmeans_restarts=10, perm_iters=200, seed=7)
    part = permutation_test(w, select_partition(w, cfg), cfg)
    odds_pair = estimate_odds(zm, part, fit)
    return corr, zm, fit, part, odds_pair


def test_fixture_detected_the_cliques(planted):
    _, _, _, part, _ = planted
    sig = set(part.significant_communities())
    assert tuple(range(0, 12)) in sig
    assert tuple(range(12, 20)) in sig


def test_fdr_link_worked_values():
    assert round(fdr_for_threshold(4.0, 0.1, 10.0), 2) == 0.96
    assert round(fdr_for_threshold(4.0, 40.0, 10.0), 2) == 0.06
    assert fdr_for_threshold(4.0, 1.0, 1.0) == pytest.approx(0.2, abs=1e-12)


def test_fdr_link_round_trip():
    for theta_s, theta_a in [(0.1, 10.0), (40.0, 10.0), (2.0, 2.0)]:
        q = fdr_for_threshold(4.0, theta_s, theta_a)
        assert threshold_for_fdr(q, theta_s, theta_a) == pytest.approx(4.0, rel=1e-12)


def test_universal_bf_cutoff_worked_value():
    assert universal_bf_cutoff(0.9, T=4.0, pi1=0.1) == 36.0
    assert universal_bf_cutoff(0.9, T=4.0) == pytest.approx(36.0, rel=1e-12)
    assert universal_bf_cutoff(1.0, T=4.0) == np.inf


def test_odds_helper():
    assert odds(0.5) == 1.0
    assert odds(1.0) == np.inf
    assert odds(0.0) == 0.0
    with pytest.raises(InputError):
        odds(1.5)


def test_bayes_factors_shape_and_floor(planted):
    _, zm, fit, _, _ = planted
    bf = bayes_factors(zm, fit)
    assert np.array_equal(bf, bf.T)
    assert np.array_equal(np.diag(bf), np.zeros(P))
    assert bf.min() >= 0.0
    # an off-the-chart statistic underflows f0 and forces BF = +inf
    zvals = np.zeros((4, 4))
    zvals[0, 1] = zvals[1, 0] = 50.0
    far = ZMatrix(zvals, n=N)
    assert bayes_factors(far, fit)[0, 1] == np.inf


def test_estimate_odds_orders_strata(planted):
    _, _, _, _, odds_pair = planted
    assert odds_pair.pi0_in < 0.2
    assert odds_pair.pi0_out > 0.8
    assert odds_pair.theta_in <= odds_pair.theta_all <= odds_pair.theta_out


def test_estimate_odds_degenerates_without_significance(planted):
    _, zm, fit, part, _ = planted
    from dataclasses import replace

    bare = replace(part, significant=())
    pair = estimate_odds(zm, bare, fit)
    assert pair.theta_in == pair.theta_out == pair.theta_all


def test_nice_keeps_clique_edges_drops_noise(planted):
    corr, zm, fit, part, odds_pair = planted
    est = nice_threshold(corr, zm, part, fit, odds_pair, T=4.0)
    iu = np.triu_indices(P, k=1)
    truth = np.zeros((P, P), dtype=bool)
    for lo, hi in CLIQUES:
        truth[lo:hi, lo:hi] = True
    np.fill_diagonal(truth, False)
    kept = est.edges[iu] == 1
    true_edges = truth[iu]
    # strong-signal fixture: recover nearly all clique edges, few extras
    assert kept[true_edges].mean() > 0.9
    assert kept[~true_edges].mean() < 0.1


def test_hard_threshold_preserves_surviving_values(planted):
    corr, zm, fit, part, odds_pair = planted
    est = nice_threshold(corr, zm, part, fit, odds_pair, T=4.0)
    off = ~np.eye(P, dtype=bool)
    surviving = est.r_hat.values[off] != 0
    np.testing.assert_array_equal(
        est.r_hat.values[off][surviving], corr.values[off][surviving]
    )
    assert np.array_equal(np.diag(est.r_hat.values), np.ones(P))
    assert np.array_equal((est.r_hat.values[off] != 0), est.edges[off] == 1)


def test_nice_idempotent(planted):
    corr, zm, fit, part, odds_pair = planted
    est = nice_threshold(corr, zm, part, fit, odds_pair, T=4.0)
    again = nice_threshold(est.r_hat, zm, part, fit, odds_pair, T=4.0)
    np.testing.assert_array_equal(again.r_hat.values, est.r_hat.values)
    np.testing.assert_array_equal(again.edges, est.edges)


def test_monotone_in_T(planted):
    corr, zm, fit, part, odds_pair = planted
    for rule in (
        lambda t: nice_threshold(corr, zm, part, fit, odds_pair, T=t),
        lambda t: universal_threshold(corr, zm, fit, T=t),
    ):
        prev = None
        for T in (1.0, 2.0, 4.0, 16.0):
            edges = rule(T).edges
            if prev is not None:
                assert np.all(edges <= prev)  # edge sets shrink as T grows
            prev = edges


def test_out_survival_implies_in_survival(planted):
    corr, zm, fit, part, odds_pair = planted
    assert odds_pair.theta_in <= odds_pair.theta_out
    bf = bayes_factors(zm, fit)
    out_pass = bf >= 4.0 * odds_pair.theta_out
    in_pass = bf >= 4.0 * odds_pair.theta_in
    assert np.all(in_pass[out_pass])


def test_nice_collapses_to_universal(planted):
    corr, zm, fit, part, _ = planted
    flat = OddsPair.from_pi0(fit.pi0, fit.pi0, fit.pi0)
    a = nice_threshold(corr, zm, part, fit, flat, T=4.0)
    b = universal_threshold(corr, zm, fit, T=4.0)
    np.testing.assert_array_equal(a.edges, b.edges)
    np.testing.assert_array_equal(a.r_hat.values, b.r_hat.values)


def test_huge_T_empties_the_estimate(planted):
    corr, zm, fit, part, odds_pair = planted
    est = nice_threshold(corr, zm, part, fit, odds_pair, T=1e30)
    assert est.edges.sum() == 0
    np.testing.assert_array_equal(est.r_hat.values, np.eye(P))


def test_infinite_theta_empties_stratum(planted):
    corr, zm, fit, part, _ = planted
    pair = OddsPair.from_pi0(pi0_in=1.0, pi0_out=0.5, pi0_all=0.9)
    est = nice_threshold(corr, zm, part, fit, pair, T=4.0)
    iu = np.triu_indices(P, k=1)
    inside = part.in_network_mask()[iu]
    assert est.edges[iu][inside].sum() == 0  # entire in stratum thresholded
    assert est.edges[iu][~inside].sum() > 0


def test_magnitude_threshold_rules():
    vals = np.eye(3)
    vals[0, 1] = vals[1, 0] = 0.3
    vals[0, 2] = vals[2, 0] = 0.6
    vals[1, 2] = vals[2, 1] = -0.2
    corr = CorrMatrix(vals, n=10)
    all_kept = magnitude_threshold(corr, 0.0)
    assert all_kept.edges[np.triu_indices(3, 1)].sum() == 3
    none = magnitude_threshold(corr, 1.0)
    assert none.edges.sum() == 0
    mid = magnitude_threshold(corr, 0.5)
    assert mid.edges[0, 2] == 1 and mid.edges[0, 1] == 0 and mid.edges[1, 2] == 0
    np.testing.assert_array_equal(np.diag(mid.r_hat.values), np.ones(3))


def test_kept_counts_partition_the_pairs(planted):
    corr, zm, fit, part, odds_pair = planted
    est = nice_threshold(corr, zm, part, fit, odds_pair, T=4.0)
    counts = est.kept_counts()
    assert sum(counts.values()) == P * (P - 1) // 2


def test_universal_null_calibration():
    # pure-noise data at T=4: surviving fraction stays under the fdr-implied
    # bound of 0.2 by a wide margin
    rng = np.random.default_rng(3)
    corr = sample_correlation(DataMatrix(rng.standard_normal((N, P))))
    zm = z_matrix(corr)
    fit = fit_mixture(zm.upper_values(), n=N)
    est = universal_threshold(corr, zm, fit, T=4.0)
    iu = np.triu_indices(P, k=1)
    assert est.edges[iu].mean() <= 0.2


def test_estimate_validation_rejects_inconsistency():
    vals = np.eye(3)
    vals[0, 1] = vals[1, 0] = 0.5
    with pytest.raises(InputError, match="nonzero"):
        ThresholdedEstimate(
            r_hat=CorrMatrix(vals, n=10),
            edges=np.zeros((3, 3), dtype=int),  # contradicts r_hat[0,1] != 0
            bayes_factors=None,
            odds=None,
            T=1.0,
            in_mask=np.zeros((3, 3), dtype=bool),
        )


def test_rejects_nonpositive_T(planted):
    corr, zm, fit, part, odds_pair = planted
    with pytest.raises(InputError):
        nice_threshold(corr, zm, part, fit, odds_pair, T=0.0)
    with pytest.raises(InputError):
        universal_threshold(corr, zm, fit, T=-1.0)
    with pytest.raises(InputError):
        magnitude_threshold(corr, -0.1)
