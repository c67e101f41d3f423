"""Tests for the two-groups mixture fit, weights, and pi0 refitting."""

import numpy as np
import pytest
from scipy.integrate import trapezoid

from nicecorr.corr import DataMatrix, sample_correlation, z_matrix
from nicecorr.errors import InputError, NumericError
from nicecorr.mixture import (
    MixtureFit,
    dispersion,
    fit_mixture,
    local_fdr,
    posterior_nonnull,
    refit_pi0,
    weight_matrix,
)

SD25 = 1.0 / np.sqrt(22)  # null sd at n = 25


@pytest.fixture(scope="module")
def null_fit():
    rng = np.random.default_rng(100)
    return fit_mixture(rng.normal(0.0, SD25, 100_000), n=25)


@pytest.fixture(scope="module")
def mix_fit():
    # 90% null + 10% shifted component at 0.55 on the z scale
    rng = np.random.default_rng(101)
    z = np.concatenate(
        [rng.normal(0.0, SD25, 90_000), rng.normal(0.55, SD25, 10_000)]
    )
    return fit_mixture(z, n=25)


def planted_block_data(rng, p=40, block=15, rho=0.7, n=50):
    """MVN sample whose first `block` variables share correlation rho."""
    sigma = np.eye(p)
    sigma[:block, :block] = rho
    np.fill_diagonal(sigma, 1.0)
    return rng.multivariate_normal(np.zeros(p), sigma, size=n, method="cholesky")


def test_pure_null_pi0_near_one(null_fit):
    assert null_fit.pi0 >= 0.95


def test_mixture_pi0_brackets_generating_value(mix_fit):
    assert 0.8 <= mix_fit.pi0 <= 1.0


def test_densities_integrate_to_one(mix_fit, null_fit):
    for fit in (mix_fit, null_fit):
        assert trapezoid(fit.f0_grid, fit.grid) == pytest.approx(1.0, abs=1e-3)
        assert trapezoid(fit.f_grid, fit.grid) == pytest.approx(1.0, abs=1e-3)


def test_mixture_identity_on_grid(mix_fit):
    # pi0*f0 + pi1*f1 is the stored marginal evaluator, exactly
    recon = mix_fit.pi0 * mix_fit.f0_grid + mix_fit.pi1 * mix_fit.f1_grid
    np.testing.assert_allclose(recon, mix_fit.f_grid, atol=1e-12)
    np.testing.assert_allclose(recon, mix_fit.f(mix_fit.grid), atol=1e-12)


def test_reconstruction_tracks_raw_marginal(mix_fit):
    # where f1 was not clipped the reconstruction only differs from the raw
    # Lindsey estimate by the clipped-mass renormalization, which is small
    unclipped = ~mix_fit.clipped
    assert unclipped.any()
    dev = np.abs(mix_fit.f_grid - mix_fit.marginal)[unclipped]
    assert dev.max() < 0.05 * mix_fit.marginal.max()


def test_f_dominates_null_part(mix_fit):
    assert np.all(
        mix_fit.f_grid >= mix_fit.pi0 * mix_fit.f0_grid - 1e-9
    )


def test_f1_nonnegative_and_one_sided(mix_fit):
    assert np.all(mix_fit.f1_grid >= 0)
    # default fit is one-sided: no non-null mass at z <= 0
    assert np.all(mix_fit.f1_grid[mix_fit.grid <= 0] == 0)


def test_two_sided_option_keeps_negative_mass_possible():
    rng = np.random.default_rng(102)
    z = np.concatenate(
        [rng.normal(0.0, SD25, 80_000), rng.normal(-0.55, SD25, 20_000)]
    )
    fit = fit_mixture(z, n=25, one_sided=False)
    assert fit.f1_grid[fit.grid < -0.3].max() > 0
    assert fit.posterior_nonnull(-0.55) > 0.5


def test_posterior_low_at_zero(mix_fit):
    assert posterior_nonnull(mix_fit, 0.0) < 0.5


def test_posterior_zero_when_pi0_is_one():
    # under-dispersed data trips the gate (and would clamp the central
    # marginal/null ratio above 1 anyway): pi0 exactly 1, f1 zeroed
    rng = np.random.default_rng(110)
    fit = fit_mixture(rng.normal(0.0, 0.9 * SD25, 50_000), n=25)
    assert fit.pi0 == 1.0
    assert np.all(fit.f1_grid == 0)
    z = np.linspace(-1, 1, 41)
    np.testing.assert_array_equal(posterior_nonnull(fit, z), 0.0)


def test_dispersion_separates_null_from_mixture():
    rng = np.random.default_rng(115)
    z_null = rng.normal(0.0, SD25, 30_000)
    assert abs(dispersion(z_null, SD25)) < 4
    z_mix = np.concatenate([z_null, rng.normal(0.55, SD25, 1_000)])
    assert dispersion(z_mix, SD25) > 8
    with pytest.raises(InputError, match="at least one"):
        dispersion([], 1.0)
    with pytest.raises(InputError, match="positive"):
        dispersion([0.1], 0.0)


def test_gate_forces_pure_null_degenerate():
    # a calibrated sample always leaves some central ratio below 1 by chance;
    # without the gate that sliver becomes hot posterior weight at the tail
    rng = np.random.default_rng(116)
    fit = fit_mixture(rng.normal(0.0, SD25, 4950), n=25)
    assert fit.pi0 == 1.0
    assert np.all(fit.f1_grid == 0)


def test_gate_only_applies_to_theoretical_null():
    rng = np.random.default_rng(117)
    z = rng.normal(0.0, 0.9 * SD25, 50_000)
    th = fit_mixture(z, n=25)
    emp = fit_mixture(z, n=25, null_mode="empirical")
    assert th.pi0 == 1.0
    assert emp.pi0 < 1.0  # empirical null matches the scale, no forced clamp


def test_posterior_rises_toward_signal(mix_fit):
    # not exactly monotone: the fitted excess can wiggle near the origin by
    # O(fit noise), but it must climb through the signal flank
    z = np.linspace(0.0, 1.0, 101)
    w = posterior_nonnull(mix_fit, z)
    assert np.all(np.diff(w) >= -0.02)
    checkpoints = w[[30, 45, 55, 70]]  # z = 0.3, 0.45, 0.55, 0.7
    assert np.all(np.diff(checkpoints) > 0)
    assert w[70] > 0.9


def test_posterior_fdr_complement(mix_fit):
    z = np.linspace(-0.5, 1.0, 301)
    np.testing.assert_array_equal(
        posterior_nonnull(mix_fit, z) + local_fdr(mix_fit, z), 1.0
    )


def test_weight_matrix_null_data(null_fit):
    zm = z_matrix(
        sample_correlation(
            DataMatrix(np.random.default_rng(103).standard_normal((25, 30)))
        )
    )
    w = weight_matrix(zm, null_fit)
    off = w[~np.eye(30, dtype=bool)]
    assert np.all(off < 0.1)
    assert np.array_equal(np.diag(w), np.zeros(30))


def test_weight_matrix_symmetric(mix_fit):
    rng = np.random.default_rng(104)
    zm = z_matrix(sample_correlation(DataMatrix(rng.standard_normal((25, 12)))))
    w = weight_matrix(zm, mix_fit)
    assert np.array_equal(w, w.T)
    assert w.min() >= 0 and w.max() <= 1


def test_weight_matrix_separates_planted_clique():
    rng = np.random.default_rng(105)
    x = planted_block_data(rng, p=40, block=15, rho=0.7, n=50)
    zm = z_matrix(sample_correlation(DataMatrix(x)))
    fit = fit_mixture(zm.upper_values(), n=50)
    w = weight_matrix(zm, fit)
    inside = np.zeros((40, 40), dtype=bool)
    inside[:15, :15] = True
    np.fill_diagonal(inside, False)
    outside = ~inside & ~np.eye(40, dtype=bool)
    assert w[inside].mean() > w[outside].mean()


def test_refit_pi0_oracle_subsets(mix_fit):
    rng = np.random.default_rng(106)
    assert refit_pi0(rng.normal(0.0, SD25, 2000), mix_fit) >= 0.9
    assert refit_pi0(rng.normal(0.55, SD25, 2000), mix_fit) <= 0.1


def test_refit_pi0_self_consistent(mix_fit):
    rng = np.random.default_rng(107)
    z = np.concatenate(
        [rng.normal(0.0, SD25, 90_000), rng.normal(0.55, SD25, 10_000)]
    )
    assert refit_pi0(z, mix_fit) == pytest.approx(mix_fit.pi0, abs=0.02)


def test_stratum_pi0_ordering():
    # planted cliques: in-edges are enriched, out-edges depleted, so
    # pi0_in <= pi0_all <= pi0_out up to estimation tolerance
    rng = np.random.default_rng(108)
    x = planted_block_data(rng, p=60, block=20, rho=0.5, n=25)
    zm = z_matrix(sample_correlation(DataMatrix(x)))
    inside = np.zeros((60, 60), dtype=bool)
    inside[:20, :20] = True
    iu = np.triu_indices(60, k=1)
    in_mask = inside[iu]
    z_all = zm.values[iu]
    fit = fit_mixture(z_all, n=25)
    pi0_in = refit_pi0(z_all[in_mask], fit)
    pi0_out = refit_pi0(z_all[~in_mask], fit)
    pi0_all = refit_pi0(z_all, fit)
    assert pi0_in <= pi0_all + 0.02
    assert pi0_all <= pi0_out + 0.02
    assert pi0_in < pi0_out  # strict separation at this signal strength


def test_empirical_null_recovers_inflated_scale():
    # data 30% wider than the theoretical null: the empirical null should
    # pick that up instead of trusting 1/sqrt(n-3)
    rng = np.random.default_rng(109)
    z = rng.normal(0.0, 1.3 * SD25, 100_000)
    fit = fit_mixture(z, n=25, null_mode="empirical")
    assert fit.null_sd == pytest.approx(1.3 * SD25, rel=0.1)
    assert abs(fit.null_mean) < 0.02


def test_fit_rejects_bad_input():
    with pytest.raises(InputError, match="at least 200"):
        fit_mixture(np.zeros(100), n=25)
    with pytest.raises(InputError, match="degenerate"):
        fit_mixture(np.full(500, 0.3), n=25)
    with pytest.raises(InputError, match="null_mode"):
        fit_mixture(np.random.default_rng(1).normal(size=500), n=25, null_mode="bogus")
    with pytest.raises(InputError, match="sample size"):
        fit_mixture(np.random.default_rng(1).normal(size=500), n=3)
    with pytest.raises(InputError, match="finite"):
        fit_mixture(np.r_[np.zeros(500), np.nan], n=25)


def test_refit_rejects_empty_subset(mix_fit):
    with pytest.raises(InputError, match="empty"):
        refit_pi0([], mix_fit)


def test_to_dict_round_trips_through_json(mix_fit):
    import json

    d = json.loads(json.dumps(mix_fit.to_dict()))
    assert d["pi0"] == mix_fit.pi0
    assert len(d["grid"]) == len(d["f"]) == len(d["f1"]) == 120


def test_mixturefit_validates_pi0():
    with pytest.raises(NumericError):
        MixtureFit(
            pi0=1.5,
            pi1=-0.5,
            grid=np.linspace(-1, 1, 10),
            bin_width=0.2,
            f0_grid=np.ones(10),
            f1_grid=np.zeros(10),
            marginal=np.ones(10),
            counts=np.ones(10),
            clipped=np.zeros(10, dtype=bool),
            null_mean=0.0,
            null_sd=0.2,
            null_mode="theoretical",
            one_sided=True,
            n=25,
        )
