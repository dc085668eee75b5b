import os

import numpy as np
import pytest
from scipy import stats

from latentdep import config
from latentdep.dep_types.core import PairedStatistics, PermutationConfig, TruncationConfig
from latentdep.dep_types.simulation import (
    Distribution,
    ExperimentConfig,
    FeatureAlternative,
    LatentAssignment,
    MixtureSpec,
    SequenceModel,
)
from latentdep.errors import CountOverflow, DegenerateInput, EmptyAfterRestriction, InvalidConfig, TooFewPoints
from latentdep.seeding import derive_rng
from latentdep.simulation import (
    assign_latent,
    calibrate,
    gen_correlated_design,
    hc_pvalue,
    hc_stat,
    heterogeneous_alternative,
    max_test_stat,
    sample_pairs,
    spearman_test,
)
from latentdep.simulation.correlated import ar1_normals
from latentdep.simulation.experiment import reports_to_csv, run_experiment
from latentdep.simulation.presets import table1, table3


@pytest.mark.parametrize(
    "beta,beta1,expected",
    [(0.61, 0.6, (100, 316, 89)), (0.52, 0.51, (282, 316, 251)), (0.71, 0.7, (32, 316, 28))],
)
def test_calibrated_counts(beta, beta1, expected):
    calib = calibrate(10**5, beta, beta1, 0.5)
    assert (calib.n1, calib.n2, calib.n12) == expected
    assert calib.eps == pytest.approx(calib.pi1 * calib.pi2 + 1e5**-beta)


def test_assignment_counts():
    assign = assign_latent(1000, 15, 10, 4, "alternative", seed=3)
    assert int(assign.i1.sum()) == 15 and int(assign.i2.sum()) == 10
    assert int(np.sum(assign.i1 & assign.i2)) >= 4
    assert assign.p == 1000


def test_assignment_is_deterministic():
    first = assign_latent(500, 10, 10, 2, "alternative", seed=9)
    again = assign_latent(500, 10, 10, 2, "alternative", seed=9)
    assert np.array_equal(first.i1, again.i1) and np.array_equal(first.i2, again.i2)


def test_null_assignment_ignores_overlap():
    assign = assign_latent(200, 5, 5, 3, "null", seed=1)
    assert assign.n12 == 0
    assert int(assign.i1.sum()) == 5 and int(assign.i2.sum()) == 5


def test_assignment_overflow():
    with pytest.raises(CountOverflow):
        assign_latent(10, 2, 3, 5, "alternative", seed=0)
    with pytest.raises(CountOverflow):
        assign_latent(10, 11, 3, 0, "alternative", seed=0)
    with pytest.raises(CountOverflow):
        assign_latent(10, -1, 3, 0, "null", seed=0)


def test_assignment_sums_are_validated():
    with pytest.raises(CountOverflow):
        LatentAssignment(i1=[True, False], i2=[True, True], n1=2, n2=2, n12=0, hypothesis="null", seed=0)


def test_distribution_validation():
    with pytest.raises(InvalidConfig):
        Distribution(sigma=0.0)
    with pytest.raises(InvalidConfig):
        FeatureAlternative(mu=[1.0, 2.0], sigma=[1.0])


def test_folded_samples_are_nonnegative_and_reproducible():
    assign = assign_latent(300, 20, 20, 5, "alternative", seed=2)
    spec = MixtureSpec(
        first=SequenceModel(alternative=Distribution(mu=3.0)),
        second=SequenceModel(alternative=Distribution(mu=3.0)),
    )
    pairs = sample_pairs(assign, spec, seed=4)
    assert np.all(pairs.t1 >= 0) and np.all(pairs.t2 >= 0)
    again = sample_pairs(assign, spec, seed=4)
    assert np.array_equal(again.t1, pairs.t1) and np.array_equal(again.t2, pairs.t2)


def test_alternative_mean_matches_folded_normal():
    p = 10_000
    assign = assign_latent(p, p, 0, 0, "null", seed=0)
    spec = MixtureSpec(first=SequenceModel(alternative=Distribution(mu=3.0, sigma=1.0)))
    t1 = sample_pairs(assign, spec, seed=5).t1
    dist = stats.foldnorm(c=3.0)
    assert abs(t1.mean() - dist.mean()) < 4 * dist.std() / np.sqrt(p)


def test_normal_family_keeps_sign():
    assign = assign_latent(2000, 0, 0, 0, "null", seed=0)
    spec = MixtureSpec(first=SequenceModel(null=Distribution(family="normal")))
    assert np.any(sample_pairs(assign, spec, seed=1).t1 < 0)


def test_heterogeneous_alternative():
    alt = heterogeneous_alternative(5000, seed=7)
    assert alt.mu.shape == alt.sigma.shape == (5000,)
    assert alt.mu.mean() == pytest.approx(2.5, abs=0.1)
    assert (alt.sigma**2).mean() == pytest.approx(2.0, abs=0.15)
    assert np.array_equal(heterogeneous_alternative(5000, seed=7).mu, alt.mu)


def test_feature_alternative_length_must_match():
    assign = assign_latent(50, 5, 5, 0, "null", seed=0)
    spec = MixtureSpec(first=SequenceModel(alternative=heterogeneous_alternative(40, seed=0)))
    with pytest.raises(InvalidConfig):
        sample_pairs(assign, spec, seed=0)


def test_spearman_test():
    t = np.arange(10.0)
    rho, pvalue = spearman_test(PairedStatistics(t1=t, t2=t))
    assert rho == pytest.approx(1.0)
    assert pvalue < 0.01
    assert spearman_test(PairedStatistics(t1=t, t2=-t))[0] == pytest.approx(-1.0)
    with pytest.raises(DegenerateInput):
        spearman_test(PairedStatistics(t1=np.ones(10), t2=t))
    with pytest.raises(TooFewPoints):
        spearman_test(PairedStatistics(t1=[1.0, 2.0], t2=[2.0, 1.0]))


def test_max_test_stat():
    assert max_test_stat(PairedStatistics(t1=[1.0, 3.0], t2=[2.0, 5.0])) == 3.0


def test_higher_criticism():
    assert hc_stat(np.array([0.01, 0.5])) == pytest.approx(np.sqrt(2) * 0.49 / np.sqrt(0.0099), rel=1e-12)
    assert hc_stat(np.array([0.01, 0.5])) == pytest.approx(6.964557, abs=1e-6)
    assert hc_stat(np.array([0.5])) == pytest.approx(1.0)
    assert hc_stat(np.array([0.7])) == pytest.approx(0.3 / np.sqrt(0.21))
    with pytest.raises(EmptyAfterRestriction):
        hc_stat(np.array([0.7]), strict=True)


def test_hc_pvalue():
    null = np.array([1.0, 2.0, 3.0])
    assert hc_pvalue(2.0, null) == 0.75
    assert hc_pvalue(5.0, null) == 0.25


def test_ar1_has_unit_variance_and_lag_one_correlation():
    x = ar1_normals(derive_rng(0), 50_000, 0.6)
    assert x.var() == pytest.approx(1.0, abs=0.05)
    assert np.corrcoef(x[:-1], x[1:])[0, 1] == pytest.approx(0.6, abs=0.05)


def test_correlated_design_without_correlation_is_half_normal():
    draws = gen_correlated_design(2000, 0.0, seed=1)
    pairs = next(draws)
    assert stats.kstest(pairs.t1, stats.halfnorm.cdf).pvalue > 1e-3
    assert not np.array_equal(next(draws).t1, pairs.t1)


def test_correlated_design_rejects_bad_rho():
    with pytest.raises(InvalidConfig):
        next(gen_correlated_design(100, 1.0, seed=0))


def _small_config(**overrides):
    values = dict(
        label="small",
        p=200,
        replicates=3,
        n1=10,
        n2=10,
        n12=5,
        methods=["dhat", "max", "spearman", "hc"],
        permutation=PermutationConfig(replicates=9),
        hc_reps=20,
        seed=1,
    )
    values.update(overrides)
    return ExperimentConfig(**values)


def test_experiment_is_deterministic():
    cfg = _small_config()
    report = run_experiment(cfg)
    assert run_experiment(cfg) == report
    assert [s.method for s in report.methods] == ["dhat", "max", "spearman", "hc"]
    for summary in report.methods:
        assert summary.replicates == 3
        assert summary.rate == summary.rejections / 3
    assert report.seconds_per_replicate is None


def test_experiment_null_reports_no_overlap():
    report = run_experiment(_small_config(hypothesis="null", methods=["max"]))
    assert report.n12 == 0


def test_experiment_timing_is_opt_in():
    report = run_experiment(_small_config(methods=["spearman"], timing=True))
    assert report.seconds_per_replicate is not None


def test_experiment_config_validation():
    with pytest.raises(InvalidConfig):
        ExperimentConfig(p=100)
    with pytest.raises(InvalidConfig):
        _small_config(alpha=1.5)
    with pytest.raises(InvalidConfig):
        _small_config(rho=1.0)


def test_strong_shared_signals_are_detected():
    strong = SequenceModel(alternative=Distribution(mu=6.0))
    cfg = _small_config(
        p=500,
        replicates=5,
        n1=20,
        n2=20,
        n12=20,
        mixture=MixtureSpec(first=strong, second=strong),
        methods=["dhat"],
        permutation=PermutationConfig(replicates=19, truncation=TruncationConfig(m1=100, m2=100)),
    )
    assert run_experiment(cfg).rate("dhat") == 1.0


def test_ar1_design_runs():
    report = run_experiment(_small_config(design="ar1", rho=0.5, methods=["max"]))
    assert report.config.design == "ar1"


def test_reports_to_csv():
    reports = [
        run_experiment(_small_config(label="a", methods=["spearman", "max"])),
        run_experiment(_small_config(label="b", methods=["spearman", "max"], seed=2)),
    ]
    lines = reports_to_csv(reports).splitlines()
    assert lines[0] == "method,a,b"
    assert [line.split(",")[0] for line in lines[1:]] == ["spearman", "max"]
    assert all(len(cell.split(".")[1]) == 2 for cell in lines[1].split(",")[1:])


def test_presets():
    first = table1()
    assert [c.label for c in first] == ["(5,5)", "(10,5)", "(15,5)", "(10,10)", "(15,10)", "(15,15)"]
    assert all(c.hypothesis == "null" and c.n12 == 0 for c in first)
    assert table1(hypothesis="alternative")[0].n12 == 2
    third = table3()
    assert [c.counts()[0] for c in third] == [282, 100, 32]
    assert third[1].methods == ["hc", "spearman", "max", "dhat"]


@pytest.mark.slow
def test_null_type_one_error_for_independent_tests():
    for cfg in table1(replicates=400, perms=200, seed=0):
        report = run_experiment(cfg)
        assert report.rate("dhat") <= 0.08, cfg.label


@pytest.mark.slow
def test_correlated_null_type_one_error():
    cfg = _small_config(
        p=1000,
        replicates=400,
        hypothesis="null",
        n1=10,
        n2=10,
        n12=0,
        methods=["dhat"],
        permutation=PermutationConfig(replicates=200),
        design="ar1",
        rho=0.5,
        seed=0,
    )
    assert run_experiment(cfg).rate("dhat") <= 0.08


TABLE3_POWER = {
    0.51: {"dhat": 0.14, "max": 0.13, "hc": 0.04},
    0.6: {"dhat": 0.61, "max": 0.63, "hc": 0.07},
    0.7: {"dhat": 0.72, "max": 0.80, "hc": 0.14},
}
TABLE3_TOL = {"dhat": 0.08, "max": 0.08, "hc": 0.05}


@pytest.mark.slow
@pytest.mark.parametrize("index,beta1", list(enumerate(TABLE3_POWER)))
def test_single_sequence_detection_power(index, beta1):
    cfg = table3(replicates=400, perms=200, seed=1)[index]
    assert cfg.calibration.beta1 == beta1
    report = run_experiment(cfg)
    for method, expected in TABLE3_POWER[beta1].items():
        assert report.rate(method) == pytest.approx(expected, abs=TABLE3_TOL[method]), method


@pytest.fixture
def threaded_settings(monkeypatch):
    monkeypatch.setattr(config, "_settings", config.Settings(workers=max(1, os.cpu_count() or 1)))


@pytest.mark.slow
def test_single_sequence_detection_power_smoke(threaded_settings):
    # R=100 with 99 permutations and one thread per core; p-values keep a 0.01 resolution at level 0.05
    for index, beta1 in enumerate(TABLE3_POWER):
        cfg = table3(replicates=100, perms=99, seed=1)[index]
        report = run_experiment(cfg)
        for method, expected in TABLE3_POWER[beta1].items():
            assert report.rate(method) == pytest.approx(expected, abs=0.15), (beta1, method)
