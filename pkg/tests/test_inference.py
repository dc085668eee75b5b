import math

import numpy as np
import pytest

from latentdep.dep_types.core import PairedStatistics, PermutationConfig, PermutationResult, TruncationConfig
from latentdep.errors import InvalidConfig
from latentdep.inference import (
    adaptive_test,
    adaptive_threshold,
    asymptotic_pvalue,
    pairwise_dependence,
    permutation_pvalue,
    replicate_permutation,
)


def _correlated(p, seed, shared=0.6):
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(p)
    return PairedStatistics(t1=shared * z + rng.standard_normal(p), t2=shared * z + rng.standard_normal(p))


def test_zero_replicates_rejected():
    with pytest.raises(InvalidConfig):
        PermutationConfig(replicates=0)


def test_pvalue_formula_enforced():
    with pytest.raises(InvalidConfig):
        PermutationResult(
            statistic="dhat", observed_statistic=1.0, replicates=19, exceed_count=0,
            p_value=0.04, seed=0, scheme="full_shuffle",
        )
    ok = PermutationResult(
        statistic="dhat", observed_statistic=1.0, replicates=19, exceed_count=0,
        p_value=1 / 20, seed=0, scheme="full_shuffle",
    )
    assert ok.p_value == 0.05


def test_single_replicate_tying_observed_gives_one():
    # t2 is constant above every t1 value, so max_j min(t1[perm], t2) never changes
    pairs = PairedStatistics(t1=[0.1, 0.4, 0.3, 0.2], t2=[1.0, 1.0, 1.0, 1.0])
    result = permutation_pvalue(pairs, PermutationConfig(replicates=1, seed=3), "max")
    assert result.exceed_count == 1
    assert result.p_value == 1.0


def test_pvalue_matches_exceed_count():
    pairs = _correlated(300, 1)
    result = permutation_pvalue(pairs, PermutationConfig(replicates=49, seed=7), "dhat")
    assert result.p_value == (1 + result.exceed_count) / 50
    assert 1 / 50 <= result.p_value <= 1.0
    assert result.observed is not None
    assert result.observed.statistic == result.observed_statistic
    assert len(result.replicate_statistics) == 49


def test_permutation_is_deterministic():
    pairs = _correlated(200, 2)
    cfg = PermutationConfig(replicates=30, seed=99, scheme="cyclic_shift", truncation=TruncationConfig(m1=50, m2=50))
    assert permutation_pvalue(pairs, cfg) == permutation_pvalue(pairs, cfg)


def test_threads_do_not_change_results():
    pairs = _correlated(200, 4)
    cfg = PermutationConfig(replicates=40, seed=5)
    assert permutation_pvalue(pairs, cfg, workers=1) == permutation_pvalue(pairs, cfg, workers=4)


def test_strong_dependence_is_detected():
    pairs = _correlated(500, 6, shared=3.0)
    result = permutation_pvalue(pairs, PermutationConfig(replicates=99, seed=1))
    assert result.p_value == 0.01


def test_spearman_and_max_statistics():
    pairs = _correlated(150, 9)
    for kind in ("spearman", "max"):
        result = permutation_pvalue(pairs, PermutationConfig(replicates=20, seed=2), kind)
        assert result.statistic == kind
        assert result.observed is None


def test_cyclic_shift_needs_three_points():
    pairs = PairedStatistics(t1=[1.0, 2.0], t2=[2.0, 1.0])
    with pytest.raises(InvalidConfig):
        permutation_pvalue(pairs, PermutationConfig(replicates=5, scheme="cyclic_shift"))


def test_full_shuffle_is_a_permutation():
    for b in range(20):
        perm = replicate_permutation("full_shuffle", 50, 11, b)
        assert sorted(perm.tolist()) == list(range(50))


def test_cyclic_shift_preserves_cyclic_order():
    for b in range(20):
        perm = replicate_permutation("cyclic_shift", 17, 11, b)
        shift = int(perm[0])
        assert 1 <= shift <= 16
        assert perm.tolist() == [(j + shift) % 17 for j in range(17)]


def test_replicate_streams_depend_on_index_only():
    first = replicate_permutation("full_shuffle", 30, 8, 5)
    again = replicate_permutation("full_shuffle", 30, 8, 5)
    other = replicate_permutation("full_shuffle", 30, 8, 6)
    assert np.array_equal(first, again)
    assert not np.array_equal(first, other)


def test_asymptotic_pvalue():
    p = 1000
    assert asymptotic_pvalue(0.0, p) == 1.0
    assert asymptotic_pvalue(math.sqrt(math.log(p)), p) == pytest.approx(math.exp(-1))
    assert asymptotic_pvalue(2 * math.sqrt(math.log(p)), p) == pytest.approx(0.018316, rel=1e-4)
    with pytest.raises(InvalidConfig):
        asymptotic_pvalue(1.0, 2)


def test_adaptive_threshold_and_test():
    assert adaptive_threshold(1000) == pytest.approx(37.006, abs=1e-3)
    assert adaptive_test(40.0, 1000)
    assert not adaptive_test(30.0, 1000)
    assert not adaptive_test(0.0, 16)
    with pytest.raises(InvalidConfig):
        adaptive_threshold(15)


def test_pairwise_dependence_bonferroni():
    rng = np.random.default_rng(0)
    z = rng.standard_normal(200)
    sequences = {
        "a": z + rng.standard_normal(200),
        "b": z + rng.standard_normal(200),
        "c": rng.standard_normal(200),
    }
    results = pairwise_dependence(sequences, PermutationConfig(replicates=19, seed=4))
    assert [(r.first, r.second) for r in results] == [("a", "b"), ("a", "c"), ("b", "c")]
    for r in results:
        assert r.adjusted_p_value == min(1.0, 3 * r.result.p_value)
    assert len({r.result.seed for r in results}) == 3


@pytest.mark.slow
def test_null_rejection_rate_is_controlled():
    rejections = 0
    for seed in range(400):
        rng = np.random.default_rng(seed)
        pairs = PairedStatistics(t1=np.abs(rng.standard_normal(300)), t2=np.abs(rng.standard_normal(300)))
        result = permutation_pvalue(pairs, PermutationConfig(replicates=99, seed=seed))
        rejections += result.p_value <= 0.05
    assert rejections / 400 <= 0.08


@pytest.mark.slow
def test_adaptive_test_null_rejections_are_rare():
    from latentdep.empirical import dstat_fast, preprocess

    p = 10_000
    rejections = 0
    for seed in range(200):
        rng = np.random.default_rng(seed)
        pairs = PairedStatistics(t1=rng.standard_normal(p), t2=rng.standard_normal(p))
        stat = dstat_fast(preprocess(pairs), TruncationConfig.default(p)).statistic
        rejections += adaptive_test(stat, p)
    assert rejections / 200 <= 0.01
