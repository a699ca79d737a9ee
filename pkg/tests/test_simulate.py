import math

import pytest

from missingmass import (
    INFINITE,
    estimate_variance,
    exact_variance,
    expected_missing_mass,
    from_probs,
    sample_missing_mass,
    uniform,
    worst_case_distribution,
)


class TestSampleMissingMass:
    def test_point_mass_always_seen(self):
        d = from_probs([1.0])
        for seed in (0, 1, 12345):
            for n in (1, 3, 10):
                assert sample_missing_mass(d, n, seed) == 0.0

    def test_two_atoms_one_draw(self):
        d = from_probs([0.5, 0.5])
        for seed in range(20):
            assert sample_missing_mass(d, 1, seed) == 0.5

    def test_deterministic_given_seed(self):
        d = uniform(30)
        assert sample_missing_mass(d, 10, 99) == sample_missing_mass(d, 10, 99)

    def test_output_is_a_subset_sum(self):
        probs = [0.4, 0.3, 0.2, 0.1]
        d = from_probs(probs)
        subset_sums = set()
        for mask in range(16):
            subset_sums.add(round(math.fsum(p for i, p in enumerate(probs) if mask >> i & 1), 12))
        for seed in range(25):
            v = sample_missing_mass(d, 3, seed)
            assert 0.0 <= v <= 1.0
            assert round(v, 12) in subset_sums

    def test_zero_mass_atom_never_observed(self):
        # the zero atom always counts as unseen but adds no mass
        with_zero = from_probs([0.5, 0.0, 0.5])
        without = from_probs([0.5, 0.5])
        for seed in range(10):
            assert sample_missing_mass(with_zero, 2, seed) == sample_missing_mass(without, 2, seed)

    def test_bad_sample_size(self):
        with pytest.raises(ValueError):
            sample_missing_mass(uniform(2), 0, 1)


class TestEstimateVariance:
    def test_degenerate_exact_zero(self):
        est = estimate_variance(from_probs([1.0]), 5, 100, seed=3)
        assert est.mean == 0.0
        assert est.variance == 0.0
        assert est.se_mean == 0.0 and est.se_variance == 0.0

    def test_reproducible(self):
        d = uniform(6)
        a = estimate_variance(d, 4, 500, seed=11)
        b = estimate_variance(d, 4, 500, seed=11)
        assert a == b

    def test_worker_count_invisible(self):
        d = from_probs([0.5, 0.3, 0.2])
        a = estimate_variance(d, 10, 1001, seed=5, workers=1)
        b = estimate_variance(d, 10, 1001, seed=5, workers=4)
        c = estimate_variance(d, 10, 1001, seed=5, workers=3)
        assert a == b == c

    def test_seed_changes_stream(self):
        d = uniform(6)
        assert estimate_variance(d, 4, 500, seed=1) != estimate_variance(d, 4, 500, seed=2)

    def test_metadata(self):
        est = estimate_variance(uniform(2), 2, 10, seed=7)
        assert est.trials == 10 and est.seed == 7

    def test_needs_two_trials(self):
        with pytest.raises(ValueError):
            estimate_variance(uniform(2), 2, 1, seed=0)

    def test_two_fair_atoms_variance(self):
        est = estimate_variance(from_probs([0.5, 0.5]), 2, 100000, seed=2024)
        assert abs(est.variance - 0.0625) <= 3 * est.se_variance

    def test_mean_matches_expectation(self):
        d = from_probs([0.5, 0.3, 0.2])
        est = estimate_variance(d, 10, 100000, seed=303)
        assert abs(est.mean - expected_missing_mass(d, 10)) <= 4 * est.se_mean

    def test_worst_case_against_exact_variance(self):
        d = worst_case_distribution(100, INFINITE).to_distribution()
        est = estimate_variance(d, 100, 1000000, seed=606)
        assert abs(est.variance - exact_variance(d, 100).value) <= 3 * est.se_variance
