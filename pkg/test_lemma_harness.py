#!/usr/bin/env python3
"""
🧪 Unit tests for the seeded lemma harness
"""

import random
import time

import pytest

from core.lemma_harness import LemmaHarness, TAIL_EPSILONS, TAIL_K_MAX, random_irreducible, run_lemma_harness
from core.polyz import factor


class TestRandomPolynomials:

    def test_draws_are_irreducible(self):
        rng = random.Random(3)
        for _ in range(10):
            p = random_irreducible(rng, 4, 10)
            assert 1 <= p.degree <= 4
            assert len(factor(p)) == 1
            assert p.constant_term != 0

    def test_monic_draws(self):
        rng = random.Random(5)
        assert all(random_irreducible(rng, 3, 10, monic=True).is_monic for _ in range(5))

    def test_same_seed_same_draws(self):
        first = [random_irreducible(random.Random(11), 3, 10) for _ in range(3)]
        second = [random_irreducible(random.Random(11), 3, 10) for _ in range(3)]
        assert first == second


class TestHarness:

    @pytest.fixture(scope="class")
    def summary(self):
        return run_lemma_harness(trials=4, seed=7, max_degree=3)

    def test_every_suite_passes(self, summary):
        assert summary.all_passed
        names = [s.name for s in summary.suites]
        assert names == ["house chain", "reciprocal height", "sum height", "separation", "polynomial tail bound"]

    def test_trial_counts(self, summary):
        counts = {s.name: s.trials for s in summary.suites}
        assert counts["house chain"] == 4
        assert counts["separation"] == 2
        assert counts["polynomial tail bound"] == len(TAIL_EPSILONS) * TAIL_K_MAX

    def test_replay_is_identical(self, summary):
        assert run_lemma_harness(trials=4, seed=7, max_degree=3).to_dict() == summary.to_dict()

    def test_zero_trials_warns(self):
        summary = LemmaHarness(trials=0, seed=1, max_degree=2).run()
        assert summary.warnings
        assert summary.suites[0].trials == 0
        assert summary.suites[-1].failed == 0

    def test_tail_grid(self):
        tail = LemmaHarness(trials=0).tail_suite()
        assert tail.passed == tail.trials
        assert tail.counterexamples == []

    @pytest.mark.slow
    def test_full_run_within_a_minute(self):
        start = time.perf_counter()
        summary = run_lemma_harness(trials=200, seed=42)
        assert time.perf_counter() - start < 60
        assert summary.all_passed
        assert summary.suites[0].trials == 200
