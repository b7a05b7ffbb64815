"""
Tests for the experiment harness. Small-x runs are checked against direct
scalar computations; the desk-scale acceptance runs are marked slow.
"""

import logging
import math
from fractions import Fraction

import numpy as np
import pytest

from artinlab.constants import mean_pg_predicted, mean_pg_star_predicted
from artinlab.errors import InvalidArgumentError
from artinlab.experiments import (
    ExperimentRecord,
    exp_exceptional_count,
    exp_max_pg,
    exp_mean_pg,
    exp_mean_pg_star,
    exp_pg_distribution,
    exp_tamed_mean,
    exp_tamed_mean_star,
    exp_uniformity_sweep,
    exp_vaughan_convergence,
)
from artinlab.roots import batch_search, count_Pi, least_almost_artin_prime, least_artin_prime


def _artin_domain(x):
    return [g for g in range(-x, x + 1) if abs(g) > 1 and not (g > 0 and math.isqrt(g) ** 2 == g)]


def test_record_build_errors():
    record = ExperimentRecord.build("demo", {"x": 1}, Fraction(1, 2), 0.25, started=0.0)
    assert record.abs_error == 0.25
    assert record.rel_error == 1.0
    zero = ExperimentRecord.build("demo", {}, 1.0, 0.0, started=0.0)
    assert zero.rel_error is None


def test_exp_mean_pg_matches_direct_sum():
    x = 300
    record = exp_mean_pg(x, search_bound=10**4, max_prime=1000)
    expected = Fraction(sum(least_artin_prime(g, 10**4).prime for g in _artin_domain(x)), 2 * x)
    assert record.experiment_id == "mean-pg"
    assert record.empirical == expected
    assert record.extra["exhausted"] == 0
    assert record.predicted == mean_pg_predicted(1000).approx
    assert record.extra["heuristic_tail"] is True
    assert record.extra["spot_mismatches"] is None


def test_exp_mean_pg_star_matches_direct_sum():
    x = 300
    record = exp_mean_pg_star(x, search_bound=10**4, max_prime=1000, spot_fraction=0.1, seed=3)
    total = sum(least_almost_artin_prime(g, 10**4).prime for g in range(-x, x + 1) if g != 0)
    assert record.empirical == Fraction(total, 2 * x)
    assert record.predicted == mean_pg_star_predicted(1000).approx
    assert record.extra["spot_mismatches"] == []


def test_exp_mean_pg_reports_exhaustion(caplog):
    with caplog.at_level(logging.WARNING):
        record = exp_mean_pg(200, search_bound=5, max_prime=1000)
    assert record.extra["exhausted"] > 0
    assert any("excluded from the mean" in r.message for r in caplog.records)


def test_exp_mean_requires_x():
    with pytest.raises(InvalidArgumentError):
        exp_mean_pg(50)


def test_exp_tamed_mean_matches_direct_sum():
    x, eta = 1000, 0.3
    cap = x**eta
    record = exp_tamed_mean(x, eta, max_prime=1000)
    direct = math.fsum(min(least_artin_prime(g, 10**4).prime, cap) for g in _artin_domain(x)) / (2 * x)
    assert record.empirical == pytest.approx(direct, rel=1e-12)
    assert record.extra["cap"] == pytest.approx(cap)


def test_exp_tamed_mean_degenerate_cap():
    x, eta = 100, 0.1
    record = exp_tamed_mean(x, eta, max_prime=1000)
    assert record.empirical == pytest.approx(x**eta * 189 / 200)


def test_exp_tamed_mean_rejects_eta():
    with pytest.raises(InvalidArgumentError):
        exp_tamed_mean(1000, 0.5)


def test_exp_tamed_mean_star_matches_direct_sum():
    x, epsilon = 500, 0.5
    cap = x ** (1 - epsilon)
    record = exp_tamed_mean_star(x, epsilon, max_prime=1000)
    scalar = [least_almost_artin_prime(g, 10**4).prime for g in range(-x, x + 1) if g != 0]
    direct = math.fsum(min(p, cap) for p in scalar) / (2 * x)
    assert record.experiment_id == "tamed-mean-star"
    assert record.empirical == pytest.approx(direct, rel=1e-12)
    assert record.extra["capped"] == sum(1 for p in scalar if p > cap)
    assert record.predicted == pytest.approx(mean_pg_star_predicted(1000).approx)
    assert record.empirical <= sum(scalar) / (2 * x)


def test_exp_tamed_mean_star_degenerate_cap_and_errors():
    x, epsilon = 100, 0.95
    record = exp_tamed_mean_star(x, epsilon, max_prime=1000)
    assert record.empirical == pytest.approx(x ** (1 - epsilon))
    assert record.extra["capped"] == 2 * x
    for bad in (0, 1):
        with pytest.raises(InvalidArgumentError):
            exp_tamed_mean_star(1000, bad)


def test_exp_pg_distribution():
    records = exp_pg_distribution(1000, 13)
    assert [r.params["p"] for r in records] == [2, 3, 5, 7, 11, 13]
    assert records[0].empirical == Fraction(1, 2)
    assert records[0].extra["delta_p"] == Fraction(1, 2)
    # p_g = 3 exactly for g = 2 mod 6
    assert records[1].extra["count"] == 334
    assert records[1].abs_error < 0.01
    with pytest.raises(InvalidArgumentError):
        exp_pg_distribution(500, 13)


def test_exp_exceptional_count():
    x = 2000
    records = exp_exceptional_count(x)
    assert [r.experiment_id for r in records] == ["exceptional-pg", "exceptional-pg-star"]
    first = records[0]
    Y = first.params["Y"]
    assert Y == pytest.approx(math.log(2 * x + 1) ** 2)
    direct = int(np.count_nonzero(~batch_search(-x, x, math.floor(Y)).found))
    assert first.extra["count"] == direct
    assert first.extra["dominated"] is True
    assert first.extra["count"] <= first.extra["sieve_bound"]
    assert records[1].extra["count"] >= 0


def test_exp_exceptional_count_rejects_small_Y():
    with pytest.raises(InvalidArgumentError):
        exp_exceptional_count(2000, Y=1.5)


def test_exp_uniformity_sweep(caplog):
    with caplog.at_level(logging.WARNING):
        records = exp_uniformity_sweep([2, 4, -3], [10**4, 10**5], prime_limit=10**5)
    assert any("g=4" in r.message for r in caplog.records)
    assert [(r.params["g"], r.params["x"]) for r in records] == [(2, 10**4), (2, 10**5), (-3, 10**4), (-3, 10**5)]
    for r in records:
        assert r.extra["pi_xg"] == count_Pi(r.params["x"], r.params["g"])
        assert 0.8 <= r.empirical <= 1.2
        assert 0 < r.extra["error_scale"] < 1


def test_exp_vaughan_convergence():
    records = exp_vaughan_convergence([3, 1, 50], m_max=20, prime_limit=10**4)
    assert [r.params["k"] for r in records] == [1, 3, 50]
    assert records[0].extra["L_k"] == pytest.approx(math.log(2))
    assert records[1].extra["r_k"] == 5
    assert records[1].extra["L_k"] == pytest.approx(math.log(5))
    assert records[2].extra["r_k"] == 229
    for r in records:
        assert r.extra["ratio"] == pytest.approx(r.empirical / r.predicted)
    with pytest.raises(InvalidArgumentError):
        exp_vaughan_convergence([0])


def test_exp_max_pg():
    x = 300
    record = exp_max_pg(x, search_bound=10**4, m_max=10, prime_limit=10**4)
    primes = {g: least_artin_prime(g, 10**4).prime for g in _artin_domain(x)}
    largest = max(primes.values())
    assert record.empirical == largest
    assert primes[record.extra["argmax_g"]] == largest
    assert record.extra["k0"] > 0
    assert record.extra["exhausted"] == 0


@pytest.mark.slow
def test_mean_pg_within_tolerance_at_desk_scale():
    record = exp_mean_pg(10**6, search_bound=10**6, max_prime=10**4, workers=2)
    assert record.extra["exhausted"] == 0
    assert record.rel_error < 0.01


@pytest.mark.slow
def test_tamed_mean_within_tolerance_at_desk_scale():
    record = exp_tamed_mean(10**6, 0.4, max_prime=10**4, workers=2)
    assert record.rel_error < 0.01


@pytest.mark.slow
def test_larger_sieve_record_at_desk_scale():
    records = exp_exceptional_count(10**4, theta=0.24)
    larger = records[-1]
    assert larger.experiment_id == "exceptional-larger-sieve"
    if larger.extra["sieve_available"]:
        assert larger.extra["dominated"] is True
    else:
        assert larger.extra["dominated"] is None
