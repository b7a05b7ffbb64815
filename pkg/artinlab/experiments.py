"""
Experiment harness: empirical statistics of p_g and p*_g over |g| <= x
compared with their predicted values.

Averages over the Artin domain G divide by 2x, not by #(G in [-x, x]).
Every experiment returns ExperimentRecord objects; bound exhaustion and
skipped inputs are reported through WARNING logs.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Optional, Union

import numpy as np

from .constants import (
    artin_A,
    delta_table,
    heuristic_exceptional_count,
    heuristic_max_index,
    mean_pg_predicted,
    mean_pg_star_predicted,
    varrho,
    varrho0,
    vaughan_product,
)
from .errors import InvalidArgumentError
from .numth import PrimeTable, cached_prime_table, decompose
from .roots import (
    BatchResult,
    SearchMode,
    artin_domain_mask,
    batch_search,
    count_Pi,
    spot_check,
)
from .sieves import (
    gallagher_problem,
    large_sieve_bound,
    larger_sieve_bound,
    larger_sieve_y,
    vaughan_problem,
)

logger = logging.getLogger(__name__)

DEFAULT_SEARCH_BOUND = 10**6
DEFAULT_MAX_PRIME = 10**4
DEFAULT_PRIME_LIMIT = 10**6


@dataclass
class ExperimentRecord:
    """One row of experiment output.

    ``extra`` carries experiment-specific columns. ``runtime_ms`` is timing
    only and is kept out of serialized results.
    """

    experiment_id: str
    params: dict[str, Any]
    empirical: Union[float, Fraction]
    predicted: float
    abs_error: float
    rel_error: Optional[float]
    runtime_ms: int
    extra: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def build(
        cls,
        experiment_id: str,
        params: dict[str, Any],
        empirical: Union[float, Fraction],
        predicted: float,
        started: float,
        **extra: Any,
    ) -> "ExperimentRecord":
        abs_error = abs(float(empirical) - predicted)
        return cls(
            experiment_id=experiment_id,
            params=params,
            empirical=empirical,
            predicted=predicted,
            abs_error=abs_error,
            rel_error=abs_error / abs(predicted) if predicted else None,
            runtime_ms=int((time.perf_counter() - started) * 1000),
            extra=extra,
        )


def _require_x(x: int, minimum: int) -> None:
    if x < minimum:
        raise InvalidArgumentError(f"x must be >= {minimum}, got {x}")


def _symmetric_search(x: int, search_bound: int, mode: SearchMode, workers: int) -> BatchResult:
    return batch_search(-x, x, search_bound, mode=mode, workers=workers)


def _spot_check(result: BatchResult, fraction: float, seed: int) -> Optional[list[int]]:
    if fraction <= 0:
        return None
    return spot_check(result, fraction=fraction, seed=seed)


def exp_mean_pg(
    x: int,
    search_bound: int = DEFAULT_SEARCH_BOUND,
    max_prime: int = DEFAULT_MAX_PRIME,
    workers: int = 1,
    spot_fraction: float = 0.0,
    seed: int = 0,
) -> ExperimentRecord:
    """(1/2x) sum of p_g over g in G, |g| <= x, against sum_p p delta_p."""
    _require_x(x, 100)
    started = time.perf_counter()
    result = _symmetric_search(x, search_bound, SearchMode.PRIMITIVE, workers)

    in_domain = artin_domain_mask(result.g)
    found = in_domain & result.found
    exhausted = int((in_domain & ~result.found).sum())
    if exhausted:
        logger.warning(f"exp mean: {exhausted} g with p_g > {search_bound} excluded from the mean")

    empirical = Fraction(int(result.prime[found].sum()), 2 * x)
    predicted = mean_pg_predicted(max_prime)
    return ExperimentRecord.build(
        "mean-pg",
        {"x": x, "search_bound": search_bound, "max_prime": max_prime},
        empirical,
        predicted.approx,
        started,
        exhausted=exhausted,
        predicted_error_bound=predicted.error_bound,
        heuristic_tail=predicted.heuristic,
        spot_mismatches=_spot_check(result, spot_fraction, seed),
    )


def exp_mean_pg_star(
    x: int,
    search_bound: int = DEFAULT_SEARCH_BOUND,
    max_prime: int = DEFAULT_MAX_PRIME,
    workers: int = 1,
    spot_fraction: float = 0.0,
    seed: int = 0,
) -> ExperimentRecord:
    """(1/2x) sum of p*_g over 0 < |g| <= x, against sum_p p delta*_p."""
    _require_x(x, 100)
    started = time.perf_counter()
    result = _symmetric_search(x, search_bound, SearchMode.ALMOST, workers)

    nonzero = result.g != 0
    found = nonzero & result.found
    exhausted = int((nonzero & ~result.found).sum())
    if exhausted:
        logger.warning(f"exp mean --almost: {exhausted} g with p*_g > {search_bound} excluded from the mean")

    empirical = Fraction(int(result.prime[found].sum()), 2 * x)
    predicted = mean_pg_star_predicted(max_prime)
    return ExperimentRecord.build(
        "mean-pg-star",
        {"x": x, "search_bound": search_bound, "max_prime": max_prime},
        empirical,
        predicted.approx,
        started,
        exhausted=exhausted,
        predicted_error_bound=predicted.error_bound,
        heuristic_tail=predicted.heuristic,
        spot_mismatches=_spot_check(result, spot_fraction, seed),
    )


def exp_tamed_mean(
    x: int,
    eta: float,
    max_prime: int = DEFAULT_MAX_PRIME,
    workers: int = 1,
) -> ExperimentRecord:
    """(1/2x) sum of min(p_g, x^eta) over g in G, |g| <= x.

    Only primes up to the cap are searched; a g whose search exhausts the
    cap contributes the cap itself, so the statistic is total.
    """
    _require_x(x, 100)
    if not 0 < eta < 0.5:
        raise InvalidArgumentError(f"eta must lie in (0, 1/2), got {eta}")
    started = time.perf_counter()
    cap = x**eta
    params = {"x": x, "eta": eta, "max_prime": max_prime}
    predicted = mean_pg_predicted(max_prime).approx

    if cap < 2:
        # every p_g >= 2 exceeds the cap
        g = np.arange(-x, x + 1, dtype=np.int64)
        size = int(artin_domain_mask(g).sum())
        return ExperimentRecord.build("tamed-mean", params, cap * size / (2 * x), predicted, started, cap=cap)

    result = _symmetric_search(x, math.floor(cap), SearchMode.PRIMITIVE, workers)
    in_domain = artin_domain_mask(result.g)
    found = in_domain & result.found
    capped = int((in_domain & ~result.found).sum())
    total = math.fsum([float(result.prime[found].sum()), cap * capped])
    return ExperimentRecord.build(
        "tamed-mean", params, total / (2 * x), predicted, started, cap=cap, capped=capped
    )


def exp_tamed_mean_star(
    x: int,
    epsilon: float,
    max_prime: int = DEFAULT_MAX_PRIME,
    workers: int = 1,
) -> ExperimentRecord:
    """(1/2x) sum of min(p*_g, x^(1 - epsilon)) over 0 < |g| <= x, against sum_p p delta*_p.

    The cap may run up to any power below x, so unlike the primitive
    tamed mean this average is not limited to exponents below 1/2.
    """
    _require_x(x, 100)
    if not 0 < epsilon < 1:
        raise InvalidArgumentError(f"epsilon must lie in (0, 1), got {epsilon}")
    started = time.perf_counter()
    cap = x ** (1 - epsilon)
    params = {"x": x, "epsilon": epsilon, "max_prime": max_prime}
    predicted = mean_pg_star_predicted(max_prime).approx

    if cap < 2:
        # all 2x nonzero g contribute the cap
        return ExperimentRecord.build("tamed-mean-star", params, cap, predicted, started, cap=cap, capped=2 * x)

    result = _symmetric_search(x, math.floor(cap), SearchMode.ALMOST, workers)
    nonzero = result.g != 0
    found = nonzero & result.found
    capped = int((nonzero & ~result.found).sum())
    total = math.fsum([float(result.prime[found].sum()), cap * capped])
    return ExperimentRecord.build(
        "tamed-mean-star", params, total / (2 * x), predicted, started, cap=cap, capped=capped
    )


def exp_pg_distribution(x: int, max_p: int, workers: int = 1) -> list[ExperimentRecord]:
    """Frequency of p_g = p over all |g| <= x (divided by 2x) against delta_p."""
    _require_x(x, 1000)
    if max_p < 2:
        raise InvalidArgumentError(f"max_p must be >= 2, got {max_p}")
    started = time.perf_counter()
    result = _symmetric_search(x, max_p, SearchMode.PRIMITIVE, workers)
    table = delta_table(max_p)

    counts = np.bincount(result.prime[result.found], minlength=max_p + 1)
    records = []
    for row in table.rows:
        count = int(counts[row.p])
        records.append(
            ExperimentRecord.build(
                "pg-distribution",
                {"x": x, "p": row.p},
                Fraction(count, 2 * x),
                float(row.delta),
                started,
                count=count,
                delta_p=row.delta,
            )
        )
    return records


def exp_exceptional_count(
    x: int,
    Y: Optional[float] = None,
    theta: Optional[float] = None,
    workers: int = 1,
) -> list[ExperimentRecord]:
    """Counts of exceptionally large p_g and p*_g against sieve bounds.

    Returns up to three records: #{|g| <= x : p_g > Y} against the large
    sieve; #{0 < |g| <= x : p*_g > log^4 x} (observational); and, when theta
    is given, #{0 < |g| <= x : p*_g > y} against the larger sieve.
    """
    _require_x(x, 1000)
    N = 2 * x + 1
    if Y is None:
        Y = math.log(N) ** 2
    if Y < 2:
        raise InvalidArgumentError(f"Y must be >= 2, got {Y}")
    records = []

    started = time.perf_counter()
    result = _symmetric_search(x, math.floor(Y), SearchMode.PRIMITIVE, workers)
    count = int((~result.found).sum())
    bound = large_sieve_bound(vaughan_problem(x, Y))
    dominated = count <= bound
    if not dominated:
        logger.error(f"Large sieve bound {bound:.6g} fails to dominate count {count} at x={x}, Y={Y}")
    records.append(
        ExperimentRecord.build(
            "exceptional-pg",
            {"x": x, "Y": Y},
            float(count),
            heuristic_exceptional_count(x, Y),
            started,
            count=count,
            sieve_bound=bound,
            dominated=dominated,
        )
    )

    started = time.perf_counter()
    y_star = math.log(x) ** 4
    result = _symmetric_search(x, math.floor(y_star), SearchMode.ALMOST, workers)
    count = int(((result.g != 0) & ~result.found).sum())
    records.append(
        ExperimentRecord.build(
            "exceptional-pg-star",
            {"x": x, "Y": y_star},
            float(count),
            heuristic_exceptional_count(x, y_star, star=True),
            started,
            count=count,
        )
    )

    if theta is not None:
        started = time.perf_counter()
        y = larger_sieve_y(x, theta)
        outcome = larger_sieve_bound(gallagher_problem(x, theta))
        result = _symmetric_search(x, math.floor(y), SearchMode.ALMOST, workers)
        count = int(((result.g != 0) & ~result.found).sum())
        dominated = None
        if outcome.available:
            dominated = count <= outcome.bound
            if not dominated:
                logger.error(f"Larger sieve bound {outcome.bound:.6g} fails to dominate count {count} at x={x}")
        records.append(
            ExperimentRecord.build(
                "exceptional-larger-sieve",
                {"x": x, "theta": theta, "y": y},
                float(count),
                heuristic_exceptional_count(x, y, star=True),
                started,
                count=count,
                sieve_available=outcome.available,
                sieve_bound=outcome.bound,
                dominated=dominated,
            )
        )
    return records


def exp_uniformity_sweep(
    g_list: Iterable[int],
    x_list: Iterable[int],
    prime_limit: int = DEFAULT_PRIME_LIMIT,
) -> list[ExperimentRecord]:
    """Ratios Pi(x; g) / (A(g) pi(x)) with the scale (log log x + log log 2|g|) / log x.

    Informational: the implied constant is unknown, so nothing is asserted.
    """
    x_list = sorted(set(x_list))
    for x in x_list:
        _require_x(x, 100)
    table = cached_prime_table(max(x_list)) if x_list else None

    records = []
    for g in g_list:
        if abs(g) <= 1 or decompose(g).is_square:
            logger.warning(f"exp sweep: skipping g={g}, A(g) is undefined outside the Artin domain")
            continue
        a_g = artin_A(g, prime_limit).approx
        for x in x_list:
            started = time.perf_counter()
            pi_xg = count_Pi(x, g)
            pi_x = table.count_upto(x)
            ratio = pi_xg / (a_g * pi_x)
            log_x = math.log(x)
            error_scale = (math.log(log_x) + math.log(math.log(2 * abs(g)))) / log_x
            records.append(
                ExperimentRecord.build(
                    "uniformity-sweep",
                    {"g": g, "x": x},
                    ratio,
                    1.0,
                    started,
                    pi_xg=pi_xg,
                    A_g=a_g,
                    pi_x=pi_x,
                    error_scale=error_scale,
                )
            )
    return records


def _table_for_index(k: int) -> PrimeTable:
    # r_k < k (log k + log log k) for k >= 6
    limit = math.ceil(k * (math.log(k) + math.log(math.log(k)))) if k >= 6 else 15
    return cached_prime_table(max(limit, 2**16))


def exp_vaughan_convergence(
    k_list: Iterable[int],
    m_max: int = 30,
    prime_limit: int = DEFAULT_PRIME_LIMIT,
) -> list[ExperimentRecord]:
    """L_k / k against varrho_0, where prod_{r <= r_k} (1 - phi(r-1)/r) = exp(-L_k)."""
    k_list = sorted(set(k_list))
    if not k_list or k_list[0] < 1:
        raise InvalidArgumentError("k_list must hold positive integers")
    rho0 = varrho0(m_max, prime_limit)
    table = _table_for_index(k_list[-1])

    records = []
    for k in k_list:
        started = time.perf_counter()
        vp = vaughan_product(k, table)
        per_k = vp.log_value / k
        records.append(
            ExperimentRecord.build(
                "vaughan-convergence",
                {"k": k},
                per_k,
                rho0.approx,
                started,
                r_k=vp.r_k,
                L_k=vp.log_value,
                ratio=per_k / rho0.approx,
            )
        )
    return records


def exp_max_pg(
    x: int,
    search_bound: int = DEFAULT_SEARCH_BOUND,
    m_max: int = 30,
    prime_limit: int = DEFAULT_PRIME_LIMIT,
    workers: int = 1,
) -> ExperimentRecord:
    """Largest p_g over g in G, |g| <= x, against the heuristic r_{k0(x)}.

    The reference scale log^19(2|g|) at the maximizing g is recorded only.
    """
    _require_x(x, 100)
    started = time.perf_counter()
    result = _symmetric_search(x, search_bound, SearchMode.PRIMITIVE, workers)
    in_domain = artin_domain_mask(result.g)
    exhausted = int((in_domain & ~result.found).sum())
    if exhausted:
        logger.warning(f"exp maxpg: {exhausted} g exhausted the bound {search_bound}; maximum is a lower bound")

    primes = np.where(in_domain & result.found, result.prime, 0)
    i = int(np.argmax(primes))
    max_pg, argmax_g = int(primes[i]), int(result.g[i])

    rho = varrho(m_max, prime_limit).approx
    k0 = heuristic_max_index(x, rho)
    r_k0 = _table_for_index(math.ceil(k0)).nth(max(1, math.ceil(k0)))
    return ExperimentRecord.build(
        "max-pg",
        {"x": x, "search_bound": search_bound},
        float(max_pg),
        float(r_k0),
        started,
        argmax_g=argmax_g,
        k0=k0,
        reference_log19=math.log(2 * abs(argmax_g)) ** 19,
        exhausted=exhausted,
    )
