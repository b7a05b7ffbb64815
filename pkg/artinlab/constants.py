"""
Density constants around Artin's primitive root conjecture.

Finite products and sums over explicitly bounded primes are exact
``Fraction`` values. Infinite Euler products (A0, sigma_m, C2) are floats
carrying a tail bound: for factors (1 - a_q) over q > Q with a_q <= c/q^2
the reported error is approx * (exp(2c/Q) - 1) plus summation slack.
"""

from __future__ import annotations

import functools
import heapq
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import InvalidArgumentError
from .numth import (
    PowerDecomposition,
    PrimeTable,
    cached_factor_sieve,
    cached_prime_table,
    decompose,
    euler_phi,
    factorize,
    is_probable_prime,
    mobius,
    primes_upto,
)

logger = logging.getLogger(__name__)

_EPS = np.finfo(float).eps

# zeta(2) zeta(3) / zeta(6): sum_{d > D} 1/(d phi(d)) ~ this / D
_DPHI_TAIL_CONSTANT = 1.9435964368207592

HEURISTIC_CUTOFF = 10**4


@dataclass(frozen=True)
class DensityValue:
    """A constant as an exact rational or a float with an error bound.

    When ``exact`` is set, ``error_bound`` only covers rounding ``exact`` to
    ``approx``. Otherwise the true value lies in approx +- error_bound;
    ``heuristic`` marks bounds that are estimates rather than proofs.
    """

    approx: float
    error_bound: float
    exact: Optional[Fraction] = None
    heuristic: bool = False

    @classmethod
    def from_exact(cls, value: Fraction) -> "DensityValue":
        approx = float(value)
        return cls(approx=approx, error_bound=float(abs(value - Fraction(approx))), exact=value)

    @property
    def lower(self) -> float:
        return self.approx - self.error_bound

    @property
    def upper(self) -> float:
        return self.approx + self.error_bound

    def contains(self, value: float) -> bool:
        return self.lower <= value <= self.upper

    def __mul__(self, other: "DensityValue") -> "DensityValue":
        if self.exact is not None and other.exact is not None:
            return DensityValue.from_exact(self.exact * other.exact)
        approx = self.approx * other.approx
        error = (
            abs(self.approx) * other.error_bound
            + abs(other.approx) * self.error_bound
            + self.error_bound * other.error_bound
            + abs(approx) * _EPS
        )
        return DensityValue(approx=approx, error_bound=error, heuristic=self.heuristic or other.heuristic)


def _euler_product(log_factors: np.ndarray, c: float, prime_limit: int) -> DensityValue:
    """exp(sum of log factors) with the tail bound for a_q <= c/q^2 past prime_limit."""
    log_sum = math.fsum(log_factors.tolist())
    approx = math.exp(log_sum)
    slack = approx * (4 * _EPS * abs(log_sum) + 2 * _EPS)
    tail = approx * math.expm1(2 * c / prime_limit)
    return DensityValue(approx=approx, error_bound=tail + slack)


def _require_prime_limit(prime_limit: int) -> None:
    if prime_limit < 100:
        raise InvalidArgumentError(f"prime_limit must be >= 100, got {prime_limit}")


def artin_A0(h: int, prime_limit: int) -> DensityValue:
    """A0(h) = prod_{q | h} (1 - 1/(q-1)) prod_{q not| h} (1 - 1/(q(q-1)))."""
    if h < 1 or h % 2 == 0:
        raise InvalidArgumentError(f"h must be odd and positive, got {h}")
    _require_prime_limit(prime_limit)

    table = cached_prime_table(prime_limit)
    q = table.primes.astype(np.float64)
    a = 1.0 / (q * (q - 1.0))
    h_primes = factorize(h).primes
    for p in h_primes:
        if p <= prime_limit:
            a[int(np.searchsorted(table.primes, p))] = 1.0 / (p - 1)
    value = _euler_product(np.log1p(-a), 1.0, prime_limit)

    beyond = [p for p in h_primes if p > prime_limit]
    if beyond:
        value = value * DensityValue.from_exact(math.prod(Fraction(p - 2, p - 1) for p in beyond))
    return value


def artin_A1(dec: PowerDecomposition) -> DensityValue:
    """Entanglement correction A1(g); exact, in [2/3, 2]."""
    if dec.is_square:
        raise InvalidArgumentError(f"A1 is undefined for the square {dec.g}")
    if dec.g1 % 4 != 1:
        return DensityValue.from_exact(Fraction(1))

    kernel = factorize(abs(dec.g1))
    product = Fraction(1)
    for q in kernel.primes:
        product *= Fraction(1, q - 2) if dec.h % q == 0 else Fraction(1, q * q - q - 1)
    return DensityValue.from_exact(1 - mobius(kernel) * product)


def artin_A(g: int, prime_limit: int) -> DensityValue:
    """Artin's density A(g) = A0(h) A1(g) for g in the Artin domain."""
    if abs(g) <= 1:
        raise InvalidArgumentError(f"A(g) needs |g| > 1, got {g}")
    dec = decompose(g)
    if dec.is_square:
        raise InvalidArgumentError(f"A(g) is undefined for the square {g}")
    return artin_A0(dec.h, prime_limit) * artin_A1(dec)


def _require_squarefree(d: int) -> None:
    if d < 1 or not factorize(d).is_squarefree:
        raise InvalidArgumentError(f"d must be a squarefree positive integer, got {d}")


def epsilon_d(d: int, dec: PowerDecomposition) -> int:
    _require_squarefree(d)
    return 2 if dec.g1 % 4 == 1 and d % (2 * abs(dec.g1)) == 0 else 1


def kummer_degree(d: int, dec: PowerDecomposition) -> int:
    """[Q(zeta_d, g^(1/d)) : Q] = d phi(d) / (epsilon(d) gcd(d, h))."""
    eps = epsilon_d(d, dec)
    numerator = d * euler_phi(d)
    denominator = eps * math.gcd(d, dec.h)
    if numerator % denominator:
        raise AssertionError(f"non-integral Kummer degree for d={d}, g={dec.g}")
    return numerator // denominator


def hooley_sum_truncated(dec: PowerDecomposition, d_limit: int) -> DensityValue:
    """sum_{d <= d_limit} mu(d) / [Q(zeta_d, g^(1/d)) : Q] over squarefree d.

    d is generated in increasing order from a heap of prime subsets, so
    nothing is factorized. The error bound is the heuristic tail
    h * sum_{d > d_limit} 1/(d phi(d)).
    """
    if d_limit < 1:
        raise InvalidArgumentError(f"d_limit must be >= 1, got {d_limit}")

    primes = cached_prime_table(max(d_limit, 2)).primes.tolist()
    two_g1 = 2 * abs(dec.g1)
    entangled = dec.g1 % 4 == 1

    terms = [1.0]
    # (d, index of largest prime, parent, mu(parent), phi(parent))
    heap = [(2, 0, 1, 1, 1)] if d_limit >= 2 else []
    while heap:
        d, i, parent, mu_parent, phi_parent = heapq.heappop(heap)
        p = primes[i]
        mu, phi = -mu_parent, phi_parent * (p - 1)
        eps = 2 if entangled and d % two_g1 == 0 else 1
        terms.append(mu * eps * math.gcd(d, dec.h) / (d * phi))

        if i + 1 < len(primes):
            nxt = primes[i + 1]
            if d * nxt <= d_limit:
                heapq.heappush(heap, (d * nxt, i + 1, d, mu, phi))
            if parent * nxt <= d_limit:
                heapq.heappush(heap, (parent * nxt, i + 1, parent, mu_parent, phi_parent))

    logger.debug(f"Hooley sum for g={dec.g} used {len(terms)} squarefree d <= {d_limit}")
    return DensityValue(
        approx=math.fsum(terms),
        error_bound=dec.h * _DPHI_TAIL_CONSTANT / d_limit,
        heuristic=True,
    )


def F_almost(p: int) -> int:
    """Number of almost primitive roots mod p: 1_{p>2} phi((p-1)/2) + phi(p-1)."""
    if not is_probable_prime(p):
        raise InvalidArgumentError(f"{p} is not prime")
    count = euler_phi(p - 1)
    if p > 2:
        count += euler_phi((p - 1) // 2)
    return count


@dataclass(frozen=True)
class DeltaRow:
    p: int
    delta: Fraction
    partial_sum: Fraction
    weighted_partial_sum: Fraction
    residual: Fraction


@dataclass(frozen=True)
class DeltaTable:
    """Exact delta_p rows up to ``max_prime``.

    At every row, partial_sum + residual == 1 exactly.
    """

    max_prime: int
    rows: tuple[DeltaRow, ...]
    residual_product: Fraction
    star: bool = False

    def row(self, p: int) -> DeltaRow:
        for r in self.rows:
            if r.p == p:
                return r
        raise InvalidArgumentError(f"{p} is not a prime row of this table")

    def rows_upto(self, bound: float) -> tuple[DeltaRow, ...]:
        return tuple(r for r in self.rows if r.p <= bound)


def _build_delta_table(max_prime: int, star: bool) -> DeltaTable:
    if max_prime < 2:
        raise InvalidArgumentError(f"max_prime must be >= 2, got {max_prime}")
    sieve = cached_factor_sieve(max(max_prime, 2))

    residual = Fraction(1)
    partial = Fraction(0)
    weighted = Fraction(0)
    rows = []
    for p in primes_upto(max_prime).tolist():
        weight = euler_phi(sieve.factorize(p - 1))
        if star and p > 2:
            weight += euler_phi(sieve.factorize((p - 1) // 2))
        delta = residual * Fraction(weight, p)
        residual -= delta
        partial += delta
        weighted += p * delta
        rows.append(DeltaRow(p, delta, partial, weighted, residual))

    logger.debug(f"Built {'delta*' if star else 'delta'} table with {len(rows)} rows")
    return DeltaTable(max_prime=max_prime, rows=tuple(rows), residual_product=residual, star=star)


@functools.lru_cache(maxsize=16)
def delta_table(max_prime: int) -> DeltaTable:
    """delta_p = (phi(p-1)/p) prod_{r<p} (1 - phi(r-1)/r) for p <= max_prime."""
    return _build_delta_table(max_prime, star=False)


@functools.lru_cache(maxsize=16)
def delta_star_table(max_prime: int) -> DeltaTable:
    """delta*_p = (F(p)/p) prod_{r<p} (1 - F(r)/r) for p <= max_prime."""
    return _build_delta_table(max_prime, star=True)


def _weighted_mean(table: DeltaTable) -> DensityValue:
    total = table.rows[-1].weighted_partial_sum
    approx = float(total)
    rounding = float(abs(total - Fraction(approx)))
    tail = float(table.max_prime**2 * table.residual_product)
    return DensityValue(approx=approx, error_bound=rounding + tail, heuristic=True)


def mean_pg_predicted(max_prime: int) -> DensityValue:
    """sum_{p <= max_prime} p delta_p, the predicted mean of p_g.

    The error bound max_prime^2 * residual is a heuristic tail majorant.
    """
    if max_prime < 100:
        raise InvalidArgumentError(f"max_prime must be >= 100, got {max_prime}")
    return _weighted_mean(delta_table(max_prime))


def mean_pg_star_predicted(max_prime: int) -> DensityValue:
    """sum_{p <= max_prime} p delta*_p, the predicted mean of p*_g."""
    if max_prime < 100:
        raise InvalidArgumentError(f"max_prime must be >= 100, got {max_prime}")
    return _weighted_mean(delta_star_table(max_prime))


def sigma_m_factor(m: int, p: int) -> Fraction:
    """Exact local factor 1 - (p^m - (p-1)^m)/(p^(m+1) - p^m)."""
    return 1 - Fraction(p**m - (p - 1) ** m, p ** (m + 1) - p**m)


def sigma_m(m: int, prime_limit: int) -> DensityValue:
    """sigma_m = prod_p (1 - (p^m - (p-1)^m)/(p^(m+1) - p^m)); 0 < sigma_m < 2^-m."""
    if m < 1:
        raise InvalidArgumentError(f"m must be >= 1, got {m}")
    _require_prime_limit(prime_limit)

    q = cached_prime_table(prime_limit).primes[1:].astype(np.float64)
    # (1 - (1 - 1/p)^m) / (p - 1)
    a = -np.expm1(m * np.log1p(-1.0 / q)) / (q - 1.0)
    logs = np.concatenate(([-m * math.log(2.0)], np.log1p(-a)))
    return _euler_product(logs, float(m), prime_limit)


def varrho0(m_max: int, prime_limit: int) -> DensityValue:
    """varrho_0 = sum_m sigma_m / m, truncated at m_max with tail < 2^-m_max."""
    if m_max < 1:
        raise InvalidArgumentError(f"m_max must be >= 1, got {m_max}")
    terms, errors = [], []
    for m in range(1, m_max + 1):
        s = sigma_m(m, prime_limit)
        terms.append(s.approx / m)
        errors.append(s.error_bound / m)
    approx = math.fsum(terms)
    error = math.fsum(errors) + 2.0**-m_max + 2 * _EPS * approx
    return DensityValue(approx=approx, error_bound=error)


def varrho(m_max: int, prime_limit: int) -> DensityValue:
    """Vaughan's decay constant varrho = exp(varrho_0) > 1."""
    base = varrho0(m_max, prime_limit)
    approx = math.exp(base.approx)
    return DensityValue(approx=approx, error_bound=approx * math.expm1(base.error_bound) + approx * _EPS)


@dataclass(frozen=True)
class VaughanProduct:
    """prod_{r <= r_k} (1 - phi(r-1)/r) = exp(-L_k)."""

    k: int
    r_k: int
    product: Fraction
    log_value: float


def vaughan_product(k: int, table: PrimeTable) -> VaughanProduct:
    if k < 1:
        raise InvalidArgumentError(f"k must be >= 1, got {k}")
    r_k = table.nth(k)
    primes = table.primes[:k].tolist()
    sieve = cached_factor_sieve(max(r_k, 2))
    numerator = math.prod(r - euler_phi(sieve.factorize(r - 1)) for r in primes)
    denominator = math.prod(primes)
    return VaughanProduct(
        k=k,
        r_k=r_k,
        product=Fraction(numerator, denominator),
        log_value=math.log(denominator) - math.log(numerator),
    )


def _w_primes(x: float) -> list[int]:
    """Odd primes q <= log x; W is their product."""
    bound = math.floor(math.log(x))
    return [q for q in primes_upto(bound).tolist() if q > 2]


def tilde_A0(x: float) -> DensityValue:
    """Exact prod_{2 < q <= log x} (1 - 1/(q-1)); 1 when no such prime exists."""
    if x < math.exp(math.e):
        raise InvalidArgumentError(f"tilde A0 needs x >= e^e, got {x}")
    return DensityValue.from_exact(math.prod((Fraction(q - 2, q - 1) for q in _w_primes(x)), start=Fraction(1)))


def tilde_A1(dec: PowerDecomposition, x: float) -> DensityValue:
    """1 - 1_{g1 = 1 mod 4, g1 | W} prod_{q | g1} (-1/(q-2)); exact, in [2/3, 2]."""
    if x <= 1:
        raise InvalidArgumentError(f"tilde A1 needs x > 1, got {x}")
    if dec.g1 % 4 != 1:
        return DensityValue.from_exact(Fraction(1))
    kernel = factorize(abs(dec.g1)).primes
    w = set(_w_primes(x))
    if not all(q in w for q in kernel):
        return DensityValue.from_exact(Fraction(1))
    product = math.prod((Fraction(-1, q - 2) for q in kernel), start=Fraction(1))
    return DensityValue.from_exact(1 - product)


def twin_prime_C2(prime_limit: int) -> DensityValue:
    """Twin prime constant C2 = prod_{q > 2} (1 - 1/(q-1)^2)."""
    _require_prime_limit(prime_limit)
    q = cached_prime_table(prime_limit).primes[1:].astype(np.float64)
    c = (prime_limit / (prime_limit - 1)) ** 2
    return _euler_product(np.log1p(-1.0 / (q - 1.0) ** 2), c, prime_limit)


def tilde_A0_mertens(x: float, c2: Optional[float] = None) -> float:
    """Mertens-type approximation 2 C2 e^-gamma / log log x of tilde A0."""
    if x <= math.e:
        raise InvalidArgumentError(f"log log x needs x > e, got {x}")
    if c2 is None:
        c2 = twin_prime_C2(10**6).approx
    return 2 * c2 * math.exp(-np.euler_gamma) / math.log(math.log(x))


def heuristic_exceptional_count(x: int, y: float, star: bool = False) -> float:
    """2x prod_{r <= y} (1 - w(r)/r): expected #{|g| <= x : p_g > y}.

    The product is truncated at 10^4, past which it no longer changes the
    float result at any desk-scale x.
    """
    if y < 2:
        return float(2 * x)
    cutoff = min(int(y), HEURISTIC_CUTOFF)
    table = delta_star_table(cutoff) if star else delta_table(cutoff)
    return float(2 * x * table.residual_product)


def heuristic_max_index(x: int, varrho_value: float) -> float:
    """k0(x) = log(2x) / log(varrho); the largest p_g up to x is heuristically r_{k0}."""
    if varrho_value <= 1:
        raise InvalidArgumentError(f"varrho must exceed 1, got {varrho_value}")
    return math.log(2 * x) / math.log(varrho_value)
