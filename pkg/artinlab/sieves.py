"""
Numerical evaluation of the arithmetic large sieve and Gallagher's larger
sieve, plus the prime set S and the logarithmic integral used alongside them.

Bounds are floats inflated by a relative slack of 1e-9, so comparing a bound
with an exact count never fails on rounding.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

import numpy as np

from .constants import tilde_A0, tilde_A1
from .errors import InvalidArgumentError
from .numth import (
    FactoredInteger,
    PrimeTable,
    cached_factor_sieve,
    cached_prime_table,
    decompose,
    euler_phi,
    factorize,
    is_probable_prime,
    kronecker,
)

logger = logging.getLogger(__name__)

BOUND_SLACK = 1e-9


@dataclass(frozen=True)
class LargeSieveProblem:
    """Integers in [M+1, M+N] avoiding nu[p] residue classes mod each prime p <= Q."""

    M: int
    N: int
    Q: float
    nu: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.N < 1:
            raise InvalidArgumentError(f"N must be positive, got {self.N}")
        if self.Q < 1:
            raise InvalidArgumentError(f"Q must be >= 1, got {self.Q}")
        for p, v in self.nu.items():
            if not 0 <= v < p:
                raise InvalidArgumentError(f"nu({p}) = {v} must satisfy 0 <= nu(p) < p")


@dataclass(frozen=True)
class LargerSieveProblem:
    """Integers in an interval of length N lying in nu_bar[d] classes mod each d in D."""

    N: int
    nu_bar: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.N < 1:
            raise InvalidArgumentError(f"N must be positive, got {self.N}")
        for d, v in self.nu_bar.items():
            if v < 1:
                raise InvalidArgumentError(f"nu_bar({d}) = {v} must be >= 1")

    @property
    def D(self) -> tuple[int, ...]:
        return tuple(sorted(self.nu_bar))


@dataclass(frozen=True)
class LargerSieveOutcome:
    """Larger-sieve bound, or unavailable when the denominator is not positive."""

    available: bool
    numerator: float
    denominator: float
    bound: Optional[float] = None


def large_sieve_J(problem: LargeSieveProblem) -> float:
    """J = sum over squarefree n <= Q of prod_{p | n} nu(p)/(p - nu(p)).

    Depth-first over primes with nu(p) >= 1 in increasing order, pruning
    once the running product exceeds Q. Each term is an exact rational.
    """
    q_max = math.floor(problem.Q)
    items = sorted((p, Fraction(v, p - v)) for p, v in problem.nu.items() if v >= 1 and p <= q_max)

    terms = [1.0]
    stack = [(0, 1, Fraction(1))]
    while stack:
        start, n, weight = stack.pop()
        for i in range(start, len(items)):
            p, ratio = items[i]
            m = n * p
            if m > q_max:
                break
            w = weight * ratio
            terms.append(float(w))
            stack.append((i + 1, m, w))
    return math.fsum(terms)


def large_sieve_bound(problem: LargeSieveProblem) -> float:
    """(N + Q^2) / J."""
    return (problem.N + problem.Q**2) / large_sieve_J(problem) * (1 + BOUND_SLACK)


def von_mangoldt(d: int) -> float:
    """Lambda(d): log p when d = p^k, else 0."""
    if d < 2:
        return 0.0
    fac = factorize(d)
    return math.log(fac.primes[0]) if fac.omega == 1 else 0.0


def larger_sieve_bound(problem: LargerSieveProblem) -> LargerSieveOutcome:
    """(sum Lambda(d) - log N) / (sum Lambda(d)/nu_bar(d) - log N), when positive."""
    log_n = math.log(problem.N)
    weights = [(von_mangoldt(d), v) for d, v in sorted(problem.nu_bar.items())]
    numerator = math.fsum([lam for lam, _ in weights] + [-log_n])
    denominator = math.fsum([lam / v for lam, v in weights] + [-log_n])
    if denominator <= 0:
        logger.info(f"Larger sieve unavailable: denominator {denominator:.6g} <= 0")
        return LargerSieveOutcome(available=False, numerator=numerator, denominator=denominator)
    return LargerSieveOutcome(
        available=True,
        numerator=numerator,
        denominator=denominator,
        bound=numerator / denominator * (1 + BOUND_SLACK),
    )


def count_avoiding(M: int, N: int, classes: Mapping[int, set[int]]) -> int:
    """Exact count of n in [M+1, M+N] avoiding every listed class n mod p."""
    n = np.arange(M + 1, M + N + 1, dtype=np.int64)
    keep = np.ones(n.size, dtype=bool)
    for p, residues in classes.items():
        if residues:
            bad = np.zeros(p, dtype=bool)
            bad[list(residues)] = True
            keep &= ~bad[np.mod(n, p)]
    return int(keep.sum())


def build_D_theta(y: float, theta: float, table: PrimeTable) -> tuple[int, ...]:
    """Primes 3 < p <= y whose (p-1)/2 has no prime factor <= y^theta."""
    if not 0 < theta < 1:
        raise InvalidArgumentError(f"theta must lie in (0, 1), got {theta}")
    if y > table.limit:
        raise InvalidArgumentError(f"y = {y} exceeds the prime table limit {table.limit}")
    primes = table.upto(y)
    primes = primes[primes > 3]
    if primes.size == 0:
        return ()
    half = (primes - 1) // 2
    spf = cached_factor_sieve(max(math.ceil(y), 2)).spf[half]
    return tuple(primes[spf > y**theta].tolist())


def _divisor_phis(fac: FactoredInteger) -> list[tuple[int, int]]:
    """(f, phi(f)) for every positive divisor f of fac.n."""
    pairs = [(1, 1)]
    for p, e in fac.factors:
        powers = [(1, 1)] + [(p**k, p ** (k - 1) * (p - 1)) for k in range(1, e + 1)]
        pairs = [(f * pk, phi * phik) for f, phi in pairs for pk, phik in powers]
    return pairs


def _nu_bar(p_minus_one: FactoredInteger, z: float) -> int:
    return 1 + sum(phi for f, phi in _divisor_phis(p_minus_one) if f <= z)


def nu_bar_omega(p: int, z: float) -> int:
    """1 + sum of phi(f) over divisors f of p - 1 with f <= z."""
    if not is_probable_prime(p):
        raise InvalidArgumentError(f"{p} is not prime")
    return _nu_bar(factorize(p - 1), z)


def larger_sieve_y(x: float, theta: float) -> float:
    """y = ((log x)(log log x)^2)^(1/theta)."""
    if x <= math.e:
        raise InvalidArgumentError(f"log log x needs x > e, got {x}")
    if not 0 < theta < 1:
        raise InvalidArgumentError(f"theta must lie in (0, 1), got {theta}")
    log_x = math.log(x)
    return (log_x * math.log(log_x) ** 2) ** (1 / theta)


def gallagher_problem(x: float, theta: float, table: Optional[PrimeTable] = None) -> LargerSieveProblem:
    """Larger-sieve setup for #{|g| <= x : p*_g > y}.

    N = 2 floor(x) + 1, D = build_D_theta(y, theta) and nu_bar(p) counts the
    residues of order <= z = y^(1 - theta), plus 0.
    """
    y = larger_sieve_y(x, theta)
    z = y ** (1 - theta)
    if table is None:
        table = cached_prime_table(math.ceil(y))
    D = build_D_theta(y, theta, table)
    sieve = cached_factor_sieve(max(math.ceil(y), 2))
    logger.info(f"Larger sieve: y={y:,.0f}, z={z:,.0f}, #D={len(D)}")
    return LargerSieveProblem(
        N=2 * math.floor(x) + 1,
        nu_bar={p: _nu_bar(sieve.factorize(p - 1), z) for p in D},
    )


def vaughan_problem(x: float, Y: float) -> LargeSieveProblem:
    """Large-sieve setup for #{|g| <= x : p_g > Y}.

    Integers [-floor(x), floor(x)], Q = sqrt(N), nu(p) = phi(p - 1) for p <= Y.
    """
    N = 2 * math.floor(x) + 1
    Q = math.sqrt(N)
    bound = min(Y, Q)
    sieve = cached_factor_sieve(max(math.floor(bound), 2))
    nu = {}
    for p in cached_prime_table(max(math.floor(bound), 2)).iter_primes(bound):
        nu[p] = euler_phi(sieve.factorize(p - 1))
    return LargeSieveProblem(M=-math.floor(x) - 1, N=N, Q=Q, nu=nu)


def logarithmic_integral(x: float, tol: float = 1e-6) -> float:
    """Li(x) = integral of 1/log t over [2, x], by adaptive Simpson quadrature."""
    if x < 2:
        raise InvalidArgumentError(f"Li(x) needs x >= 2, got {x}")
    if x == 2:
        return 0.0

    def f(t: float) -> float:
        return 1.0 / math.log(t)

    a, b = 2.0, float(x)
    m = (a + b) / 2
    fa, fm, fb = f(a), f(m), f(b)
    whole = (b - a) / 6 * (fa + 4 * fm + fb)

    pieces = []
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    while stack:
        a, b, fa, fm, fb, whole, eps, depth = stack.pop()
        m = (a + b) / 2
        lm, rm = (a + m) / 2, (m + b) / 2
        flm, frm = f(lm), f(rm)
        left = (m - a) / 6 * (fa + 4 * flm + fm)
        right = (b - m) / 6 * (fm + 4 * frm + fb)
        delta = left + right - whole
        if abs(delta) <= 15 * eps or depth >= 50:
            pieces.append(left + right + delta / 15)
        else:
            stack.append((a, m, fa, flm, fm, left, eps / 2, depth + 1))
            stack.append((m, b, fm, frm, fb, right, eps / 2, depth + 1))
    return math.fsum(pieces)


@dataclass(frozen=True)
class SCount:
    """#S with its predicted main term (tilde A0 tilde A1 / 2) Li(x)."""

    x: int
    g: int
    count: int
    tilde_a0: Fraction
    tilde_a1: Fraction
    li: float
    predicted: float


def count_S(x: int, g: int) -> SCount:
    """Count odd primes p <= x with (g/p) = -1 and gcd(p - 1, W) = 1."""
    if x < 10:
        raise InvalidArgumentError(f"x must be >= 10, got {x}")
    if abs(g) <= 1:
        raise InvalidArgumentError(f"S needs |g| > 1, got {g}")

    w_primes = [q for q in cached_prime_table(max(x, 2)).iter_primes(math.log(x)) if q > 2]
    count = 0
    for p in cached_prime_table(max(x, 2)).iter_primes(x):
        if p == 2 or kronecker(g, p) != -1:
            continue
        if all((p - 1) % q for q in w_primes):
            count += 1

    a0 = tilde_A0(x).exact if x >= math.exp(math.e) else Fraction(1)
    a1 = tilde_A1(decompose(g), x).exact
    li = logarithmic_integral(x)
    return SCount(x=x, g=g, count=count, tilde_a0=a0, tilde_a1=a1, li=li, predicted=float(a0 * a1 / 2) * li)
