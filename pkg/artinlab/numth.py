"""
Foundational integer arithmetic for artinlab.

Prime tables (segmented sieve), factorization, arithmetic functions, the
Kronecker symbol, multiplicative orders and the decomposition of g into its
squarefree kernel g1 and power exponent h.
"""

from __future__ import annotations

import functools
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Iterator, Optional, Union

import numpy as np

from .errors import DomainError, InvalidArgumentError

logger = logging.getLogger(__name__)

# Bytes of sieve buffer per segment; one byte per odd integer.
DEFAULT_SEGMENT_BYTES = 1 << 20

# Trial division bound used by factorize() before falling back to rho.
TRIAL_DIVISION_LIMIT = 10**6

# Miller-Rabin with these bases is exact below _MR_EXACT_LIMIT.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_EXACT_LIMIT = 3317044064679887385961981

_INT64_MAX = 2**63 - 1


def primes_upto(limit: int) -> np.ndarray:
    """All primes <= limit by a plain sieve of Eratosthenes (small limits)."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """Immutable sorted table of all primes up to ``limit``."""

    limit: int
    primes: np.ndarray

    def __post_init__(self):
        self.primes.setflags(write=False)

    def __len__(self) -> int:
        return int(self.primes.size)

    def __contains__(self, n: int) -> bool:
        if n < 2 or n > self.limit:
            return False
        i = int(np.searchsorted(self.primes, n))
        return i < self.primes.size and int(self.primes[i]) == n

    def count_upto(self, x: float) -> int:
        """pi(x), the number of primes not exceeding x."""
        if x > self.limit:
            raise InvalidArgumentError(
                f"pi({x}) needs primes beyond the table limit {self.limit}"
            )
        return int(np.searchsorted(self.primes, math.floor(x), side="right"))

    def upto(self, x: float) -> np.ndarray:
        """Read-only view of the primes not exceeding x."""
        return self.primes[: self.count_upto(x)]

    def nth(self, k: int) -> int:
        """The k-th prime r_k (1-based, r_1 = 2)."""
        if k < 1 or k > len(self):
            raise InvalidArgumentError(
                f"r_{k} is not in a table holding {len(self)} primes"
            )
        return int(self.primes[k - 1])

    def iter_primes(self, bound: Optional[float] = None, chunk: int = 4096) -> Iterator[int]:
        """Yield primes as Python ints, in increasing order, up to ``bound``."""
        stop = len(self) if bound is None else self.count_upto(min(bound, self.limit))
        for start in range(0, stop, chunk):
            yield from self.primes[start : min(start + chunk, stop)].tolist()

    def factorize(self, n: int) -> "FactoredInteger":
        """Factor n by trial division over the table, then rho for what remains."""
        return factorize(n, table=self)


def build_prime_table(limit: int, segment_bytes: int = DEFAULT_SEGMENT_BYTES) -> PrimeTable:
    """Build a PrimeTable with an odd-only segmented sieve.

    Args:
        limit: Largest integer to sieve (inclusive)
        segment_bytes: Sieve buffer size per segment; one byte per odd number

    Returns:
        PrimeTable holding every prime <= limit

    Raises:
        InvalidArgumentError: If limit < 2 or does not fit a machine word
    """
    if limit < 2:
        raise InvalidArgumentError(f"prime table limit must be >= 2, got {limit}")
    if limit > _INT64_MAX:
        raise InvalidArgumentError(f"prime table limit {limit} does not fit 64 bits")
    if segment_bytes < 1:
        raise InvalidArgumentError("segment size must be positive")

    odd_base = primes_upto(math.isqrt(limit))[1:].tolist()
    chunks = [np.array([2], dtype=np.int64)]
    span = 2 * segment_bytes

    low = 3
    while low <= limit:
        high = min(low + span, limit + 1)  # exclusive
        mask = np.ones((high - low + 1) // 2, dtype=bool)
        for p in odd_base:
            p2 = p * p
            if p2 >= high:
                break
            start = max(p2, ((low + p - 1) // p) * p)
            if start % 2 == 0:
                start += p
            if start >= high:
                continue
            mask[(start - low) // 2 :: p] = False
        chunks.append(low + 2 * np.flatnonzero(mask).astype(np.int64))
        low = high

    primes = np.concatenate(chunks)
    logger.debug(f"Sieved {primes.size} primes up to {limit}")
    return PrimeTable(limit=limit, primes=primes)


@functools.lru_cache(maxsize=8)
def cached_prime_table(limit: int, segment_bytes: int = DEFAULT_SEGMENT_BYTES) -> PrimeTable:
    """Process-wide shared PrimeTable for ``limit``."""
    logger.info(f"Building prime table up to {limit:,}")
    return build_prime_table(limit, segment_bytes)


@functools.lru_cache(maxsize=1)
def _trial_primes() -> tuple[int, ...]:
    return tuple(cached_prime_table(TRIAL_DIVISION_LIMIT).primes.tolist())


class SmallestFactorSieve:
    """Smallest-prime-factor table for fast bulk factorization of n <= limit."""

    def __init__(self, limit: int):
        if limit < 2:
            raise InvalidArgumentError(f"factor sieve limit must be >= 2, got {limit}")
        self.limit = limit
        dtype = np.int32 if limit < 2**31 else np.int64
        spf = np.zeros(limit + 1, dtype=dtype)
        for p in primes_upto(math.isqrt(limit)).tolist():
            block = spf[p * p :: p]
            block[block == 0] = p
        rest = np.flatnonzero(spf == 0)
        spf[rest] = rest
        spf.setflags(write=False)
        self.spf = spf

    def smallest_factor(self, n: int) -> int:
        return int(self.spf[n])

    def factorize(self, n: int) -> "FactoredInteger":
        if n < 1 or n > self.limit:
            raise InvalidArgumentError(f"{n} is outside the factor sieve range [1, {self.limit}]")
        factors = []
        m = n
        while m > 1:
            p = int(self.spf[m])
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
        return FactoredInteger(n=n, sign=1, factors=tuple(factors))


@functools.lru_cache(maxsize=4)
def cached_factor_sieve(limit: int) -> SmallestFactorSieve:
    logger.info(f"Building smallest-factor sieve up to {limit:,}")
    return SmallestFactorSieve(limit)


@dataclass(frozen=True)
class FactoredInteger:
    """A nonzero integer with its exact prime factorization."""

    n: int
    sign: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.sign * math.prod(p**e for p, e in self.factors) != self.n:
            raise ValueError(f"factorization {self.factors} does not reconstruct {self.n}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def omega(self) -> int:
        return len(self.factors)

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    @property
    def smallest_prime(self) -> Optional[int]:
        """P^-(n); None for n = +-1."""
        return self.factors[0][0] if self.factors else None

    @property
    def largest_prime(self) -> Optional[int]:
        """P^+(n); None for n = +-1."""
        return self.factors[-1][0] if self.factors else None

    def divisors(self) -> list[int]:
        """Positive divisors of |n| in increasing order."""
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**k for d in divs for k in range(e + 1)]
        return sorted(divs)


IntOrFactored = Union[int, FactoredInteger]


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for every n < 3.3e24 (all 64-bit n)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    if n >= _MR_EXACT_LIMIT:
        logger.debug(f"Primality of {n} is probable, not proven")
    return True


def pollard_brent(n: int) -> int:
    """Nontrivial factor of a composite n (Brent's cycle finding, fixed seeds)."""
    if n < 4 or is_probable_prime(n):
        raise InvalidArgumentError(f"pollard_brent needs a composite, got {n}")
    if n % 2 == 0:
        return 2
    for c in itertools.count(1):
        y, r, q, g = 2, 1, 1, 1
        m = 128
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise AssertionError("unreachable")


def _split_into(m: int, counts: dict[int, int]) -> None:
    stack = [m]
    while stack:
        k = stack.pop()
        if k == 1:
            continue
        if is_probable_prime(k):
            counts[k] = counts.get(k, 0) + 1
            continue
        d = pollard_brent(k)
        stack.extend((d, k // d))


def factorize(n: int, table: Optional[PrimeTable] = None) -> FactoredInteger:
    """Exact factorization of a nonzero integer.

    Trial division by the primes of ``table`` (default: primes up to 10^6),
    then Miller-Rabin and Pollard-Brent for any cofactor that remains.

    Raises:
        InvalidArgumentError: If n == 0
    """
    if n == 0:
        raise InvalidArgumentError("cannot factorize 0")
    sign = -1 if n < 0 else 1
    m = abs(n)
    counts: dict[int, int] = {}
    trial = _trial_primes() if table is None else table.primes.tolist()
    bound = TRIAL_DIVISION_LIMIT if table is None else table.limit
    for p in trial:
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            counts[p] = e
    if m > 1:
        if m <= bound * bound or is_probable_prime(m):
            counts[m] = counts.get(m, 0) + 1
        else:
            _split_into(m, counts)
    return FactoredInteger(n=n, sign=sign, factors=tuple(sorted(counts.items())))


def _as_positive_factored(n: IntOrFactored) -> FactoredInteger:
    f = n if isinstance(n, FactoredInteger) else factorize(n) if n != 0 else None
    if f is None or f.n < 1:
        raise InvalidArgumentError(f"expected a positive integer, got {n}")
    return f


def euler_phi(n: IntOrFactored) -> int:
    """Euler's totient phi(n) for n >= 1."""
    f = _as_positive_factored(n)
    return math.prod(p ** (e - 1) * (p - 1) for p, e in f.factors)


def mobius(n: IntOrFactored) -> int:
    """Moebius function mu(n) for n >= 1."""
    f = _as_positive_factored(n)
    if not f.is_squarefree:
        return 0
    return -1 if f.omega % 2 else 1


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), for any integers a and n."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        v = 0
        while n % 2 == 0:
            n //= 2
            v += 1
        if v % 2 == 1 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol for odd positive n
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    """base^exponent mod modulus, in [0, modulus).

    Python integers do not overflow, so the built-in square-and-multiply
    ``pow`` is exact for every modulus size.
    """
    if modulus < 2:
        raise InvalidArgumentError(f"modulus must be >= 2, got {modulus}")
    if exponent < 0:
        raise InvalidArgumentError(f"exponent must be nonnegative, got {exponent}")
    return pow(base, exponent, modulus)


def multiplicative_order(g: int, p: int, p_minus_one: Optional[FactoredInteger] = None) -> int:
    """Order of g in (Z/pZ)^x, found by stripping prime factors off p - 1.

    Raises:
        DomainError: If p divides g
    """
    if g % p == 0:
        raise DomainError(f"{p} divides {g}; g has no order mod p")
    fac = p_minus_one if p_minus_one is not None else factorize(p - 1)
    t = p - 1
    for q, e in fac.factors:
        for _ in range(e):
            if pow(g, t // q, p) == 1:
                t //= q
            else:
                break
    return t


def least_primitive_root(p: int, p_minus_one: Optional[FactoredInteger] = None) -> int:
    """g_p, the least positive primitive root modulo the prime p."""
    if not is_probable_prime(p):
        raise InvalidArgumentError(f"{p} is not prime")
    if p == 2:
        return 1
    fac = p_minus_one if p_minus_one is not None else factorize(p - 1)
    exponents = [(p - 1) // q for q in fac.primes]
    for g in range(2, p):
        if all(pow(g, e, p) != 1 for e in exponents):
            return g
    raise AssertionError(f"no primitive root found mod {p}")


def is_perfect_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def is_squarefree(n: int) -> bool:
    return n != 0 and factorize(n).is_squarefree


def _odd_part(n: int) -> int:
    while n % 2 == 0:
        n //= 2
    return n


@dataclass(frozen=True)
class PowerDecomposition:
    """g with its squarefree kernel g1, power exponent h and discriminant of Q(sqrt g1)."""

    g: int
    g1: int
    h: int
    is_square: bool
    delta: Optional[int]

    @property
    def in_artin_domain(self) -> bool:
        """Membership in G = {|g| > 1, g not a square}."""
        return not self.is_square


def decompose(g: int) -> PowerDecomposition:
    """Decompose g (|g| > 1) as g in g1 (Q^x)^2 and g in (Q^x)^h.

    For negative g only odd h are possible, so h is the largest odd divisor
    of the gcd of the prime exponents.

    Raises:
        InvalidArgumentError: If |g| <= 1
    """
    if abs(g) <= 1:
        raise InvalidArgumentError(f"decompose needs |g| > 1, got {g}")
    f = factorize(g)
    exponent_gcd = math.gcd(*(e for _, e in f.factors))
    g1 = f.sign * math.prod(p for p, e in f.factors if e % 2)
    is_square = g > 0 and exponent_gcd % 2 == 0
    h = exponent_gcd if g > 0 else _odd_part(exponent_gcd)
    if g1 == 1:
        delta = None
    else:
        delta = g1 if g1 % 4 == 1 else 4 * g1
    return PowerDecomposition(g=g, g1=g1, h=h, is_square=is_square, delta=delta)
