"""
Primitive-root predicates, prime counts and least-Artin-prime searches.

Scalar operations work on one g at a time. batch_search() resolves a whole
range of g by walking primes in increasing order and looking each
unresolved g up in a precomputed residue mask for that prime.
"""

from __future__ import annotations

import functools
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator, Optional

import numpy as np

from .errors import DomainError, InvalidArgumentError
from .numth import (
    FactoredInteger,
    cached_factor_sieve,
    cached_prime_table,
    factorize,
    is_perfect_square,
    is_probable_prime,
    least_primitive_root,
)
from .parallel import map_blocks, partition

logger = logging.getLogger(__name__)

# Above this bound p - 1 is factored by trial division instead of a sieve.
FACTOR_SIEVE_LIMIT = 10**7

# Batch mode hands the remaining g to the scalar path once p exceeds
# this many times the number of unresolved g.
SCALAR_SWITCH_RATIO = 32

# Residue masks are built with int64 products, so p must stay below 2^31.
_MASK_PRIME_LIMIT = 2**31

_G_MAGNITUDE_LIMIT = 2**62

_MIN_TABLE = 2**16

DEFAULT_BLOCK_SIZE = 2**16


class SearchMode(Enum):
    """Which predicate a least-prime search looks for."""
    PRIMITIVE = "primitive"
    ALMOST = "almost"


class ResultKind(Enum):
    FOUND = "found"
    PROVEN_INFINITE = "proven-infinite"
    BOUND_EXHAUSTED = "bound-exhausted"
    # batch slot with no search to run (g = 0 in almost mode)
    UNDEFINED = "undefined"


_KINDS = (ResultKind.FOUND, ResultKind.PROVEN_INFINITE, ResultKind.BOUND_EXHAUSTED, ResultKind.UNDEFINED)
_FOUND, _INFINITE, _EXHAUSTED, _UNDEFINED = range(4)


@dataclass(frozen=True)
class RootSearchResult:
    """Outcome of a p_g / p*_g search."""

    kind: ResultKind
    prime: Optional[int] = None
    search_bound: Optional[int] = None

    @classmethod
    def found(cls, p: int) -> "RootSearchResult":
        return cls(ResultKind.FOUND, prime=p)

    @classmethod
    def proven_infinite(cls) -> "RootSearchResult":
        return cls(ResultKind.PROVEN_INFINITE)

    @classmethod
    def exhausted(cls, search_bound: int) -> "RootSearchResult":
        return cls(ResultKind.BOUND_EXHAUSTED, search_bound=search_bound)

    @classmethod
    def undefined(cls) -> "RootSearchResult":
        return cls(ResultKind.UNDEFINED)

    @property
    def is_found(self) -> bool:
        return self.kind is ResultKind.FOUND


@dataclass(frozen=True)
class LTestOutcome:
    p: int
    ell: int
    passed: bool


def _p_minus_one_factorer(bound: int) -> Callable[[int], FactoredInteger]:
    if bound <= FACTOR_SIEVE_LIMIT:
        return cached_factor_sieve(max(bound, _MIN_TABLE)).factorize
    return factorize


def _primes(bound: float) -> Iterator[int]:
    """Primes <= bound from a shared table (small bounds share one table)."""
    return cached_prime_table(max(math.floor(bound), _MIN_TABLE)).iter_primes(bound)


def _require_prime(p: int) -> None:
    if not is_probable_prime(p):
        raise InvalidArgumentError(f"{p} is not prime")


def ell_test(g: int, p: int, ell: int) -> LTestOutcome:
    """p fails the ell-test iff p = 1 (mod ell) and g^((p-1)/ell) = 1 (mod p)."""
    if g % p == 0:
        raise DomainError(f"{p} divides {g}")
    fails = p % ell == 1 and pow(g, (p - 1) // ell, p) == 1
    return LTestOutcome(p=p, ell=ell, passed=not fails)


def _primitive_at(g: int, p: int, p_minus_one: FactoredInteger) -> bool:
    if g % p == 0:
        return False
    return all(pow(g, (p - 1) // q, p) != 1 for q in p_minus_one.primes)


def _almost_primitive_at(g: int, p: int, p_minus_one: FactoredInteger) -> bool:
    # index (p-1)/ord(g) <= 2: no odd prime divides it and 4 does not
    if g % p == 0:
        return False
    for q, e in p_minus_one.factors:
        if q == 2:
            if e >= 2 and pow(g, (p - 1) // 4, p) == 1:
                return False
        elif pow(g, (p - 1) // q, p) == 1:
            return False
    return True


_PREDICATES = {SearchMode.PRIMITIVE: _primitive_at, SearchMode.ALMOST: _almost_primitive_at}


def is_primitive_root(g: int, p: int) -> bool:
    """True iff p does not divide g and g has order p - 1 mod p."""
    _require_prime(p)
    return _primitive_at(g, p, factorize(p - 1))


def is_almost_primitive_root(g: int, p: int) -> bool:
    """True iff p does not divide g and g generates a subgroup of index <= 2."""
    _require_prime(p)
    return _almost_primitive_at(g, p, factorize(p - 1))


def _require_count_args(x: int, g: int, min_x: int = 2) -> None:
    if x < min_x:
        raise InvalidArgumentError(f"x must be >= {min_x}, got {x}")


def count_Pi(x: int, g: int) -> int:
    """Pi(x; g): primes p <= x with g a primitive root mod p."""
    _require_count_args(x, g)
    if abs(g) <= 1:
        raise InvalidArgumentError(f"Pi(x; g) needs |g| > 1, got {g}")
    factor = _p_minus_one_factorer(x)
    return sum(1 for p in _primes(x) if _primitive_at(g, p, factor(p - 1)))


def count_Pi0(x: int, g: int) -> int:
    """Pi0(x; g): primes p <= x, p not dividing g, passing every ell-test for ell <= log x."""
    _require_count_args(x, g, min_x=3)
    ells = list(_primes(math.log(x)))
    count = 0
    for p in _primes(x):
        if g % p == 0:
            continue
        if all(p % ell != 1 or pow(g, (p - 1) // ell, p) != 1 for ell in ells):
            count += 1
    return count


def count_Nd(x: int, g: int, d: int) -> int:
    """N_d(x; g): primes p <= x, p not dividing g, failing the ell-test for every ell | d."""
    _require_count_args(x, g)
    if d < 1 or not factorize(d).is_squarefree:
        raise InvalidArgumentError(f"d must be a squarefree positive integer, got {d}")
    return sum(
        1
        for p in _primes(x)
        if g % p != 0 and p % d == 1 % d and pow(g, (p - 1) // d, p) == 1
    )


def _is_even_square(g: int) -> bool:
    return g % 2 == 0 and is_perfect_square(g)


def _scan(g: int, search_bound: int, mode: SearchMode, start: int = 2) -> RootSearchResult:
    predicate = _PREDICATES[mode]
    factor = _p_minus_one_factorer(search_bound)
    for p in _primes(search_bound):
        if p < start or g % p == 0:
            continue
        if predicate(g, p, factor(p - 1)):
            return RootSearchResult.found(p)
    return RootSearchResult.exhausted(search_bound)


def _require_search_bound(search_bound: int) -> None:
    if search_bound < 2:
        raise InvalidArgumentError(f"search_bound must be >= 2, got {search_bound}")


def least_artin_prime(g: int, search_bound: int) -> RootSearchResult:
    """p_g, the least prime modulo which g is a primitive root.

    Even perfect squares (0 included) are quadratic residues modulo every
    odd prime and vanish mod 2, so they are ProvenInfinite. Every other g
    either yields Found or BoundExhausted; exhaustion is logged.
    """
    _require_search_bound(search_bound)
    if _is_even_square(g):
        return RootSearchResult.proven_infinite()
    if g % 2:
        return RootSearchResult.found(2)
    result = _scan(g, search_bound, SearchMode.PRIMITIVE, start=3)
    if not result.is_found:
        logger.warning(f"p_g search for g={g} exhausted the bound {search_bound}")
    return result


def least_almost_artin_prime(g: int, search_bound: int) -> RootSearchResult:
    """p*_g, the least prime modulo which g generates a subgroup of index <= 2.

    Never ProvenInfinite: finiteness of p*_g is not claimed.
    """
    if g == 0:
        raise InvalidArgumentError("p*_g is undefined for g = 0")
    _require_search_bound(search_bound)
    if g % 2:
        return RootSearchResult.found(2)
    result = _scan(g, search_bound, SearchMode.ALMOST, start=3)
    if not result.is_found:
        logger.warning(f"p*_g search for g={g} exhausted the bound {search_bound}")
    return result


def _power_residues(generator: int, exponents: np.ndarray, p: int) -> np.ndarray:
    """generator^k mod p for every k in ``exponents`` (vectorized square-and-multiply)."""
    result = np.ones_like(exponents)
    base = generator % p
    e = exponents.copy()
    while e.any():
        odd = (e & 1).astype(bool)
        result[odd] = result[odd] * base % p
        base = base * base % p
        e >>= 1
    return result


@functools.lru_cache(maxsize=4096)
def residue_mask(p: int, mode: SearchMode) -> np.ndarray:
    """Boolean mask over Z/pZ marking the (almost) primitive-root residues.

    Residues are gamma^k for a primitive root gamma and exponents k with
    gcd(k, p - 1) == 1 (primitive) or <= 2 (almost primitive).
    """
    if p >= _MASK_PRIME_LIMIT:
        raise InvalidArgumentError(f"residue masks need p < 2^31, got {p}")
    gamma = least_primitive_root(p)
    k = np.arange(1, p, dtype=np.int64)
    index = np.gcd(k, p - 1)
    keep = index == 1 if mode is SearchMode.PRIMITIVE else index <= 2
    mask = np.zeros(p, dtype=bool)
    mask[_power_residues(gamma, k[keep], p)] = True
    mask.setflags(write=False)
    return mask


def perfect_square_mask(g: np.ndarray) -> np.ndarray:
    """Elementwise "g is a perfect square" (0 included) for an int64 array."""
    nonneg = np.clip(g, 0, None)
    r = np.floor(np.sqrt(nonneg.astype(np.float64))).astype(np.int64)
    r -= (r * r > nonneg).astype(np.int64)
    r += ((r + 1) * (r + 1) <= nonneg).astype(np.int64)
    return (g >= 0) & (r * r == g)


def artin_domain_mask(g: np.ndarray) -> np.ndarray:
    """Elementwise membership in G = {|g| > 1, g not a square}."""
    return (np.abs(g) > 1) & ~perfect_square_mask(g)


def _search_block(g_min: int, g_max: int, search_bound: int, mode: SearchMode) -> tuple[np.ndarray, np.ndarray]:
    """Resolve every g in [g_min, g_max]; returns (kind codes, primes)."""
    g = np.arange(g_min, g_max + 1, dtype=np.int64)
    kind = np.full(g.size, _EXHAUSTED, dtype=np.int8)
    prime = np.zeros(g.size, dtype=np.int64)
    unresolved = np.ones(g.size, dtype=bool)

    if mode is SearchMode.PRIMITIVE:
        infinite = perfect_square_mask(g) & (g % 2 == 0)
        kind[infinite] = _INFINITE
        unresolved &= ~infinite
    else:
        kind[g == 0] = _UNDEFINED
        unresolved &= g != 0

    for p in _primes(search_bound):
        idx = np.flatnonzero(unresolved)
        if idx.size == 0:
            break
        if p > SCALAR_SWITCH_RATIO * idx.size or p >= _MASK_PRIME_LIMIT:
            logger.debug(f"Block [{g_min}, {g_max}]: {idx.size} g left at p={p}, switching to scalar")
            for i in idx.tolist():
                result = _scan(int(g[i]), search_bound, mode, start=p)
                if result.is_found:
                    kind[i] = _FOUND
                    prime[i] = result.prime
            break
        hit = idx[residue_mask(p, mode)[np.mod(g[idx], p)]]
        kind[hit] = _FOUND
        prime[hit] = p
        unresolved[hit] = False

    return kind, prime


@dataclass(frozen=True, eq=False)
class BatchResult:
    """Array form of a range search: one (g, kind, prime) triple per g, g ascending."""

    g: np.ndarray
    kind: np.ndarray
    prime: np.ndarray
    search_bound: int
    mode: SearchMode

    def __len__(self) -> int:
        return int(self.g.size)

    def result_at(self, i: int) -> RootSearchResult:
        code = int(self.kind[i])
        if code == _FOUND:
            return RootSearchResult.found(int(self.prime[i]))
        if code == _INFINITE:
            return RootSearchResult.proven_infinite()
        if code == _UNDEFINED:
            return RootSearchResult.undefined()
        return RootSearchResult.exhausted(self.search_bound)

    def __iter__(self) -> Iterator[tuple[int, RootSearchResult]]:
        for i in range(len(self)):
            yield int(self.g[i]), self.result_at(i)

    @property
    def found(self) -> np.ndarray:
        return self.kind == _FOUND

    @property
    def exhausted(self) -> np.ndarray:
        return self.kind == _EXHAUSTED

    @property
    def proven_infinite(self) -> np.ndarray:
        return self.kind == _INFINITE

    def kind_labels(self) -> list[str]:
        return [_KINDS[c].value for c in self.kind.tolist()]


def batch_search(
    g_min: int,
    g_max: int,
    search_bound: int,
    mode: SearchMode = SearchMode.PRIMITIVE,
    workers: int = 1,
    block_size: int = DEFAULT_BLOCK_SIZE,
) -> BatchResult:
    """Least (almost) Artin primes for every g in [g_min, g_max].

    Results equal the per-g scalar searches, except that g = 0 in almost
    mode reports Undefined instead of raising; it never counts as exhausted.
    """
    if g_min > g_max:
        raise InvalidArgumentError(f"empty range [{g_min}, {g_max}]")
    if max(abs(g_min), abs(g_max)) >= _G_MAGNITUDE_LIMIT:
        raise InvalidArgumentError("|g| must stay below 2^62 in batch mode")
    _require_search_bound(search_bound)

    blocks = [(lo, hi, search_bound, mode) for lo, hi in partition(g_min, g_max, block_size)]
    logger.info(f"Batch {mode.value} search over [{g_min}, {g_max}] in {len(blocks)} blocks")
    parts = map_blocks(_search_block, blocks, workers)

    result = BatchResult(
        g=np.arange(g_min, g_max + 1, dtype=np.int64),
        kind=np.concatenate([k for k, _ in parts]),
        prime=np.concatenate([p for _, p in parts]),
        search_bound=search_bound,
        mode=mode,
    )
    exhausted = int(result.exhausted.sum())
    if exhausted:
        logger.warning(f"{exhausted} g in [{g_min}, {g_max}] exhausted the search bound {search_bound}")
    return result


def batch_least_artin(
    g_min: int,
    g_max: int,
    search_bound: int,
    mode: SearchMode = SearchMode.PRIMITIVE,
    workers: int = 1,
) -> list[tuple[int, RootSearchResult]]:
    """List-of-pairs view of batch_search()."""
    return list(batch_search(g_min, g_max, search_bound, mode, workers))


def spot_check(result: BatchResult, fraction: float = 0.01, seed: int = 0) -> list[int]:
    """Recompute a seeded random subsample with the scalar path; return mismatching g."""
    if not 0 < fraction <= 1:
        raise InvalidArgumentError(f"fraction must lie in (0, 1], got {fraction}")
    rng = np.random.default_rng(seed)
    size = max(1, round(fraction * len(result)))
    sample = np.sort(rng.choice(len(result), size=size, replace=False))

    scalar = least_artin_prime if result.mode is SearchMode.PRIMITIVE else least_almost_artin_prime
    mismatches = []
    for i in sample.tolist():
        g = int(result.g[i])
        if g == 0 and result.mode is SearchMode.ALMOST:
            continue
        if scalar(g, result.search_bound) != result.result_at(i):
            mismatches.append(g)
    if mismatches:
        logger.error(f"Spot check found {len(mismatches)} batch/scalar mismatches")
    return mismatches
