"""Exact arithmetic primitives: factorization, scalar multiplicative
functions, zeta evaluation, and dense sieve tables.

Everything here is deterministic and works on plain Python integers, so
values like J_4(n) for n around 10**6 (which need more than 64 bits) are
exact.  The only place a fixed width appears is the binary sieve-cache
format, whose entries are signed 64-bit.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

__all__ = [
    "BigRational",
    "FactoredInteger",
    "SieveTable",
    "InternalAssertionError",
    "MemoryBudgetError",
    "is_prime",
    "factorize",
    "divisors",
    "mobius",
    "jordan",
    "generalized_gcd",
    "tau",
    "tau_s",
    "divisor_sigma",
    "zeta",
    "zeta_upper_bound",
    "primes_upto",
    "sieve",
    "shared_sieve",
    "write_sieve_cache",
    "read_sieve_cache",
]


# Exact rationals, always reduced, denominator > 0, canonical zero 0/1.
# fractions.Fraction guarantees precisely this, so it is used as-is.
BigRational = Fraction


class InternalAssertionError(ArithmeticError):
    """A numeric self-check failed.  Signals a bug, never bad input."""


class MemoryBudgetError(ValueError):
    """A requested table would exceed the allowed memory budget."""


# ---------------------------------------------------------------------------
# factorization

_FACTOR_LIMIT = 2**63
_TRIAL_LIMIT = 10**6
# Deterministic witness set for Miller-Rabin below 3.3e24, far beyond 2^63.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@lru_cache(maxsize=1)
def _trial_primes() -> list[int]:
    return primes_upto(_TRIAL_LIMIT).tolist()


def primes_upto(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array (Eratosthenes)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def is_prime(n: int) -> bool:
    """Miller-Rabin with a fixed witness set; deterministic for n < 2^63."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = ((d & -d).bit_length()) - 1
    d >>= r
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """Non-trivial factor of an odd composite n (Brent's cycle finding).

    The parameter sweep is fixed, so the result is deterministic.
    """
    for c in range(1, 100):
        y, r, q = 2, 1, 1
        g = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise InternalAssertionError(f"rho parameter sweep exhausted on {n}")


@dataclass(frozen=True)
class FactoredInteger:
    """A positive integer together with its full prime factorization.

    ``factors`` is ordered by increasing prime; ``value == 1`` iff it is
    empty.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        prod = 1
        prev = 0
        for p, e in self.factors:
            if p < 2 or p <= prev or e < 1:
                raise ValueError(f"malformed factorization {self.factors!r}")
            prev = p
            prod *= p**e
        if prod != self.value or self.value < 1:
            raise ValueError(f"{self.factors!r} does not factor {self.value}")


def _factor_backend(n: int) -> list[tuple[int, int]]:
    out = []
    m = n
    for p in _trial_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        if m == 1:
            break
    if m > 1:
        if p * p > m or is_prime(m):
            out.append((m, 1))
        else:
            # survivor is composite with all prime factors > 10^6
            stack, found = [m], {}
            while stack:
                t = stack.pop()
                if is_prime(t):
                    found[t] = found.get(t, 0) + 1
                    continue
                d = _pollard_rho(t)
                stack.extend((d, t // d))
            out.extend(sorted(found.items()))
    return sorted(out)


@lru_cache(maxsize=1 << 17)
def factorize(n: int) -> FactoredInteger:
    """Unique prime factorization of n, 1 <= n < 2^63.

    Trial division by sieved primes up to 10^6, then deterministic
    Miller-Rabin plus Pollard rho for anything that survives.
    """
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f"factorize expects an integer, got {type(n).__name__}")
    if not 1 <= n < _FACTOR_LIMIT:
        raise ValueError(f"factorize requires 1 <= n < 2^63, got {n}")
    if n == 1:
        return FactoredInteger(1, ())
    return FactoredInteger(n, tuple(_factor_backend(n)))


def _coerce(n) -> FactoredInteger:
    return n if isinstance(n, FactoredInteger) else factorize(n)


def divisors(n) -> list[int]:
    """Sorted list of positive divisors."""
    fi = _coerce(n)
    out = [1]
    for p, e in fi.factors:
        out = [d * p**i for d in out for i in range(e + 1)]
    return sorted(out)


# ---------------------------------------------------------------------------
# scalar arithmetic functions

def mobius(n) -> int:
    """Mobius mu: 1 at n=1, (-1)^omega(n) for squarefree n, else 0."""
    fi = _coerce(n)
    if any(e > 1 for _, e in fi.factors):
        return 0
    return -1 if len(fi.factors) % 2 else 1


def jordan(k: int, n) -> int:
    """Jordan totient J_k(n) = n^k * prod_{p|n} (1 - p^-k), exactly.

    Computed as prod over prime powers p^e || n of (p^(ke) - p^(k(e-1))).
    J_1 is Euler's phi; J_k(n) also counts k-tuples mod n whose gcd with
    n is 1.
    """
    if k < 1:
        raise ValueError(f"jordan requires k >= 1, got {k}")
    fi = _coerce(n)
    v = 1
    for p, e in fi.factors:
        v *= p ** (k * e) - p ** (k * (e - 1))
    return v


def generalized_gcd(m: int, n: int, s: int) -> int:
    """(m, n)_s: the largest perfect s-th power l^s dividing both m and n.

    Equals the largest s-th power dividing gcd(m, n); reduces to the
    ordinary gcd at s = 1.
    """
    if m < 1 or n < 1 or s < 1:
        raise ValueError(f"generalized_gcd requires positive arguments, got {(m, n, s)}")
    g = math.gcd(m, n)
    if s == 1:
        return g
    v = 1
    for p, e in factorize(g).factors:
        v *= p ** (s * (e // s))
    return v


def tau_s(s: int, n) -> int:
    """Number of divisors of n that are perfect s-th powers.

    Equals prod over p^e || n of (floor(e/s) + 1); tau_s(n^s) = tau(n).
    """
    if s < 1:
        raise ValueError(f"tau_s requires s >= 1, got {s}")
    fi = _coerce(n)
    v = 1
    for _, e in fi.factors:
        v *= e // s + 1
    return v


def tau(n) -> int:
    """Number of divisors."""
    return tau_s(1, n)


def divisor_sigma(n) -> int:
    """Sum of divisors sigma(n)."""
    fi = _coerce(n)
    v = 1
    for p, e in fi.factors:
        v *= (p ** (e + 1) - 1) // (p - 1)
    return v


# ---------------------------------------------------------------------------
# Riemann zeta on integer arguments >= 2

@lru_cache(maxsize=64)
def zeta(z: int, precision: float = 1e-12, cutoff: int | None = None) -> float:
    """zeta(z) for integer z >= 2 to the requested absolute precision.

    Direct series sum_{n<=M} n^-z plus the Euler-Maclaurin tail
    M^(1-z)/(z-1) - M^-z/2; the first omitted term is ~ z*M^-(z+1)/12,
    and M is chosen to push it below precision/2.
    """
    if z < 2:
        raise ValueError(f"zeta requires integer z >= 2, got {z}")
    if not 0 < precision <= 1e-2:
        raise ValueError(f"unreasonable precision {precision}")
    if cutoff is None:
        cutoff = max(16, math.ceil((z / (3 * precision)) ** (1.0 / (z + 1))))
    head = math.fsum(n ** float(-z) for n in range(1, cutoff + 1))
    tail = cutoff ** (1.0 - z) / (z - 1) - cutoff ** float(-z) / 2.0
    return head + tail


def zeta_upper_bound(z: int, cutoff: int = 100) -> Fraction:
    """A certified rational upper bound on zeta(z), z >= 2.

    sum_{n<=M} n^-z + M^(1-z)/(z-1) bounds the series from above because
    sum_{n>M} n^-z < integral_M^inf x^-z dx.
    """
    if z < 2:
        raise ValueError(f"zeta_upper_bound requires z >= 2, got {z}")
    head = sum(Fraction(1, n**z) for n in range(1, cutoff + 1))
    return head + Fraction(1, (z - 1) * cutoff ** (z - 1))


# ---------------------------------------------------------------------------
# sieve tables

_KINDS = ("mobius", "jordan", "smallest-prime-factor")


@dataclass(frozen=True)
class SieveTable:
    """Dense table of an arithmetic function on 1..limit.

    ``values`` has length limit + 1 with index 0 unused; it is a
    read-only numpy array (mobius, smallest-prime-factor) or a tuple of
    exact ints (jordan).  Tables are immutable once built and safe to
    share.
    """

    kind: str
    k: int | None
    limit: int
    values: Sequence[int]

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown sieve kind {self.kind!r}")
        if self.limit < 1 or len(self.values) != self.limit + 1:
            raise ValueError("values must cover 1..limit")
        if self.kind in ("mobius", "jordan") and self.values[1] != 1:
            raise ValueError(f"{self.kind} table must have values[1] == 1")

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.limit:
            raise IndexError(f"sieve index {n} outside 1..{self.limit}")
        return int(self.values[n])


def _linear_sieve(limit: int, prime_power_value) -> list:
    """Linear sieve for a multiplicative function given its values on
    prime powers.  Each composite is visited exactly once through its
    smallest prime factor."""
    vals = [0] * (limit + 1)
    if limit >= 1:
        vals[1] = 1
    spp = [0] * (limit + 1)  # p^e part of i for its smallest prime p
    comp = bytearray(limit + 1)
    primes = []
    for i in range(2, limit + 1):
        if not comp[i]:
            primes.append(i)
            spp[i] = i
            vals[i] = prime_power_value(i, 1)
        vi = vals[i]
        for p in primes:
            ip = i * p
            if ip > limit:
                break
            comp[ip] = 1
            if i % p == 0:
                sp = spp[i] * p
                spp[ip] = sp
                if sp == ip:
                    e = 0
                    t = ip
                    while t > 1:
                        t //= p
                        e += 1
                    vals[ip] = prime_power_value(p, e)
                else:
                    vals[ip] = vals[ip // sp] * vals[sp]
                break
            spp[ip] = p
            vals[ip] = vi * prime_power_value(p, 1)
    return vals


def _spf_values(limit: int) -> np.ndarray:
    spf = np.zeros(limit + 1, dtype=np.int64)
    if limit >= 1:
        spf[1] = 1
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            spf[p] = p
            sl = spf[p * p :: p]
            sl[sl == 0] = p
    rest = np.flatnonzero(spf[2:] == 0) + 2
    spf[rest] = rest
    return spf


def _estimate_bytes(kind: str, limit: int, k: int | None) -> int:
    if kind == "mobius":
        return limit + 1
    if kind == "smallest-prime-factor":
        return 8 * (limit + 1)
    # jordan: list slots + int objects sized by k * log2(limit) bits,
    # roughly doubled for the scratch arrays the sieve itself needs
    digits = max(1, math.ceil(k * max(limit, 2).bit_length() / 30))
    return 2 * (limit + 1) * (36 + 4 * digits)


def sieve(kind: str, limit: int, *, k: int | None = None,
          memory_budget: int | None = None) -> SieveTable:
    """Build a dense SieveTable of the requested kind on 1..limit.

    kind is one of "mobius", "jordan" (requires k >= 1), or
    "smallest-prime-factor" (alias "spf").  Construction is
    O(limit) / O(limit log log limit) and single-threaded; the result is
    immutable.
    """
    if kind == "spf":
        kind = "smallest-prime-factor"
    if kind not in _KINDS:
        raise ValueError(f"unknown sieve kind {kind!r}")
    if limit < 1:
        raise ValueError(f"sieve limit must be >= 1, got {limit}")
    if kind == "jordan":
        if k is None or k < 1:
            raise ValueError("jordan sieve requires k >= 1")
    elif k is not None:
        raise ValueError(f"{kind} sieve takes no k parameter")
    if memory_budget is not None:
        need = _estimate_bytes(kind, limit, k)
        if need > memory_budget:
            raise MemoryBudgetError(
                f"{kind} sieve to {limit} needs ~{need} bytes, "
                f"budget allows {memory_budget}")

    if kind == "mobius":
        vals = _linear_sieve(limit, lambda p, e: -1 if e == 1 else 0)
        arr = np.array(vals, dtype=np.int8)
        arr.flags.writeable = False
        return SieveTable(kind, None, limit, arr)
    if kind == "jordan":
        vals = _linear_sieve(limit, lambda p, e: p ** (k * e) - p ** (k * (e - 1)))
        return SieveTable(kind, k, limit, tuple(vals))
    spf = _spf_values(limit)
    spf.flags.writeable = False
    return SieveTable(kind, None, limit, spf)


def _bucket(limit: int) -> int:
    """Round limits up so nearby requests share one cached table."""
    return max(4096, -(-limit // 4096) * 4096)


@lru_cache(maxsize=10)
def _shared(kind: str, k: int | None, bucket: int) -> SieveTable:
    return sieve(kind, bucket, k=k)


def shared_sieve(kind: str, limit: int, *, k: int | None = None) -> SieveTable:
    """Memoized sieve access for bulk internal callers.

    May return a table somewhat longer than ``limit``; entries past the
    request are valid, just unneeded.
    """
    return _shared(kind, k, _bucket(limit))


# ---------------------------------------------------------------------------
# binary sieve cache (an optimization surface, never a source of truth)

_CACHE_MAGIC = b"CRSIEVE1"
_KIND_TAGS = {"mobius": 0, "jordan": 1, "smallest-prime-factor": 2}
_TAG_KINDS = {v: n for n, v in _KIND_TAGS.items()}
_I64_MIN, _I64_MAX = -(2**63), 2**63 - 1


def write_sieve_cache(table: SieveTable, path) -> None:
    """Serialize a table: magic, kind tag, k, N, then N little-endian
    signed 64-bit entries for indices 1..N.

    Entries outside the signed 64-bit range are refused with the
    required width reported.
    """
    entries = [int(table.values[n]) for n in range(1, table.limit + 1)]
    for n, v in enumerate(entries, start=1):
        if not _I64_MIN <= v <= _I64_MAX:
            raise OverflowError(
                f"entry {n} of {table.kind} table needs {v.bit_length() + 1} bits, "
                f"cache format holds 64")
    with open(path, "wb") as fh:
        fh.write(_CACHE_MAGIC)
        fh.write(struct.pack("<BQQ", _KIND_TAGS[table.kind], table.k or 0, table.limit))
        fh.write(np.array(entries, dtype="<i8").tobytes())


def read_sieve_cache(path) -> SieveTable:
    """Load a table written by write_sieve_cache, validating the header."""
    with open(path, "rb") as fh:
        magic = fh.read(8)
        if magic != _CACHE_MAGIC:
            raise ValueError(f"not a sieve cache file (magic {magic!r})")
        tag, k, limit = struct.unpack("<BQQ", fh.read(17))
        if tag not in _TAG_KINDS:
            raise ValueError(f"unknown sieve kind tag {tag}")
        kind = _TAG_KINDS[tag]
        payload = fh.read(8 * limit)
        if len(payload) != 8 * limit or fh.read(1):
            raise ValueError("sieve cache payload has the wrong length")
    entries = np.frombuffer(payload, dtype="<i8")
    if kind == "mobius":
        arr = np.concatenate(([0], entries)).astype(np.int8)
        arr.flags.writeable = False
        return SieveTable(kind, None, limit, arr)
    if kind == "smallest-prime-factor":
        arr = np.concatenate(([0], entries)).astype(np.int64)
        arr.flags.writeable = False
        return SieveTable(kind, None, limit, arr)
    return SieveTable(kind, int(k), limit, (0,) + tuple(int(v) for v in entries))
