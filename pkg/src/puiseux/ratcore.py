"""Exact rationals, p-adic valuations, prime supports and the integer
sequences the monoid constructions are built from.

Rationals are :class:`fractions.Fraction` throughout; they are already kept
in lowest terms with a positive denominator.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from math import isqrt
from typing import Iterable, Union

import numpy as np

Rat = Fraction


# --------------------------------------------------------------------------
# Parsing / printing
# --------------------------------------------------------------------------

def parse_rat(text: str) -> Fraction:
    """Parse ``"a/b"`` or ``"a"`` into a canonical rational.

    >>> parse_rat("6/8")
    Fraction(3, 4)
    """
    s = text.strip()
    if not s:
        raise ValueError("empty rational")
    if "/" in s:
        num, _, den = s.partition("/")
        try:
            n, d = int(num), int(den)
        except ValueError:
            raise ValueError(f"malformed rational {text!r}") from None
        if d == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(n, d)
    try:
        return Fraction(int(s))
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None


def as_rat(x: Union[int, str, Fraction]) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rat(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def fmt_rat(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# --------------------------------------------------------------------------
# Valuations
# --------------------------------------------------------------------------

@total_ordering
class _Infinity:
    """Value of v_p(0); compares above every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __hash__(self):
        return hash("puiseux.INFINITY")

    def __repr__(self):
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()
Valuation = Union[int, _Infinity]


@total_ordering
class _NegInfinity:
    """Infimum of an unbounded-below set of valuations."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("puiseux.NEG_INFINITY")

    def __repr__(self):
        return "NEG_INFINITY"

    def __reduce__(self):
        return (_NegInfinity, ())


NEG_INFINITY = _NegInfinity()


def _vp_int(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def padic_valuation(q: Union[Fraction, int], p: int) -> Valuation:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    q = as_rat(q)
    if q == 0:
        return INFINITY
    return _vp_int(abs(q.numerator), p) - _vp_int(q.denominator, p)


def mod_p(q: Fraction, p: int) -> int:
    """Residue of a p-integral rational modulo p."""
    if q.denominator % p == 0:
        raise ValueError(f"{q} is not {p}-integral")
    return q.numerator * pow(q.denominator, -1, p) % p


# --------------------------------------------------------------------------
# Primes
# --------------------------------------------------------------------------

_SMALL_LIMIT = 10**6
# Sufficient for every n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def _trial_division(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def is_prime(n: int) -> bool:
    if n < _SMALL_LIMIT:
        return _trial_division(n)
    if n % 2 == 0:
        return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class _PrimeTable:
    """Sieved primes below a growing limit; safe to share between threads."""

    CAP = 1 << 25

    def __init__(self):
        self._lock = threading.Lock()
        self._limit = 0
        self._primes = np.zeros(0, dtype=np.int64)
        self._grow(1 << 16)

    def _grow(self, limit: int) -> None:
        with self._lock:
            if limit <= self._limit:
                return
            sieve = np.ones(limit + 1, dtype=bool)
            sieve[:2] = False
            sieve[4::2] = False
            for f in range(3, isqrt(limit) + 1, 2):
                if sieve[f]:
                    sieve[f * f::2 * f] = False
            self._primes = np.flatnonzero(sieve).astype(np.int64)
            self._limit = limit

    def ensure(self, x: int) -> bool:
        """Make the table cover x if that stays under the cap."""
        if x <= self._limit:
            return True
        if x > self.CAP:
            return False
        self._grow(min(self.CAP, max(2 * self._limit, x)))
        return True

    def nth(self, i: int) -> int:
        """i-th prime, 1-based (nth(1) == 2)."""
        if i < 1:
            raise ValueError("prime index starts at 1")
        while i > len(self._primes):
            if not self.ensure(2 * self._limit):
                break
        if i <= len(self._primes):
            return int(self._primes[i - 1])
        # beyond the table: walk up from the last tabulated prime
        p, k = int(self._primes[-1]), len(self._primes)
        while k < i:
            p = next_prime_after(p)
            k += 1
        return p

    def pi(self, x: int) -> int:
        """Number of primes <= x."""
        if x < 2:
            return 0
        if self.ensure(x):
            return int(np.searchsorted(self._primes, x, side="right"))
        return _lucy_pi(x)

    def primes_after(self, x: int):
        """Primes > x in increasing order (unbounded iterator)."""
        if self.ensure(x + 1):
            i = int(np.searchsorted(self._primes, x, side="right"))
            while i < len(self._primes):
                yield int(self._primes[i])
                i += 1
            x = int(self._primes[-1]) if len(self._primes) else x
        while True:
            x = next_prime_after(x)
            yield x


_LUCY_LIMIT = 1 << 40


@lru_cache(maxsize=4096)
def _lucy_pi(n: int) -> int:
    """Prime counting by the Lucy-Hedgehog recursion over {n // i}."""
    if n > _LUCY_LIMIT:
        raise OverflowError(f"prime counting beyond {_LUCY_LIMIT} is out of reach")
    r = isqrt(n)
    head = [n // i for i in range(1, r + 1)]
    V = np.array(head + list(range(head[-1] - 1, 0, -1)), dtype=np.int64)
    S = V - 1
    m = len(V)

    def pos(w):
        # w >= n // r sits in the head at n // w - 1, smaller w in the tail
        return np.where(w >= head[-1], n // np.maximum(w, 1) - 1, r + head[-1] - 1 - w)

    for p in range(2, r + 1):
        sp = S[m - p + 1] if p > 1 else 0  # S at v = p - 1
        if S[m - p] <= sp:  # S at v = p; p composite
            continue
        p2 = p * p
        cnt = int(np.searchsorted(-V, -p2, side="right"))
        if cnt == 0:
            break
        w = V[:cnt] // p
        S[:cnt] -= S[pos(w)] - sp
    return int(S[0])


def next_prime_after(x: int) -> int:
    c = x + 1
    if c <= 2:
        return 2
    if c % 2 == 0:
        c += 1
    while not is_prime(c):
        c += 2
    return c


_PRIMES = _PrimeTable()


def nth_prime(i: int) -> int:
    return _PRIMES.nth(i)


def prime_index(p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return _PRIMES.pi(p)


def prime_pi(x: int) -> int:
    return _PRIMES.pi(x)


def nth_odd_prime(i: int) -> int:
    """i-th odd prime, 1-based: 3, 5, 7, 11, ..."""
    return _PRIMES.nth(i + 1)


def odd_prime_index(p: int) -> int:
    if p == 2:
        raise ValueError("2 is not an odd prime")
    return prime_index(p) - 1


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of a desk-scale positive integer."""
    n = abs(n)
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


# --------------------------------------------------------------------------
# Prime supports
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SupportSet:
    """Prime-support descriptor.

    ``kind`` is ``"finite"`` (exactly ``primes``), ``"cofinal"`` (``primes``
    together with an infinite subset of the pool ``P_pool``) or ``"all"``
    (every prime except possibly finitely many).
    """

    kind: str
    primes: frozenset = frozenset()
    pool: int | None = None

    @classmethod
    def finite(cls, primes: Iterable[int]) -> "SupportSet":
        return cls("finite", frozenset(primes))

    @classmethod
    def cofinal_in(cls, pool: int, extra: Iterable[int] = ()) -> "SupportSet":
        return cls("cofinal", frozenset(extra), pool)

    @classmethod
    def all_primes(cls) -> "SupportSet":
        return cls("all")

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def symmetric_difference(self, other: "SupportSet") -> frozenset:
        if not (self.is_finite and other.is_finite):
            raise ValueError("symmetric difference only enumerable for finite supports")
        return self.primes ^ other.primes

    def symmetric_difference_infinite(self, other: "SupportSet") -> bool | None:
        """True if provably infinite, False if provably finite, None if the
        descriptors cannot tell."""
        a, b = self, other
        if a.kind == "finite" and b.kind == "finite":
            return False
        if a.kind == "finite" or b.kind == "finite":
            return True
        if a.kind == "cofinal" and b.kind == "cofinal":
            return True if a.pool != b.pool else None
        if a.kind == "all" and b.kind == "all":
            return False
        # one side misses every pool but its own
        return True

    def describe(self) -> str:
        if self.kind == "finite":
            return "{" + ", ".join(map(str, sorted(self.primes))) + "}"
        if self.kind == "cofinal":
            extra = ", ".join(map(str, sorted(self.primes)))
            return f"{{{extra}}} + infinite subset of P_{self.pool}"
        return "all primes"


def prime_support(q: Union[Fraction, int]) -> SupportSet:
    q = as_rat(q)
    if q <= 0:
        raise ValueError("prime support is defined for positive rationals")
    return SupportSet.finite(prime_factors(q.denominator))


# --------------------------------------------------------------------------
# Sequences used by the constructions
# --------------------------------------------------------------------------

def ell2(x: int) -> int:
    """Largest power of 2 strictly below x."""
    if x <= 1:
        raise ValueError("ell2 needs x >= 2")
    return 1 << ((x - 1).bit_length() - 1)


def _diagonal_new_count(s: int) -> int:
    # pairs (k, s-k), k in [0, s-1], that are in lowest terms: k == 0 or s-k odd
    return 1 + s // 2


def _before_diagonal(s: int) -> int:
    m = s - 1
    return m + m * m // 4


class _DyadicEnumeration:
    """Anti-diagonal walk over (k, j) of 1 + j/2^k, first occurrences only."""

    def __init__(self):
        self._lock = threading.Lock()
        self._values: list[Fraction] = []
        self._index: dict[Fraction, int] = {}
        self._s = 0

    def _extend(self, count: int) -> None:
        with self._lock:
            while len(self._values) < count:
                self._s += 1
                s = self._s
                for k in range(s):
                    v = 1 + Fraction(s - k, 1 << k)
                    if v not in self._index:
                        self._values.append(v)
                        self._index[v] = len(self._values)

    def value(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError("dyadic enumeration index starts at 1")
        if n > len(self._values):
            self._extend(n)
        return self._values[n - 1]

    def index(self, v: Fraction) -> int:
        v = as_rat(v)
        den = v.denominator
        if v <= 1 or den & (den - 1):
            raise ValueError(f"{v} is not a dyadic rational > 1")
        k = den.bit_length() - 1
        j = (v - 1) * den
        s = k + int(j)
        if k == 0:
            pos = 0
        else:
            # earlier kk in [1, k) whose j = s - kk is odd
            pos = 1 + ((k - 1) // 2 if s % 2 else k // 2)
        return _before_diagonal(s) + pos + 1


_DYADICS = _DyadicEnumeration()


def enumerate_dyadics_gt1(n: int) -> Fraction:
    """n-th dyadic rational greater than 1 (1-based, bijective)."""
    return _DYADICS.value(n)


def dyadic_index(v: Union[Fraction, int, str]) -> int:
    """Inverse of :func:`enumerate_dyadics_gt1`."""
    return _DYADICS.index(as_rat(v))


def is_dyadic(q: Fraction) -> bool:
    d = q.denominator
    return d & (d - 1) == 0


def partition_primes(ell: int, n: int) -> int:
    """n-th prime of the pool P_ell.

    The i-th odd prime lies in P_ell exactly when i = 2^(ell-1) * (2m - 1).
    """
    if ell < 1 or n < 1:
        raise ValueError("pool and element indices start at 1")
    return nth_odd_prime((1 << (ell - 1)) * (2 * n - 1))


def pool_of_prime(p: int) -> int | None:
    """The pool index ell with p in P_ell, or None for p = 2 / non-primes."""
    if p == 2 or not is_prime(p):
        return None
    i = odd_prime_index(p)
    return (i & -i).bit_length()


def pool_position(p: int) -> int:
    """Position of p inside its own pool."""
    i = odd_prime_index(p)
    ell = (i & -i).bit_length()
    return (i >> (ell - 1)) // 2 + 1


@lru_cache(maxsize=1 << 16)
def next_pool_prime(x: int, ell: int) -> int:
    """Smallest prime of P_ell exceeding x."""
    i = prime_pi(x) - (1 if x >= 2 else 0)  # odd primes <= x
    step = 1 << (ell - 1)
    for q in _PRIMES.primes_after(x):
        if q == 2:
            continue
        i += 1
        if (i // step) % 2 == 1 and i % step == 0:
            return q
