"""The infinitely generated monoids, each with an exact membership oracle.

Most families are a base monoid (the nonnegative p-adic fractions N0[1/p])
plus a stream of *tagged atoms*: atom n carries a prime p_n appearing in no
other generator, with ``v_{p_n}(a_n) = -1`` and ``p_n * a_n`` in the base.
For such presentations membership is decided by reading off the forced
coefficient of each tagged atom modulo its prime and testing what is left
against the base.  Two families share primes between generators and get
their own oracles.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from .fgmonoid import (
    Certificate,
    FgPresentation,
    Member,
    MembershipResult,
    NonMember,
    member_fg,
    truncate,
)
from .ratcore import (
    NEG_INFINITY,
    SupportSet,
    as_rat,
    dyadic_index,
    ell2,
    enumerate_dyadics_gt1,
    fmt_rat,
    is_dyadic,
    is_prime,
    mod_p,
    next_pool_prime,
    nth_odd_prime,
    nth_prime,
    odd_prime_index,
    padic_valuation,
    partition_primes,
    pool_of_prime,
    prime_factors,
    prime_index,
)

CHECK_DEPTH = 20


class ConstructionError(RuntimeError):
    """A generated atom violates the tagged-atom invariants."""


# --------------------------------------------------------------------------
# Base monoids
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class DyadicCone:
    """N0[1/p], listed as 1/p^start, 1/p^(start+1), ..."""

    p: int = 2
    start: int = 0

    @property
    def primes(self) -> frozenset:
        return frozenset({self.p})

    def contains(self, q: Fraction) -> bool:
        if q < 0:
            return False
        d = q.denominator
        while d % self.p == 0:
            d //= self.p
        return d == 1

    def generator(self, i: int) -> Fraction:
        return Fraction(1, self.p ** (self.start + i))

    def is_generator(self, g: Fraction) -> bool:
        return g > 0 and self.contains(g)

    def expand(self, q: Fraction) -> list[tuple[Fraction, int]]:
        if q == 0:
            return []
        k = 0
        d = q.denominator
        while d > 1:
            d //= self.p
            k += 1
        e = max(k, self.start)
        return [(Fraction(1, self.p**e), int(q * self.p**e))]


@dataclass(frozen=True)
class RationalRayWithZero:
    """{0} together with every rational >= 1, listed as 1, 3/2, 2, 5/2, ..."""

    @property
    def primes(self) -> frozenset:
        return frozenset()

    def contains(self, q: Fraction) -> bool:
        return q == 0 or q >= 1

    def generator(self, i: int) -> Fraction:
        return 1 + Fraction(i, 2)

    def is_generator(self, g: Fraction) -> bool:
        return g >= 1

    def expand(self, q: Fraction) -> list[tuple[Fraction, int]]:
        return [] if q == 0 else [(q, 1)]


# --------------------------------------------------------------------------
# Family base class
# --------------------------------------------------------------------------

class Family:
    tag: str = ""
    param_names: tuple[str, ...] = ()
    is_puiseux = True
    bespoke = False
    base = None
    finite_atoms: int | None = None

    @property
    def params(self) -> dict:
        return {k: getattr(self, k) for k in self.param_names}

    def spec(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in self.params.items())
        return f"family:{self.tag}" + (f"{{{inner}}}" if inner else "")

    def __repr__(self):
        return self.spec()

    def __eq__(self, other):
        return isinstance(other, Family) and self.spec() == other.spec()

    def __hash__(self):
        return hash(self.spec())

    # subclass contract ---------------------------------------------------
    def member(self, q) -> MembershipResult:
        raise NotImplementedError

    def atom(self, n: int) -> Fraction:
        raise NotImplementedError

    def truncation_generators(self, depth: int) -> list[Fraction]:
        raise NotImplementedError

    def is_generator(self, g: Fraction) -> bool:
        raise NotImplementedError

    def support(self) -> SupportSet:
        raise NotImplementedError

    def inf_valuation(self, p: int):
        raise NotImplementedError

    def atom_candidates(self, x: Fraction) -> list[int]:
        """Atom indices that may divide x, in increasing order.  Must include
        at least one divisor whenever x is a Furstenberg element."""
        raise NotImplementedError

    # shared ----------------------------------------------------------------
    def claimed_atoms(self, n: int) -> list[Fraction]:
        if n < 0:
            raise ValueError("count must be >= 0")
        if self.finite_atoms is not None:
            n = min(n, self.finite_atoms)
        return [self.atom(i) for i in range(1, n + 1)]

    def atom_count_at_least(self, n: int) -> int:
        return n if self.finite_atoms is None else min(n, self.finite_atoms)

    def verify_certificate(self, cert: Certificate) -> bool:
        return all(self.is_generator(g) for g in cert.generators()) and cert.total() == cert.value


# --------------------------------------------------------------------------
# Tagged-atom families
# --------------------------------------------------------------------------

def _remainder_ok(F: "StructuredPresentation", r: Fraction) -> bool:
    return r >= 0 and F.base.contains(r)


class StructuredPresentation(Family):
    """A base monoid plus a stream of tagged atoms."""

    def __init__(self):
        self._lock = threading.RLock()
        self._atoms: list[tuple[Fraction, int]] = []
        self._by_prime: dict[int, int] = {}
        self.spot_check(CHECK_DEPTH)

    # stream ----------------------------------------------------------------
    def _next_atom(self, n: int) -> tuple[Fraction, int]:
        raise NotImplementedError

    def _extend(self, n: int) -> None:
        with self._lock:
            while len(self._atoms) < n:
                k = len(self._atoms) + 1
                if self.finite_atoms is not None and k > self.finite_atoms:
                    raise IndexError(f"{self.spec()} has only {self.finite_atoms} atoms")
                value, prime = self._next_atom(k)
                self._atoms.append((value, prime))
                self._by_prime[prime] = k

    def atom(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError("atom index starts at 1")
        self._extend(n)
        return self._atoms[n - 1][0]

    def private_prime(self, n: int) -> int:
        self._extend(n)
        return self._atoms[n - 1][1]

    def index_of_prime(self, p: int) -> int | None:
        raise NotImplementedError

    # invariants ------------------------------------------------------------
    def spot_check(self, depth: int) -> None:
        n = self.atom_count_at_least(depth)
        seen = set()
        for k in range(1, n + 1):
            a, p = self.atom(k), self.private_prime(k)
            if p in self.base.primes:
                raise ConstructionError(f"atom {k}: private prime {p} lies in the base support")
            if padic_valuation(a, p) != -1:
                raise ConstructionError(f"atom {k} = {fmt_rat(a)}: v_{p} != -1")
            if not set(prime_factors(a.denominator)) <= self.base.primes | {p}:
                raise ConstructionError(f"atom {k} = {fmt_rat(a)}: stray prime in denominator")
            if not self.base.contains(p * a):
                raise ConstructionError(f"atom {k}: {p}*{fmt_rat(a)} not in the base")
            if p in seen:
                raise ConstructionError(f"private prime {p} reused")
            seen.add(p)

    # interface -------------------------------------------------------------
    def member(self, q) -> MembershipResult:
        return structured_member(self, q)

    def truncation_generators(self, depth: int) -> list[Fraction]:
        gens = [self.base.generator(i) for i in range(depth)]
        gens += self.claimed_atoms(depth)
        return gens

    def is_generator(self, g: Fraction) -> bool:
        g = as_rat(g)
        if self.base.is_generator(g):
            return True
        for p in prime_factors(g.denominator):
            if p in self.base.primes:
                continue
            n = self.index_of_prime(p)
            return n is not None and self.atom(n) == g
        return False

    def atom_candidates(self, x: Fraction) -> list[int]:
        out = set()
        for p in prime_factors(x.denominator):
            if p not in self.base.primes:
                n = self.index_of_prime(p)
                if n is not None:
                    out.add(n)
        hint = self._base_divisor_hint(x)
        if hint is not None:
            out.add(hint)
        return sorted(out)

    def _base_divisor_hint(self, x: Fraction) -> int | None:
        """Index of some atom a_j with x - p_j*a_j in the base, if one exists."""
        raise NotImplementedError


def structured_member(F: StructuredPresentation, q) -> MembershipResult:
    """Membership in a tagged-atom presentation.

    Any representation can be rewritten so each tagged atom appears fewer than
    p_n times (p_n copies are absorbed by the base); reading ``q`` modulo p_n
    then fixes those coefficients, and the remainder must lie in the base.
    """
    if not isinstance(F, StructuredPresentation):
        raise TypeError(f"{F!r} needs its own membership oracle")
    q = as_rat(q)
    if q < 0:
        return NonMember("negative")
    if q == 0:
        return Member(Certificate.of(0))
    terms = []
    r = q
    for p in prime_factors(q.denominator):
        if p in F.base.primes:
            continue
        n = F.index_of_prime(p)
        if n is None:
            return NonMember("support", {"prime": p})
        if padic_valuation(q, p) < -1:
            return NonMember("valuation", {"prime": p})
        a = F.atom(n)
        e = mod_p(q * p, p) * pow(mod_p(a * p, p), -1, p) % p
        terms.append((a, e))
        r -= e * a
    if not _remainder_ok(F, r):
        return NonMember("remainder", {"remainder": r})
    return Member(Certificate.of(q, terms + F.base.expand(r)))


class _PoolPicker:
    """Hands out primes from P_ell: the smallest unused one meeting a test."""

    def __init__(self, ell: int):
        self.ell = ell
        self._generated = 0
        self._unused: list[int] = []

    def take(self, ok: Callable[[int], bool]) -> int:
        i = 0
        while True:
            if i == len(self._unused):
                self._generated += 1
                self._unused.append(partition_primes(self.ell, self._generated))
            p = self._unused[i]
            if ok(p):
                del self._unused[i]
                return p
            i += 1

    def unused_below(self, bound: int) -> bool:
        return any(p < bound for p in self._unused)


class PowDenom(StructuredPresentation):
    """<1/2, 1/p^n | n >= 1> for an odd prime p; its only atom is 1/2."""

    tag = "pow-denom"
    param_names = ("p",)
    finite_atoms = 1

    def __init__(self, p: int = 3):
        if not (isinstance(p, int) and p > 2 and is_prime(p)):
            raise ValueError(f"pow-denom needs an odd prime p, got {p}")
        self.p = p
        self.base = DyadicCone(p, start=1)
        super().__init__()

    def _next_atom(self, n):
        return Fraction(1, 2), 2

    def index_of_prime(self, p):
        return 1 if p == 2 else None

    def _base_divisor_hint(self, x):
        return 1 if x >= 1 and self.base.contains(x - 1) else None

    def support(self):
        return SupportSet.finite({2, self.p})

    def inf_valuation(self, p):
        if p == self.p:
            return NEG_INFINITY
        return -1 if p == 2 else 0


class AfNotF(StructuredPresentation):
    """N0[1/2] plus atoms r_n/p_n, where r_n runs over all dyadics > 1 and p_n
    is the smallest prime of P_ell above the numerator b_n of r_n not taken by
    an earlier atom.

    Numerators grow like 2^k along the enumeration, so the stream is never
    built sequentially.  Primes at most B can only go to atoms with b_i < B,
    hence replaying just those atoms (in index order) fixes every choice that
    lands at or below B; B grows until the wanted atom is settled.
    """

    tag = "af-not-f"
    param_names = ("l",)

    def __init__(self, l: int = 1):
        if not (isinstance(l, int) and l >= 1):
            raise ValueError(f"af-not-f needs l >= 1, got {l}")
        self.l = l
        self.base = DyadicCone(2)
        self._known: dict[int, int] = {}
        self._owner: dict[int, int] = {}
        super().__init__()

    def _replay(self, n: int, bound: int) -> None:
        used: set[int] = set()
        settled = {}
        for i in range(1, n + 1):
            b = enumerate_dyadics_gt1(i).numerator
            if b >= bound:
                continue
            q = next_pool_prime(b, self.l)
            while q in used:
                q = next_pool_prime(q, self.l)
            if q > bound:
                continue
            used.add(q)
            settled[i] = q
        with self._lock:
            self._known.update(settled)
            self._owner.update({q: i for i, q in settled.items()})

    def _prime_of(self, n: int) -> int:
        if n < 1:
            raise ValueError("atom index starts at 1")
        if n not in self._known:
            bound = max(256, 4 * enumerate_dyadics_gt1(n).numerator)
            while True:
                self._replay(n, bound)
                if n in self._known:
                    break
                bound *= 4
        return self._known[n]

    def atom(self, n):
        return enumerate_dyadics_gt1(n) / self._prime_of(n)

    def private_prime(self, n):
        return self._prime_of(n)

    def index_of_prime(self, p):
        if pool_of_prime(p) != self.l:
            return None
        if p in self._owner:
            return self._owner[p]
        # only atoms with numerator below p can take p; for each denominator
        # 2^k the latest of them has the largest admissible numerator
        last = 0
        for k in range(p.bit_length()):
            b = p - 1 if k == 0 or (p - 1) % 2 else p - 2
            if b > 1 << k:
                last = max(last, dyadic_index(Fraction(b, 1 << k)))
        if last:
            self._replay(last, p)
        return self._owner.get(p)

    def _base_divisor_hint(self, x):
        if x <= 1 or not is_dyadic(x):
            return None
        n = 1
        while enumerate_dyadics_gt1(n) > x:
            n += 1
        return n

    def support(self):
        return SupportSet.cofinal_in(self.l, {2})

    def inf_valuation(self, p):
        if p == 2:
            return NEG_INFINITY
        return -1 if self.index_of_prime(p) is not None else 0


def _af_not_nf_admissible(p: int, n: int) -> bool:
    return (2**n - 1) % p != 0


class AfNotNf(StructuredPresentation):
    """N0[1/2] plus atoms (1 - 1/2^n)/p_n with p_n in P_ell not dividing 2^n - 1."""

    tag = "af-not-nf"
    param_names = ("l",)

    def __init__(self, l: int = 1):
        if not (isinstance(l, int) and l >= 1):
            raise ValueError(f"af-not-nf needs l >= 1, got {l}")
        self.l = l
        self.base = DyadicCone(2)
        self._picker = _PoolPicker(l)
        super().__init__()

    def _next_atom(self, n):
        p = self._picker.take(lambda p: _af_not_nf_admissible(p, n))
        return (1 - Fraction(1, 2**n)) / p, p

    def index_of_prime(self, p):
        if pool_of_prime(p) != self.l:
            return None
        with self._lock:
            # every pool prime is eventually taken: it can be skipped at most
            # at steps that are multiples of the order of 2 mod p, never twice
            # in a row
            while p not in self._by_prime:
                self._extend(len(self._atoms) + 1)
        return self._by_prime[p]

    def _base_divisor_hint(self, x):
        return 1 if x >= Fraction(1, 2) and self.base.contains(x) else None

    def support(self):
        return SupportSet.cofinal_in(self.l, {2})

    def inf_valuation(self, p):
        if p == 2:
            return NEG_INFINITY
        return -1 if pool_of_prime(p) == self.l else 0


class NaNotF(StructuredPresentation):
    """<1/3, 1/2^n, o_n/(ell2(o_n) p_n)> with o_n = 2n+1 and p_n the n-th
    prime above 3.  Atom 1 is 1/3; atom n+1 is the n-th of the others."""

    tag = "na-not-f"

    def __init__(self):
        self.base = DyadicCone(2)
        super().__init__()

    def _next_atom(self, n):
        if n == 1:
            return Fraction(1, 3), 3
        k = n - 1
        o, p = 2 * k + 1, nth_prime(k + 2)
        if not o < p:
            raise ConstructionError(f"o_{k} = {o} is not below p_{k} = {p}")
        return Fraction(o, ell2(o) * p), p

    def index_of_prime(self, p):
        if p == 3:
            return 1
        if p < 5 or not is_prime(p):
            return None
        return prime_index(p) - 1

    def _base_divisor_hint(self, x):
        return 1 if x >= 1 and self.base.contains(x - 1) else None

    def atom_candidates(self, x):
        out = super().atom_candidates(x)
        a = x.numerator
        # a/2^k with a odd and a > 2^k is a multiple of the atom built from o = a
        if is_dyadic(x) and a % 2 and a > x.denominator:
            out = sorted(set(out) | {(a - 1) // 2 + 1})
        return out

    def support(self):
        return SupportSet.all_primes()

    def inf_valuation(self, p):
        return NEG_INFINITY if p == 2 else -1


class Grams(StructuredPresentation):
    """<1/(2^n p_n) | n >= 1> with p_n the n-th odd prime."""

    tag = "grams"

    def __init__(self):
        self.base = DyadicCone(2)
        super().__init__()

    def _next_atom(self, n):
        p = nth_odd_prime(n)
        return Fraction(1, 2**n * p), p

    def index_of_prime(self, p):
        if p == 2 or not is_prime(p):
            return None
        return odd_prime_index(p)

    def _base_divisor_hint(self, x):
        if x <= 0 or not self.base.contains(x):
            return None
        n = 1
        while Fraction(1, 2**n) > x:
            n += 1
        return n

    def support(self):
        return SupportSet.all_primes()

    def inf_valuation(self, p):
        return NEG_INFINITY if p == 2 else -1


# --------------------------------------------------------------------------
# Families with their own oracles
# --------------------------------------------------------------------------

def _coset_dyadic_ok(F: Fraction, t: int) -> bool:
    return F > 0 if t >= 1 else F >= 0


def _dyadic_terms(F: Fraction) -> list[tuple[Fraction, int]]:
    if F == 0:
        return []
    return [(Fraction(1, F.denominator), F.numerator)]


class NfNotAf(Family):
    """<1/p, positive dyadics, 1/2 - 1/p + positive dyadics> for a prime p >= 7."""

    tag = "nf-not-af"
    param_names = ("p",)
    bespoke = True
    finite_atoms = 1

    def __init__(self, p: int = 7):
        if not (isinstance(p, int) and is_prime(p) and p >= 7):
            raise ValueError(f"nf-not-af needs a prime p >= 7, got {p}")
        self.p = p
        self.shift = Fraction(1, 2) - Fraction(1, p)

    def member(self, q) -> MembershipResult:
        return bespoke_member_nf_not_af(self.p, q)

    def atom(self, n):
        if n != 1:
            raise IndexError("nf-not-af has a single atom")
        return Fraction(1, self.p)

    def truncation_generators(self, depth):
        gens = [Fraction(1, self.p)]
        gens += [Fraction(1, 2**k) for k in range(depth)]
        gens += [self.shift + Fraction(1, 2**k) for k in range(depth)]
        return gens

    def is_generator(self, g):
        g = as_rat(g)
        if g == Fraction(1, self.p):
            return True
        if g > 0 and is_dyadic(g):
            return True
        h = g - self.shift
        return h > 0 and is_dyadic(h)

    def atom_candidates(self, x):
        return [1]

    def support(self):
        return SupportSet.finite({2, self.p})

    def inf_valuation(self, p):
        if p == 2:
            return NEG_INFINITY
        return -1 if p == self.p else 0


def bespoke_member_nf_not_af(p: int, q) -> MembershipResult:
    """Every element is u/p + t/2 + F: t counts shifted-coset generators,
    u = (copies of 1/p) - t >= -t and F is a dyadic >= 0, positive when t >= 1.
    Since t*(1/2 - 1/p) <= q there are finitely many t to try, and for each
    the smallest admissible u leaves the largest F."""
    q = as_rat(q)
    if q < 0:
        return NonMember("negative")
    if q == 0:
        return Member(Certificate.of(0))
    if not set(prime_factors(q.denominator)) <= {2, p}:
        return NonMember("support")
    if padic_valuation(q, p) < -1:
        return NonMember("valuation")
    res = mod_p(q * p, p)
    shift = Fraction(1, 2) - Fraction(1, p)
    tmax = int(q / shift)
    for t in range(tmax + 1):
        u = -t + (res + t) % p
        F = q - Fraction(u, p) - Fraction(t, 2)
        if not _coset_dyadic_ok(F, t):
            continue
        assert is_dyadic(F)
        terms = [(Fraction(1, p), u + t)]
        if t == 0:
            terms += _dyadic_terms(F)
        else:
            if F <= 0:
                raise ArithmeticError("shifted generators need a positive dyadic part")
            m, d = F.numerator, F.denominator
            while m < t:
                m, d = 2 * m, 2 * d
            piece = Fraction(1, d)
            terms.append((shift + piece, t - 1))
            terms.append((shift + F - (t - 1) * piece, 1))
        return Member(Certificate.of(q, terms))
    return NonMember("exhausted")


class FNotAa(Family):
    """<1/p | p odd prime> united with all rationals >= 1."""

    tag = "f-not-aa"
    bespoke = True

    def __init__(self):
        self.base = RationalRayWithZero()

    def member(self, q) -> MembershipResult:
        return bespoke_member_f_not_aa(q)

    def atomic_part_member(self, q) -> MembershipResult:
        return atomic_part_member(q)

    def atom(self, n):
        if n < 1:
            raise ValueError("atom index starts at 1")
        return Fraction(1, nth_odd_prime(n))

    def truncation_generators(self, depth):
        return [self.base.generator(i) for i in range(depth)] + self.claimed_atoms(depth)

    def is_generator(self, g):
        g = as_rat(g)
        if g >= 1:
            return True
        return g.numerator == 1 and g.denominator > 2 and is_prime(g.denominator)

    def atom_candidates(self, x):
        out = {odd_prime_index(p) for p in prime_factors(x.denominator) if p != 2}
        if x == 1:
            out.add(1)
        elif x > 1:
            k = 1
            while Fraction(1, nth_odd_prime(k)) > x - 1:
                k += 1
            out.add(k)
        return sorted(out)

    def support(self):
        return SupportSet.all_primes()

    def inf_valuation(self, p):
        return NEG_INFINITY


def _two_adic_ok(q: Fraction) -> bool:
    return q.denominator % 2 == 1


def atomic_part_member(q) -> MembershipResult:
    """Membership in <1/p | p odd prime>."""
    q = as_rat(q)
    if q < 0:
        return NonMember("negative")
    if q == 0:
        return Member(Certificate.of(0))
    if not _two_adic_ok(q):
        return NonMember("2-adic")
    terms = []
    z = q
    for p in prime_factors(q.denominator):
        if padic_valuation(q, p) < -1:
            return NonMember("valuation", {"prime": p})
        e = mod_p(q * p, p)
        terms.append((Fraction(1, p), e))
        z -= Fraction(e, p)
    if z.denominator != 1 or z < 0:
        return NonMember("remainder", {"remainder": z})
    if z:
        terms.append((Fraction(1, 3), 3 * int(z)))
    return Member(Certificate.of(q, terms))


def bespoke_member_f_not_aa(q) -> MembershipResult:
    q = as_rat(q)
    if q < 0:
        return NonMember("negative")
    if q == 0:
        return Member(Certificate.of(0))
    if q >= 1:
        return Member(Certificate.of(q, [(q, 1)]))
    return atomic_part_member(q)


# --------------------------------------------------------------------------
# The lexicographic cone in Z^2 (not a Puiseux monoid)
# --------------------------------------------------------------------------

def lexcone_member(x: int, y: int) -> bool:
    return (y == 0 and x >= 0) or y >= 1


class LexCone:
    """(N0 x {0}) u (Z x N): the nonnegative cone of Z^2 ordered
    lexicographically with the second coordinate first."""

    tag = "lexcone"
    is_puiseux = False
    params: dict = {}
    ATOM = (1, 0)

    def spec(self) -> str:
        return "family:lexcone"

    def __repr__(self):
        return self.spec()

    def __eq__(self, other):
        return isinstance(other, LexCone)

    def __hash__(self):
        return hash(self.spec())

    def member(self, v) -> bool:
        x, y = v
        return lexcone_member(x, y)

    def divides(self, a, b) -> bool:
        if not (self.member(a) and self.member(b)):
            raise ValueError("divisibility is only defined between members")
        return self.member((b[0] - a[0], b[1] - a[1]))

    def claimed_atoms(self, n: int) -> list:
        return [self.ATOM][: max(n, 0)]

    def is_atom_on_grid(self, a, radius: int = 10) -> bool:
        """No decomposition a = u + v into nonzero members with |coords| <= radius."""
        for x in range(-radius, radius + 1):
            for y in range(0, radius + 1):
                u = (x, y)
                v = (a[0] - x, a[1] - y)
                if u != (0, 0) and v != (0, 0) and self.member(u) and self.member(v):
                    return False
        return True


# --------------------------------------------------------------------------
# Construction and generic operations
# --------------------------------------------------------------------------

_FAMILIES = {
    "pow-denom": PowDenom,
    "af-not-f": AfNotF,
    "nf-not-af": NfNotAf,
    "af-not-nf": AfNotNf,
    "f-not-aa": FNotAa,
    "na-not-f": NaNotF,
    "grams": Grams,
    "lexcone": LexCone,
}
_KEY_ALIASES = {"l": "l", "ell": "l", "ℓ": "l", "p": "p"}

_cache: dict[tuple, object] = {}
_cache_lock = threading.Lock()


def build_family(tag: str, **params):
    if tag not in _FAMILIES:
        raise ValueError(f"unknown family {tag!r}; expected one of {', '.join(_FAMILIES)}")
    cls = _FAMILIES[tag]
    norm = {}
    for k, v in params.items():
        key = _KEY_ALIASES.get(k)
        if key is None or key not in getattr(cls, "param_names", ()):
            raise ValueError(f"family {tag} takes no parameter {k!r}")
        norm[key] = int(v)
    key = (tag, tuple(sorted(norm.items())))
    with _cache_lock:
        if key not in _cache:
            _cache[key] = cls(**norm)
        return _cache[key]


_SPEC_RE = re.compile(r"family:([a-z-]+)(?:\{(.*)\})?$")


def parse_family(text: str):
    s = text.strip()
    m = _SPEC_RE.match(s)
    if not m:
        pos = 0 if not s.startswith("family:") else len("family:")
        raise ValueError(f"position {pos}: expected family:<tag>{{key=value,...}} in {text!r}")
    tag, body = m.group(1), m.group(2)
    params = {}
    if body:
        offset = s.index("{") + 1
        for item in body.split(","):
            if "=" not in item:
                raise ValueError(f"position {offset}: expected key=value, got {item!r}")
            k, v = (t.strip() for t in item.split("=", 1))
            try:
                params[k] = int(v)
            except ValueError:
                raise ValueError(f"position {offset + item.index('=') + 1}: "
                                 f"parameter {k!r} must be an integer") from None
            offset += len(item) + 1
    return build_family(tag, **params)


def parse_monoid(text: str):
    s = text.strip()
    if s.startswith("fg:"):
        return FgPresentation.parse(s)
    if s.startswith("family:"):
        return parse_family(s)
    raise ValueError(f"position 0: monoid spec must start with 'fg:' or 'family:', got {text!r}")


def monoid_spec(M) -> str:
    return str(M) if isinstance(M, FgPresentation) else M.spec()


def member(M, q) -> MembershipResult:
    if isinstance(M, FgPresentation):
        return member_fg(M, q)
    return M.member(as_rat(q))


def divides(F, a, b) -> MembershipResult:
    if isinstance(F, LexCone):
        return Member(Certificate.of(0)) if F.divides(a, b) else NonMember("lexcone")
    a, b = as_rat(a), as_rat(b)
    for x in (a, b):
        if not member(F, x):
            raise ValueError(f"{fmt_rat(x)} is not in {monoid_spec(F)}")
    if b < a:
        return NonMember("negative")
    return member(F, b - a)


@dataclass(frozen=True)
class NotAtom:
    x: Fraction
    y: Fraction


@dataclass(frozen=True)
class AtomUpToDepth:
    depth: int


def is_atom_truncated(F, n: int, depth: int):
    if depth < n:
        raise ValueError("depth must be at least the atom index")
    a = F.atom(n)
    P = truncate(F, depth)
    res = member_fg(P.without(a), a)
    if isinstance(res, Member):
        x = res.certificate.generators()[0]
        return NotAtom(x, a - x)
    if isinstance(res, NonMember):
        return AtomUpToDepth(depth)
    return res


def decompose(F, g, search: int = 50):
    """Split g = x + y with x, y nonzero members of F, checked by F's oracle.
    Returns None when no candidate split is found."""
    g = as_rat(g)
    cands: list[Fraction] = [g / 2]
    cands += F.claimed_atoms(search)
    base = getattr(F, "base", None)
    if base is not None:
        cands += [base.generator(i) for i in range(search)]
    if isinstance(F, NfNotAf):
        cands += [Fraction(1, 2**k) for k in range(search)]
    for x in cands:
        if 0 < x < g and member(F, x) and member(F, g - x):
            return NotAtom(x, g - x)
    return None


def invariant_descriptors(F) -> tuple[SupportSet, Callable[[int], object]]:
    if not getattr(F, "is_puiseux", False):
        raise ValueError(f"{monoid_spec(F)} is not a Puiseux monoid")
    return F.support(), F.inf_valuation


def dividing_atoms(F, x, limit: int = 50) -> Iterator[int]:
    """Indices j (increasing) with a_j | x, scanning the first ``limit``
    atoms and the family's closed-form candidates."""
    x = as_rat(x)
    idx = set(range(1, F.atom_count_at_least(limit) + 1)) | set(F.atom_candidates(x))
    for j in sorted(idx):
        a = F.atom(j)
        if a <= x and member(F, x - a):
            yield j
