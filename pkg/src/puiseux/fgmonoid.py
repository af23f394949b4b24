"""Finitely generated Puiseux monoids: exact membership, atoms, divisibility.

These procedures make no use of the structure of any particular family and
serve as the brute-force reference the family oracles are tested against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd, lcm
from typing import Iterable, Sequence, Union

from . import kernels
from .ratcore import INFINITY, as_rat, fmt_rat, padic_valuation, parse_rat, prime_factors

DP_THRESHOLD = 10**6
SEARCH_BUDGET = 2 * 10**6


# --------------------------------------------------------------------------
# Results
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    """A nonnegative integer combination of generators summing to ``value``.

    The sum is re-checked on construction, so a Certificate that exists is a
    valid one.
    """

    terms: tuple[tuple[Fraction, int], ...]
    value: Fraction

    def __post_init__(self):
        merged: dict[Fraction, int] = {}
        for g, c in self.terms:
            g = as_rat(g)
            if c < 0 or g <= 0:
                raise ValueError(f"bad certificate term {c}*{g}")
            if c:
                merged[g] = merged.get(g, 0) + c
        terms = tuple(sorted(merged.items()))
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "value", as_rat(self.value))
        if self.total() != self.value:
            raise ValueError(f"certificate sums to {self.total()}, not {self.value}")

    @classmethod
    def of(cls, value, terms: Iterable[tuple[Fraction, int]] = ()) -> "Certificate":
        return cls(tuple(terms), as_rat(value))

    def total(self) -> Fraction:
        return sum((g * c for g, c in self.terms), Fraction(0))

    def generators(self) -> list[Fraction]:
        return [g for g, _ in self.terms]

    def to_json(self) -> list:
        return [[fmt_rat(g), c] for g, c in self.terms]


@dataclass(frozen=True)
class Member:
    certificate: Certificate
    status = "member"

    def __bool__(self):
        return True

    def to_json(self) -> dict:
        return {"status": self.status, "certificate": self.certificate.to_json()}


@dataclass(frozen=True)
class NonMember:
    reason: str
    detail: dict = field(default_factory=dict, compare=False)
    status = "nonmember"

    def __bool__(self):
        return False

    def to_json(self) -> dict:
        return {"status": self.status, "reason": self.reason}


@dataclass(frozen=True)
class Unknown:
    bound: int
    reason: str = "search budget exhausted"
    status = "unknown"

    def __bool__(self):
        return False

    def to_json(self) -> dict:
        return {"status": self.status, "reason": self.reason, "bound": self.bound}


MembershipResult = Union[Member, NonMember, Unknown]


class UndecidedError(RuntimeError):
    """A bounded search gave up where a definite answer was required."""


# --------------------------------------------------------------------------
# Presentations
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class _Plan:
    order: tuple[int, ...]
    weights: tuple[int, ...]
    suffix_gcd: tuple[int, ...]
    dominated: tuple[bool, ...]


@dataclass(frozen=True)
class FgPresentation:
    generators: tuple[Fraction, ...]

    def __post_init__(self):
        gens = sorted({as_rat(g) for g in self.generators})
        if gens and gens[0] <= 0:
            raise ValueError("generators must be positive")
        object.__setattr__(self, "generators", tuple(gens))

    @classmethod
    def of(cls, *gens) -> "FgPresentation":
        if len(gens) == 1 and not isinstance(gens[0], (int, str, Fraction)):
            gens = tuple(gens[0])
        return cls(tuple(as_rat(g) for g in gens))

    @classmethod
    def parse(cls, text: str) -> "FgPresentation":
        s = text.strip()
        if not s.startswith("fg:"):
            raise ValueError("finite presentation must start with 'fg:'")
        body = s[3:].strip()
        if not body:
            return cls(())
        return cls(tuple(parse_rat(t) for t in body.split(",")))

    def __str__(self):
        return "fg:" + ",".join(fmt_rat(g) for g in self.generators)

    def __len__(self):
        return len(self.generators)

    def without(self, g) -> "FgPresentation":
        g = as_rat(g)
        return FgPresentation(tuple(x for x in self.generators if x != g))

    @cached_property
    def common_denominator(self) -> int:
        return reduce(lcm, (g.denominator for g in self.generators), 1)

    @cached_property
    def _plan(self) -> _Plan:
        return _build_plan(self.generators, self.common_denominator)


def _build_plan(gens: Sequence[Fraction], L: int) -> _Plan:
    w_all = [int(g * L) for g in gens]
    remaining = list(range(len(gens)))
    order: list[int] = []
    while remaining:
        best = None
        for i in remaining:
            rest = reduce(gcd, (w_all[j] for j in remaining if j != i), 0)
            step = rest // gcd(w_all[i], rest) if rest else 0
            # big weights and long congruence steps leave few coefficient choices
            key = (w_all[i] * step if step else float("inf"), w_all[i], -i)
            if best is None or key > best[0]:
                best = (key, i)
        order.append(best[1])
        remaining.remove(best[1])
    weights = [w_all[i] for i in order]
    n = len(weights)
    sg = [0] * (n + 1)
    for k in range(n - 1, -1, -1):
        sg[k] = gcd(weights[k], sg[k + 1])
    dominated = [False] * n
    for k in range(n - 2, -1, -1):
        rest = sg[k + 1]
        inc = weights[k] * (rest // gcd(weights[k], rest))
        status, _, _ = kernels.dfs_search(
            weights[k + 1:], sg[k + 1:], dominated[k + 1:], inc, SEARCH_BUDGET
        )
        dominated[k] = status == kernels.FOUND
    return _Plan(tuple(order), tuple(weights), tuple(sg), tuple(dominated))


def _presentation(P) -> FgPresentation:
    if isinstance(P, FgPresentation):
        return P
    if isinstance(P, str):
        return FgPresentation.parse(P)
    return FgPresentation.of(P)


# --------------------------------------------------------------------------
# Membership
# --------------------------------------------------------------------------

def _lexmin_dp(gens, weights, target) -> list[int] | None:
    table = kernels.suffix_reach(weights, target)
    if not table[0, target]:
        return None
    coeffs = []
    t = target
    for i, w in enumerate(weights):
        c = 0
        while not table[i + 1, t - c * w]:
            c += 1
        coeffs.append(c)
        t -= c * w
    return coeffs


def member_fg(
    P,
    q,
    *,
    threshold: int = DP_THRESHOLD,
    budget: int = SEARCH_BUDGET,
    method: str = "auto",
) -> MembershipResult:
    """Decide ``q in <P>``.

    Small scaled targets go through a dynamic program and get the
    lexicographically smallest certificate in sorted generator order; larger
    ones use a congruence-pruned coefficient search, which may report
    :class:`Unknown` when ``budget`` nodes are exhausted.
    """
    P = _presentation(P)
    q = as_rat(q)
    if q < 0:
        return NonMember("negative")
    if q == 0:
        return Member(Certificate.of(0))
    if not P.generators:
        return NonMember("empty presentation")
    L = P.common_denominator
    scaled = q * L
    if scaled.denominator != 1:
        return NonMember("denominator", {"lcm": L})
    T = int(scaled)
    gens = P.generators
    weights = [int(g * L) for g in gens]
    g_all = reduce(gcd, weights)
    if T % g_all:
        return NonMember("lattice", {"gcd": g_all})

    if method == "dp" or (method == "auto" and T // g_all <= threshold):
        red = [w // g_all for w in weights]
        coeffs = _lexmin_dp(gens, red, T // g_all)
        if coeffs is None:
            return NonMember("exhaustive")
        return Member(Certificate.of(q, zip(gens, coeffs)))

    plan = P._plan
    status, coeffs, nodes = kernels.dfs_search(
        list(plan.weights), list(plan.suffix_gcd), list(plan.dominated), T, budget
    )
    if status == kernels.BUDGET:
        return Unknown(budget)
    if status == kernels.EXHAUSTED:
        return NonMember("exhaustive")
    terms = [(gens[i], c) for i, c in zip(plan.order, coeffs)]
    return Member(Certificate.of(q, terms))


def require_decided(result: MembershipResult) -> bool:
    if isinstance(result, Unknown):
        raise UndecidedError(result.reason)
    return bool(result)


def divides_fg(P, a, b, **kw) -> MembershipResult:
    P = _presentation(P)
    a, b = as_rat(a), as_rat(b)
    for x in (a, b):
        if not require_decided(member_fg(P, x, **kw)):
            raise ValueError(f"{fmt_rat(x)} is not in {P}")
    if b < a:
        return NonMember("negative")
    return member_fg(P, b - a, **kw)


def atoms_fg(P, **kw) -> list[Fraction]:
    P = _presentation(P)
    return [g for g in P.generators if not require_decided(member_fg(P.without(g), g, **kw))]


def is_cyclic_check(P) -> tuple[bool, Fraction]:
    """``(True, a)`` when ``<P> = N0*a``; otherwise ``(False, g)`` with a
    generator g that is not a multiple of the smallest one."""
    P = _presentation(P)
    if not P.generators:
        raise ValueError("empty presentation")
    a = P.generators[0]
    for g in P.generators[1:]:
        if (g / a).denominator != 1:
            return False, g
    return True, a


def truncate(F, depth: int) -> FgPresentation:
    """Finite sub-presentation of a family: its first ``depth`` base
    generators and first ``depth`` tagged atoms."""
    if depth < 1:
        raise ValueError("truncation depth must be >= 1")
    return FgPresentation(tuple(F.truncation_generators(depth)))


def prime_support_fg(P) -> frozenset:
    """Primes dividing the denominator of some element of <P>."""
    P = _presentation(P)
    return frozenset(p for g in P.generators for p in prime_factors(g.denominator))


def inf_valuation_fg(P, p: int):
    """inf v_p over the nonzero elements; attained at a generator since
    v_p(x + y) >= min(v_p(x), v_p(y))."""
    P = _presentation(P)
    if not P.generators:
        return INFINITY
    return min(padic_valuation(g, p) for g in P.generators)
