"""Differential testing of family oracles against brute force on truncations.

For a grid of rationals q the family oracle is compared with exact search in
the finitely generated truncations.  Since every truncation is a submonoid,
a truncation certificate for q while the oracle says NonMember is a
disagreement; so is an oracle certificate that does not re-sum to q or uses
something that is not a defining generator.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .families import LexCone, StructuredPresentation, member
from .fgmonoid import Member, Unknown, member_fg, truncate
from .ratcore import fmt_rat

DEFAULT_DEPTHS = (4, 8, 12)


@dataclass
class CrosscheckReport:
    monoid: str
    depths: tuple
    checked: int = 0
    members: int = 0
    brute_force_runs: int = 0
    unknown: list = field(default_factory=list)
    disagreements: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def minimal_counterexample(self):
        if not self.disagreements:
            return None
        return min(self.disagreements, key=lambda d: (Fraction(d["q"]).denominator, Fraction(d["q"])))

    def to_json(self) -> dict:
        return {
            "monoid": self.monoid,
            "depths": list(self.depths),
            "checked": self.checked,
            "members": self.members,
            "brute_force_runs": self.brute_force_runs,
            "unknown": self.unknown,
            "disagreements": self.disagreements,
            "minimal_counterexample": self.minimal_counterexample(),
            "ok": self.ok,
        }


def tagged_primes(F, count: int = 3) -> list[int]:
    if isinstance(F, StructuredPresentation):
        return [F.private_prime(n) for n in range(1, F.atom_count_at_least(count) + 1)]
    if F.tag == "nf-not-af":
        return [F.p]
    return sorted({a.denominator for a in F.claimed_atoms(count)})


def grid(F, a_max: int = 64, two_max: int = 6) -> list[Fraction]:
    """q = a/b, 1 <= a <= a_max, b = 2^i * 3^e * (subset of tagged primes)."""
    extra = sorted(set(tagged_primes(F)) - {2, 3})
    dens = set()
    for i in range(two_max + 1):
        for e in (0, 1):
            for r in range(len(extra) + 1):
                for sub in combinations(extra, r):
                    d = 2**i * 3**e
                    for p in sub:
                        d *= p
                    dens.add(d)
    return sorted({Fraction(a, d) for a in range(1, a_max + 1) for d in dens})


def _check_one(F, q, truncations):
    """Returns (is_member, disagreement or None, unknown depths, brute runs)."""
    try:
        res = member(F, q)
    except Exception as exc:  # a crashing oracle is a finding, not a harness error
        return False, {"q": fmt_rat(q), "kind": "oracle-error", "error": repr(exc)}, [], 0
    if isinstance(res, Member):
        cert = res.certificate
        if cert.total() != q or not all(F.is_generator(g) for g in cert.generators()):
            return True, {"q": fmt_rat(q), "kind": "bad-certificate",
                          "certificate": cert.to_json()}, [], 0
        return True, None, [], 0
    unknown = []
    runs = 0
    for depth, P in truncations:
        runs += 1
        bf = member_fg(P, q)
        if isinstance(bf, Member):
            return False, {"q": fmt_rat(q), "kind": "truncation-member", "depth": depth,
                           "certificate": bf.certificate.to_json()}, unknown, runs
        if isinstance(bf, Unknown):
            unknown.append(depth)
    return False, None, unknown, runs


def crosscheck(F, depths=DEFAULT_DEPTHS, a_max: int = 64, two_max: int = 6,
               workers: int = 1) -> CrosscheckReport:
    if isinstance(F, LexCone):
        raise ValueError("lexcone is not a Puiseux monoid; membership is in closed form")
    truncations = [(d, truncate(F, d)) for d in depths]
    qs = grid(F, a_max, two_max)
    rep = CrosscheckReport(F.spec(), tuple(depths))

    def run(q):
        return _check_one(F, q, truncations)

    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            results = list(ex.map(run, qs))
    else:
        results = [run(q) for q in qs]
    for q, (is_member, bad, unknown, runs) in zip(qs, results):
        rep.checked += 1
        rep.members += is_member
        rep.brute_force_runs += runs
        if bad:
            rep.disagreements.append(bad)
        if unknown:
            rep.unknown.append({"q": fmt_rat(q), "depths": unknown})
    return rep
