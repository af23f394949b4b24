"""The claim suite: every checked statement about the families, as records
with re-checkable evidence.

Each check returns ``(passed, evidence)``; :func:`run_suite` wraps them into
records ``{id, anchor, status, evidence}``.  Sample sizes scale with
``depth`` so a shallow run gives the same verdicts with less evidence.
"""

from __future__ import annotations

import random
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import families as fam
from .crosscheck import DEFAULT_DEPTHS, crosscheck, grid
from .families import (
    AtomUpToDepth,
    LexCone,
    NotAtom,
    decompose,
    dividing_atoms,
    divides,
    is_atom_truncated,
    member,
    parse_family,
)
from .fgmonoid import FgPresentation, NonMember, inf_valuation_fg, member_fg, prime_support_fg, truncate
from .props import (
    PROVEN,
    REFUTED,
    almost_atomic_decide,
    almost_furstenberg_witness,
    diagram_audit,
    dyadic_grid,
    furstenberg_witness,
    nearly_atomic_verify,
    nearly_furstenberg_refute,
    nearly_furstenberg_verify,
    nonisomorphism_witness,
    quasi_atomic_witness,
    sample_members,
)
from .ratcore import fmt_rat, padic_valuation, prime_factors
from .verify import verify_nonisomorphism, verify_status, verify_witness

DIFFERENTIAL_FAMILIES = (
    "family:af-not-f{l=1}",
    "family:af-not-nf{l=1}",
    "family:nf-not-af{p=7}",
    "family:pow-denom{p=3}",
    "family:f-not-aa",
    "family:na-not-f",
    "family:grams",
)
ALL_FAMILIES = DIFFERENTIAL_FAMILIES + ("family:lexcone",)


@dataclass(frozen=True)
class SuiteConfig:
    depth: int = 50
    crosscheck_depths: tuple = DEFAULT_DEPTHS
    a_max: int = 64
    two_max: int = 6
    seed: int = 0
    workers: int = 1

    def to_json(self) -> dict:
        return {"depth": self.depth, "crosscheck_depths": list(self.crosscheck_depths),
                "a_max": self.a_max, "two_max": self.two_max, "seed": self.seed}


@dataclass
class Claim:
    id: str
    anchor: str
    check: Callable[[SuiteConfig], tuple[bool, dict]]


@dataclass
class ClaimRecord:
    id: str
    anchor: str
    status: str
    evidence: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {"id": self.id, "anchor": self.anchor, "status": self.status,
                "evidence": self.evidence}


def _s(q) -> str:
    return fmt_rat(q)


def _verified(F, w: dict) -> bool:
    verify_witness(F, w)
    return True


# --------------------------------------------------------------------------
# 1. differential soundness
# --------------------------------------------------------------------------

def check_differential(cfg: SuiteConfig, specs=DIFFERENTIAL_FAMILIES):
    out = {}
    ok = True
    for spec in specs:
        rep = crosscheck(parse_family(spec), cfg.crosscheck_depths, cfg.a_max, cfg.two_max,
                         workers=cfg.workers)
        j = rep.to_json()
        out[spec] = {k: j[k] for k in ("checked", "members", "brute_force_runs",
                                       "disagreements", "unknown")}
        ok &= rep.ok
    return ok, out


# --------------------------------------------------------------------------
# 2. atom sets
# --------------------------------------------------------------------------

def _lexcone_atoms():
    F = LexCone()
    ok = F.is_atom_on_grid(F.ATOM)
    splits = []
    for x in range(-5, 6):
        # (x, 1) = (x - 1, 1) + (1, 0)
        u, v = (x - 1, 1), (1, 0)
        good = F.member(u) and F.member(v) and (u[0] + v[0], u[1] + v[1]) == (x, 1)
        ok &= good
        splits.append([[x, 1], list(u), list(v)])
    return ok, {"atom": [1, 0], "decompositions": splits}


def check_atoms(cfg: SuiteConfig, specs=ALL_FAMILIES, count: int = 20, depth: int = 10):
    ok = True
    out = {}
    for spec in specs:
        F = parse_family(spec)
        if isinstance(F, LexCone):
            good, ev = _lexcone_atoms()
            ok &= good
            out[spec] = ev
            continue
        atoms = []
        for n in range(1, F.atom_count_at_least(count) + 1):
            res = is_atom_truncated(F, n, max(depth, n))
            good = isinstance(res, AtomUpToDepth)
            ok &= good
            atoms.append([n, _s(F.atom(n)), good])
        claimed = set(F.claimed_atoms(depth))
        splits = []
        for g in truncate(F, depth).generators:
            if g in claimed:
                continue
            d = decompose(F, g)
            good = isinstance(d, NotAtom) and d.x + d.y == g and bool(member(F, d.x)) \
                and bool(member(F, d.y)) and d.x > 0 and d.y > 0
            ok &= good
            splits.append([_s(g), _s(d.x) if d else None, _s(d.y) if d else None])
        out[spec] = {"claimed_atoms": atoms, "decompositions": splits}
    return ok, out


# --------------------------------------------------------------------------
# 3. family claims
# --------------------------------------------------------------------------

def check_pow_denom(cfg: SuiteConfig):
    F = parse_family("family:pow-denom{p=3}")
    ev = {}
    ok = isinstance(member_fg(FgPresentation.of("1/2"), Fraction(1, 3)), NonMember)
    ev["1/3 outside <1/2>"] = ok
    atoms_ok = F.claimed_atoms(5) == [Fraction(1, 2)] and isinstance(
        is_atom_truncated(F, 1, 10), AtomUpToDepth)
    splits = []
    for n in range(1, 11):
        g, h = Fraction(1, 3**n), Fraction(1, 3 ** (n + 1))
        good = 3 * h == g and bool(member(F, h)) and bool(divides(F, h, g))
        atoms_ok &= good
        splits.append([_s(g), "3", _s(h)])
    ev["atom set"] = {"atoms": ["1/2"], "splits": splits, "ok": atoms_ok}
    ok &= atoms_ok

    members = sample_members(F, 20 * cfg.depth, cfg.seed, depth=12)
    qa_ok = True
    for b in members:
        w = quasi_atomic_witness(F, b, Fraction(1, 2))
        qa_ok &= _verified(F, w)
    ev["quasi-atomic identity"] = {"count": len(members), "ok": qa_ok}
    ok &= qa_ok

    probes = [Fraction(m, 3**k) for k in range(1, 5) for m in range(1, 3**k) if m % 3]
    af = [almost_furstenberg_witness(F, b) for b in probes]
    af_ok = all(r.verdict == REFUTED and _verified(F, r.witness) for r in af)
    ev["almost-F refuted"] = {"probes": [_s(b) for b in probes], "ok": af_ok}
    cs = [Fraction(0)] + members[: cfg.depth]
    refs = [nearly_furstenberg_refute(F, c) for c in cs]
    nf_ok = all(_verified(F, w) for w in refs)
    ev["nearly-F refuted"] = {"refutations": refs, "ok": nf_ok}
    ok &= af_ok and nf_ok
    return ok, ev


def check_af_not_f(cfg: SuiteConfig):
    F = parse_family("family:af-not-f{l=1}")
    ev = {}
    n_atoms = 200
    bad = [n for n in range(1, n_atoms + 1) if divides(F, F.atom(n), 1)]
    # a_n | 1 would need 1 - p_n a_n = 1 - r_n >= 0, and every r_n exceeds 1
    closed = all(F.atom(n) * F.private_prime(n) > 1 for n in range(1, n_atoms + 1))
    ev["no atom divides 1"] = {"explicit": n_atoms, "violations": bad, "closed_form": closed}
    ok = not bad and closed

    rng = random.Random(cfg.seed)
    pool = dyadic_grid(Fraction(1), 6)
    bs = sorted(rng.sample(pool, min(len(pool), cfg.depth)))
    ws = []
    for b in bs:
        r = almost_furstenberg_witness(F, b)
        good = r.verdict == PROVEN and _verified(F, r.witness) and r.witness["c"] == "2"
        ok &= good
        ws.append(r.witness)
    ev["almost-F witnesses"] = ws

    sample = set(pool[: cfg.depth])
    for x in sample_members(F, 4 * cfg.depth, cfg.seed):
        if len(sample) == 4 * cfg.depth:
            break
        sample.add(x)
    sample = sorted(sample)
    nf = nearly_furstenberg_verify(F, 1, sample)
    good = nf.verdict == "proven-on-sample" and _verified(F, nf.witness)
    ok &= good
    ev["nearly-F with c = 1"] = nf.to_json()
    return ok, ev


def check_nf_not_af(cfg: SuiteConfig):
    F = parse_family("family:nf-not-af{p=7}")
    a = Fraction(1, 7)
    ev = {}
    ok = not divides(F, a, Fraction(1, 2))
    ev["1/7 does not divide 1/2"] = ok
    gens = F.truncation_generators(20)
    misses = [_s(m) for m in gens if not divides(F, a, Fraction(1, 2) + m)]
    ev["1/7 divides 1/2 + m"] = {"generators": len(gens), "misses": misses}
    ok &= not misses
    r = almost_furstenberg_witness(F, Fraction(1, 2))
    good = r.verdict == REFUTED and _verified(F, r.witness)
    ev["almost-F refuted"] = r.to_json()
    return ok and good, ev


def check_af_not_nf(cfg: SuiteConfig):
    F = parse_family("family:af-not-nf{l=1}")
    ev = {}
    ok = True
    ws = []
    for n in range(1, 21):
        b = Fraction(1, 2**n)
        r = almost_furstenberg_witness(F, b, construction=True)
        w = r.witness
        good = (r.verdict == PROVEN and w["c"] == _s(1 - b) and w["index"] == n + 1
                and _verified(F, w))
        ok &= good
        ws.append(w)
    ev["almost-F construction"] = ws

    cs = sample_members(F, cfg.depth, cfg.seed, depth=10)
    refs = [nearly_furstenberg_refute(F, c) for c in cs]
    good = all(_verified(F, w) for w in refs)
    ok &= good
    ev["nearly-F refutations"] = refs

    mism = []
    checked = set()
    for k in range(0, 8):
        for x in range(1, 65):
            b = Fraction(x, 2**k)
            checked.add(b)
            has = next(iter(dividing_atoms(F, b, 60)), None) is not None
            if has != (b >= Fraction(1, 2)):
                mism.append(_s(b))
    ev["non-Furstenberg set is the dyadics below 1/2"] = {"checked": len(checked), "mismatches": mism}
    ok &= not mism
    return ok, ev


def check_f_not_aa(cfg: SuiteConfig):
    F = parse_family("family:f-not-aa")
    ev = {}
    r = almost_atomic_decide(F, Fraction(3, 2))
    ok = r.verdict == REFUTED and _verified(F, r.witness)
    ev["3/2 not almost atomic"] = r.to_json()
    elems = [q for q in grid(F) if member(F, q)][:500]
    misses = []
    for b in elems:
        fw = furstenberg_witness(F, b)
        if fw.verdict != PROVEN or not _verified(F, fw.witness):
            misses.append(_s(b))
    ev["atom divisor for every grid member"] = {"count": len(elems), "misses": misses}
    return ok and not misses and len(elems) == 500, ev


def check_na_not_f(cfg: SuiteConfig):
    F = parse_family("family:na-not-f")
    ev = {}
    fw = furstenberg_witness(F, Fraction(1, 2))
    # a_j | 1/2 needs 1/2 >= p_j a_j, and p_j a_j = 1 or o/ell2(o) > 1
    closed = all(F.atom(j) * F.private_prime(j) >= 1 for j in range(1, cfg.depth + 1))
    ok = fw.verdict == REFUTED and _verified(F, fw.witness) and closed
    ev["1/2 has no atom divisor"] = {"status": fw.to_json(), "closed_form": closed}
    bs = sorted({Fraction(x, 2**y) for x in range(0, 101) for y in range(0, 11)})
    na = nearly_atomic_verify(F, bs)
    good = _verified(F, na.witness)
    ok &= good
    ev["1 + x/2^y atomic"] = {"count": len(bs), "ok": good,
                              "factorizations": na.witness["factorizations"]}
    one = 3 * F.atom(1) == 1
    ok &= one
    ev["1 = 3 * 1/3"] = one
    return ok, ev


def check_lexcone(cfg: SuiteConfig, radius: int = 100):
    F = LexCone()
    grid = [(x, y) for x in range(-radius, radius + 1) for y in range(0, radius + 1)]
    pts = [v for v in grid if F.member(v)]
    misses = [list(v) for v in pts if v != (0, 0) and not F.divides(F.ATOM, v)]
    # (0,1) + b has second coordinate >= 1 while N0*(1,0) sits on y = 0
    hits = [list(b) for b in pts if 1 + b[1] == 0]
    return not misses and not hits, {"grid": len(grid), "members": len(pts), "divisor_misses": misses,
                                     "atomic_hits": hits}


def check_invariants(cfg: SuiteConfig):
    rng = random.Random(cfg.seed)
    rows = []
    ok = True
    for _ in range(20):
        gens = sorted({Fraction(rng.randint(1, 30), rng.choice([1, 2, 3, 4, 5, 6, 9, 10, 25]))
                       for _ in range(rng.randint(1, 4))})
        P = FgPresentation(tuple(gens))
        q = Fraction(rng.randint(1, 20), rng.randint(1, 20))
        Q = FgPresentation(tuple(q * g for g in gens))
        s1, s2 = prime_support_fg(P), prime_support_fg(Q)
        diff = s1 ^ s2
        good = diff <= set(prime_factors(q.numerator * q.denominator))
        for p in sorted(s1 | s2 | set(prime_factors(q.numerator)) | {2, 3, 5}):
            good &= inf_valuation_fg(Q, p) == inf_valuation_fg(P, p) + padic_valuation(q, p)
        ok &= good
        rows.append({"presentation": str(P), "q": _s(q), "support_difference": sorted(diff),
                     "ok": good})
    pairs = []
    for a, b in (("family:pow-denom{p=3}", "family:pow-denom{p=5}"),
                 ("family:af-not-f{l=1}", "family:af-not-f{l=2}")):
        F1, F2 = parse_family(a), parse_family(b)
        r = nonisomorphism_witness(F1, F2)
        good = r.verdict == PROVEN
        if good:
            verify_nonisomorphism(F1, F2, r.witness)
        ok &= good
        pairs.append(r.to_json())
    return ok, {"scalings": rows, "nonisomorphism": pairs}


# --------------------------------------------------------------------------
# 4. diagram
# --------------------------------------------------------------------------

def check_diagram(cfg: SuiteConfig):
    ok = True
    out = {}
    for spec in ALL_FAMILIES:
        r = diagram_audit(parse_family(spec), cfg.depth, cfg.seed)
        for rec in r["statuses"].values():
            verify_status(rec)
        ok &= r["ok"]
        out[spec] = {"verdicts": {p: s["verdict"] for p, s in r["statuses"].items()},
                     "violations": r["violations"], "mismatches": r["mismatches"]}
    return ok, out


# --------------------------------------------------------------------------
# 5. mutations
# --------------------------------------------------------------------------

MUTATIONS = {
    "nf-not-af: drop F > 0 for shifted generators": (
        "_coset_dyadic_ok", lambda F, t: F >= 0),
    "f-not-aa: drop the 2-adic test of the atomic part": (
        "_two_adic_ok", lambda q: True),
    "tagged-atom oracle: drop the sign test on the remainder": (
        "_remainder_ok", lambda F, r: F.base.contains(abs(r))),
}
# Kept for the record: this guard never fires on the first 1000 indices of
# P_1 or P_2, so removing it changes nothing observable.
EQUIVALENT_MUTATIONS = {
    "af-not-nf: drop the p_n not dividing 2^n - 1 guard": (
        "_af_not_nf_admissible", lambda p, n: True),
}


@contextmanager
def mutated(hook: str, replacement):
    original = getattr(fam, hook)
    setattr(fam, hook, replacement)
    try:
        yield
    finally:
        setattr(fam, hook, original)


def check_mutations(cfg: SuiteConfig):
    targets = [c for c in CLAIMS if c.id not in ("C4-diagram", "C5-mutations")]
    out = {}
    ok = True
    for name, (hook, repl) in {**MUTATIONS, **EQUIVALENT_MUTATIONS}.items():
        with mutated(hook, repl):
            failed = [r.id for r in (_run_claim(c, cfg) for c in targets) if not r.passed]
        equivalent = name in EQUIVALENT_MUTATIONS
        if not equivalent:
            ok &= bool(failed)
        out[name] = {"failing_claims": failed, "equivalent": equivalent}
    return ok, out


# --------------------------------------------------------------------------
# suite
# --------------------------------------------------------------------------

CLAIMS = [
    Claim("C1-differential",
          "family oracles agree with exhaustive search in truncations on the rational grid",
          check_differential),
    Claim("C2-atoms",
          "claimed atoms are atoms in deep truncations; other generators split",
          check_atoms),
    Claim("C3a-pow-denom",
          "pow-denom{3}: 1/3 not in <1/2>, atoms {1/2}, quasi-atomic, not almost/nearly F",
          check_pow_denom),
    Claim("C3b-af-not-f",
          "af-not-f{1}: no atom divides 1; almost F with c = 2; nearly F with c = 1",
          check_af_not_f),
    Claim("C3c-nf-not-af",
          "nf-not-af{7}: 1/7 does not divide 1/2 but divides 1/2 + m; not almost F",
          check_nf_not_af),
    Claim("C3d-af-not-nf",
          "af-not-nf{1}: almost F via c = 1 - 1/2^n; not nearly F; non-F set is (0,1/2) dyadics",
          check_af_not_nf),
    Claim("C3e-f-not-aa",
          "f-not-aa: 3/2 is not almost atomic; every nonzero member has an atom divisor",
          check_f_not_aa),
    Claim("C3f-na-not-f",
          "na-not-f: 1/2 has no atom divisor; 1 + b atomic for dyadic b; 1 = 3 * 1/3",
          check_na_not_f),
    Claim("C3g-lexcone",
          "lexcone: (1,0) divides every nonzero member; (0,1) + b never atomic",
          check_lexcone),
    Claim("C3h-invariants",
          "scaling keeps supports within finite difference and shifts inf v_p; "
          "invariant mismatches separate the parametrized families",
          check_invariants),
    Claim("C4-diagram",
          "status vectors match the expected classification without implication violations",
          check_diagram),
    Claim("C5-mutations",
          "each documented single-branch oracle corruption breaks some claim",
          check_mutations),
]


def _run_claim(claim: Claim, cfg: SuiteConfig) -> ClaimRecord:
    t0 = time.perf_counter()
    try:
        passed, evidence = claim.check(cfg)
    except Exception as exc:
        passed, evidence = False, {"error": f"{type(exc).__name__}: {exc}"}
    return ClaimRecord(claim.id, claim.anchor, "pass" if passed else "fail", evidence,
                       time.perf_counter() - t0)


def run_suite(cfg: SuiteConfig = SuiteConfig(), only=None) -> list[ClaimRecord]:
    chosen = [c for c in CLAIMS if only is None or c.id in only]
    return [_run_claim(c, cfg) for c in chosen]


def claim_by_id(cid: str) -> Claim:
    for c in CLAIMS:
        if c.id == cid:
            return c
    raise KeyError(cid)


__all__ = ["SuiteConfig", "ClaimRecord", "CLAIMS", "run_suite", "claim_by_id",
           "MUTATIONS", "EQUIVALENT_MUTATIONS", "mutated"]
