"""Acceptance criteria 1-5, each reported as one PASS/FAIL line.

The suite runs at the default configuration (depth 50, grid a <= 64,
b over 2^{<=6} * 3 * three tagged primes, truncation depths 4, 8, 12).
Mutation sensitivity is checked here with monkeypatch, independently of the
claim suite's own mutation claim.
"""

from __future__ import annotations

import json
import time

import pytest

from puiseux import families
from puiseux.claims import CLAIMS, DIFFERENTIAL_FAMILIES, SuiteConfig, _run_claim, run_suite

CFG = SuiteConfig()
C1_BUDGET = 120.0
C4_BUDGET = 60.0
REPORT_BUDGET = 300.0

BASE_CLAIMS = [c.id for c in CLAIMS if c.id != "C5-mutations"]

# (module hook, replacement) pairs; each drops one oracle branch.
SPOT_MUTATIONS = {
    "nf-not-af without the F > 0 test": ("_coset_dyadic_ok", lambda F, t: F >= 0),
    "f-not-aa without the 2-adic test": ("_two_adic_ok", lambda q: True),
    "tagged-atom oracle without the sign test": ("_remainder_ok",
                                                 lambda F, r: F.base.contains(abs(r))),
}
GUARD_MUTATION = ("_af_not_nf_admissible", lambda p, n: True)


@pytest.fixture(scope="module")
def suite():
    t0 = time.perf_counter()
    recs = {r.id: r for r in run_suite(CFG, only=set(BASE_CLAIMS))}
    return recs, time.perf_counter() - t0


def test_criterion_1_differential_soundness(suite, criterion_line):
    recs, _ = suite
    r = recs["C1-differential"]
    ev = r.evidence
    disagreements = sum(len(ev[s]["disagreements"]) for s in DIFFERENTIAL_FAMILIES)
    checked = sum(ev[s]["checked"] for s in DIFFERENTIAL_FAMILIES)
    runs = sum(ev[s]["brute_force_runs"] for s in DIFFERENTIAL_FAMILIES)
    ok = r.passed and disagreements == 0 and r.seconds <= C1_BUDGET
    criterion_line("1", ok, f"{checked} rationals over {len(DIFFERENTIAL_FAMILIES)} families, "
                  f"{runs} truncated searches at depths {list(CFG.crosscheck_depths)}, "
                  f"{disagreements} disagreements, {r.seconds:.1f}s (limit {C1_BUDGET:.0f}s)")
    assert set(ev) == set(DIFFERENTIAL_FAMILIES)
    assert tuple(CFG.crosscheck_depths) == (4, 8, 12) and CFG.a_max == 64 and CFG.two_max == 6
    assert ok, json.dumps({s: ev[s]["disagreements"][:3] for s in ev})


def test_criterion_2_atom_sets(suite, criterion_line):
    recs, _ = suite
    r = recs["C2-atoms"]
    atoms = splits = 0
    for spec, ev in r.evidence.items():
        if spec == "family:lexcone":
            continue
        atoms += sum(1 for _, _, good in ev["claimed_atoms"] if good)
        splits += sum(1 for g, x, y in ev["decompositions"] if x is not None)
        F = families.parse_family(spec)
        assert len(ev["claimed_atoms"]) == F.atom_count_at_least(20)
    criterion_line("2", r.passed, f"{atoms} claimed atoms survive depth-10 truncations, "
                        f"{splits} other generators split explicitly")
    assert r.passed, json.dumps(r.evidence)[:2000]


SUBCLAIMS = {
    "3a": "C3a-pow-denom", "3b": "C3b-af-not-f", "3c": "C3c-nf-not-af", "3d": "C3d-af-not-nf",
    "3e": "C3e-f-not-aa", "3f": "C3f-na-not-f", "3g": "C3g-lexcone", "3h": "C3h-invariants",
}


def _sizes(cid: str, ev: dict) -> str:
    if cid == "C3a-pow-denom":
        n = ev["quasi-atomic identity"]["count"]
        assert n == 1000
        return f"quasi-atomic identity on {n} members"
    if cid == "C3b-af-not-f":
        n_atoms = ev["no atom divides 1"]["explicit"]
        n_af = len(ev["almost-F witnesses"])
        n_nf = len(ev["nearly-F with c = 1"]["sample"])
        assert (n_atoms, n_af, n_nf) == (200, 50, 200)
        return f"{n_atoms} atoms, {n_af} almost-F witnesses, nearly-F sample of {n_nf}"
    if cid == "C3c-nf-not-af":
        return f"1/7 divides 1/2 + m for {ev['1/7 divides 1/2 + m']['generators']} generators"
    if cid == "C3d-af-not-nf":
        n = len(ev["almost-F construction"])
        m = len(ev["nearly-F refutations"])
        k = ev["non-Furstenberg set is the dyadics below 1/2"]["checked"]
        assert (n, m, k) == (20, 50, 288)
        return f"constructions for n <= {n}, {m} refutations, {k} dyadics classified"
    if cid == "C3e-f-not-aa":
        n = ev["atom divisor for every grid member"]["count"]
        assert n == 500
        return f"3/2 refuted, {n} grid members with atom divisors"
    if cid == "C3f-na-not-f":
        n = ev["1 + x/2^y atomic"]["count"]
        return f"{n} distinct values 1 + x/2^y factored"
    if cid == "C3g-lexcone":
        # |x| <= 100, 0 <= y <= 100; the members are y >= 1 plus x >= 0 on the axis
        assert ev["grid"] == 201 * 101 and ev["members"] == 201 * 100 + 101
        return f"{ev['grid']} grid points, {ev['members']} members"
    if cid == "C3h-invariants":
        assert len(ev["scalings"]) == 20 and len(ev["nonisomorphism"]) == 2
        return "20 scalings, 2 non-isomorphism pairs"
    return ""


@pytest.mark.parametrize("label", list(SUBCLAIMS))
def test_criterion_3_claim_suite(suite, label, criterion_line):
    recs, _ = suite
    r = recs[SUBCLAIMS[label]]
    detail = _sizes(r.id, r.evidence) if r.passed else json.dumps(r.evidence)[:300]
    criterion_line(label, r.passed, detail)
    assert r.passed, json.dumps(r.evidence)[:2000]


def test_criterion_4_diagram_audit(suite, criterion_line):
    recs, _ = suite
    r = recs["C4-diagram"]
    violations = sum(len(v["violations"]) for v in r.evidence.values())
    mismatches = sum(len(v["mismatches"]) for v in r.evidence.values())
    ok = r.passed and r.seconds <= C4_BUDGET
    criterion_line("4", ok, f"{len(r.evidence)} families, {mismatches} mismatches, {violations} violations, "
                  f"{r.seconds:.1f}s (limit {C4_BUDGET:.0f}s)")
    assert ok


def test_full_report_budget(suite, criterion_line):
    _, seconds = suite
    criterion_line("report-runtime", seconds <= REPORT_BUDGET,
         f"claims 1-4 in {seconds:.1f}s (limit {REPORT_BUDGET:.0f}s)")
    assert seconds <= REPORT_BUDGET


def _failing_claims(monkeypatch, hook, repl):
    with monkeypatch.context() as m:
        m.setattr(families, hook, repl)
        return [c.id for c in CLAIMS if c.id in BASE_CLAIMS and not _run_claim(c, CFG).passed]


def test_criterion_5_mutation_sensitivity(monkeypatch, criterion_line):
    caught = {}
    for name, (hook, repl) in SPOT_MUTATIONS.items():
        caught[name] = _failing_claims(monkeypatch, hook, repl)
    ok = all(caught.values())
    criterion_line("5", ok, "; ".join(f"{n} -> {', '.join(f) or 'UNDETECTED'}" for n, f in caught.items()))
    # the real oracles are back in place
    assert families._two_adic_ok.__name__ == "_two_adic_ok"
    assert ok


@pytest.mark.xfail(strict=True, reason="the p_n | 2^n - 1 case never arises for n <= 3000 in "
                                       "pools 1-5, so removing the guard is unobservable")
def test_criterion_5_guard_mutation(monkeypatch, criterion_line):
    failed = _failing_claims(monkeypatch, *GUARD_MUTATION)
    criterion_line("5 (guard example)", bool(failed),
         f"dropping the p_n not dividing 2^n - 1 guard -> {', '.join(failed) or 'UNDETECTED'}")
    assert failed
