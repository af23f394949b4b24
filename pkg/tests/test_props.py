from fractions import Fraction as Q

import pytest

from puiseux.families import build_family, divides, member, parse_monoid
from puiseux.fgmonoid import Member, truncate
from puiseux.props import (
    CLASSIFICATION,
    IMPLICATIONS,
    PROPERTIES,
    PROVEN,
    PROVEN_ON_SAMPLE,
    REFUTED,
    UNKNOWN,
    almost_atomic_decide,
    almost_furstenberg_witness,
    diagram_audit,
    furstenberg_witness,
    nearly_atomic_verify,
    nearly_furstenberg_refute,
    nearly_furstenberg_verify,
    nonisomorphism_witness,
    quasi_atomic_witness,
    quasi_furstenberg_witness,
    sample_members,
)
from puiseux.verify import verify_nonisomorphism, verify_status, verify_witness

POW3 = build_family("pow-denom", p=3)
AF1 = build_family("af-not-f", l=1)
NF7 = build_family("nf-not-af", p=7)
ANF1 = build_family("af-not-nf", l=1)
FNAA = build_family("f-not-aa")
NANF = build_family("na-not-f")


def div(F, a, b):
    return isinstance(divides(F, a, b), Member)


@pytest.mark.parametrize("F,b,a,c,k", [
    (POW3, Q(1, 3), Q(1, 2), Q(2, 3), 2),
    (POW3, Q(1, 9), Q(1, 2), Q(8, 9), 2),
    (AF1, Q(1, 2), Q(2, 3), Q(3, 2), 3),
])
def test_quasi_atomic_witness(F, b, a, c, k):
    w = quasi_atomic_witness(F, b, a)
    assert (Q(w["c"]), w["k"]) == (c, k)
    assert b + c == k * a
    verify_witness(F, w)


@pytest.mark.parametrize("F,b", [(POW3, Q(1, 3)), (POW3, Q(1, 2)), (AF1, Q(1)), (ANF1, Q(1, 4))])
def test_quasi_furstenberg_witness(F, b):
    w = quasi_furstenberg_witness(F, b)
    a, c = Q(w["a"]), Q(w["c"])
    assert div(F, a, b + c) and (c == 0 or not div(F, a, c))
    verify_witness(F, w)


def test_quasi_furstenberg_divisible_element_needs_no_shift():
    w = quasi_furstenberg_witness(POW3, Q(1, 2))
    assert Q(w["c"]) == 0 and Q(w["a"]) == Q(1, 2)


@pytest.mark.parametrize("F,b", [(ANF1, Q(1, 4)), (NANF, Q(1, 2)), (AF1, Q(1))])
def test_furstenberg_refuted(F, b):
    st = furstenberg_witness(F, b, 30)
    assert st.verdict == REFUTED
    verify_witness(F, st.witness)


def test_furstenberg_proven_with_atom():
    st = furstenberg_witness(FNAA, Q(8, 15), 30)
    assert st.verdict == PROVEN and Q(st.witness["a"]) in (Q(1, 3), Q(1, 5))
    verify_witness(FNAA, st.witness)


def test_furstenberg_rejects_non_members():
    with pytest.raises(ValueError):
        furstenberg_witness(FNAA, Q(7, 10))


def test_almost_furstenberg_construction_af_not_nf():
    st = almost_furstenberg_witness(ANF1, Q(1, 2), construction=True)
    w = st.witness
    assert (Q(w["c"]), Q(w["a"]), w["index"]) == (Q(1, 2), Q(3, 28), 2)
    assert div(ANF1, Q(3, 28), Q(1)) and not div(ANF1, Q(3, 28), Q(1, 2))
    verify_witness(ANF1, w)


@pytest.mark.parametrize("n", range(1, 21))
def test_almost_furstenberg_construction_for_each_n(n):
    b = Q(1, 2**n) if n > 1 else Q(1, 2)
    st = almost_furstenberg_witness(ANF1, b, construction=True)
    assert st.verdict == PROVEN
    verify_witness(ANF1, st.witness)


def test_almost_furstenberg_af_not_f():
    st = almost_furstenberg_witness(AF1, Q(1, 2))
    w = st.witness
    assert Q(w["c"]) == 2
    assert AF1.atom(w["index"]) == Q(w["a"])
    assert Q(w["a"]) * AF1.private_prime(w["index"]) == Q(5, 2)
    verify_witness(AF1, w)


def test_almost_furstenberg_single_atom_refutation():
    st = almost_furstenberg_witness(POW3, Q(1, 3))
    assert st.verdict == REFUTED and st.witness["kind"] == "single-atom"
    verify_witness(POW3, st.witness)


def test_nearly_furstenberg_nf_not_af():
    gens = truncate(NF7, 20).generators
    st = nearly_furstenberg_verify(NF7, Q(1, 2), gens, depth=20)
    assert st.verdict == PROVEN_ON_SAMPLE
    assert all(NF7.atom(j) == Q(1, 7) for _, j in st.witness["divisors"])
    verify_witness(NF7, st.witness)


def test_nearly_furstenberg_af_not_f_with_c_one():
    sample = sample_members(AF1, 60, seed=3)
    st = nearly_furstenberg_verify(AF1, Q(1), sample, depth=50)
    assert st.verdict == PROVEN_ON_SAMPLE
    verify_witness(AF1, st.witness)


def test_nearly_furstenberg_counterexample_pow_denom():
    probe = [Q(1, 3**k) for k in range(1, 6)]
    st = nearly_furstenberg_verify(POW3, Q(1, 2), probe, depth=10)
    assert st.verdict == REFUTED
    verify_witness(POW3, st.witness)


@pytest.mark.parametrize("c,d_c,i", [(Q(1, 2), Q(1, 2), 3), (Q(1, 6), Q(0), 2)])
def test_nearly_furstenberg_refute_examples(c, d_c, i):
    w = nearly_furstenberg_refute(ANF1, c, 20)
    assert (Q(w["d_c"]), w["i"], Q(w["b"])) == (d_c, i, Q(1, 2**i))
    verify_witness(ANF1, w)


@pytest.mark.parametrize("b,verdict", [(Q(3, 2), REFUTED), (Q(1, 3), PROVEN), (Q(0), PROVEN)])
def test_almost_atomic_decide(b, verdict):
    st = almost_atomic_decide(FNAA, b)
    assert st.verdict == verdict
    verify_witness(FNAA, st.witness)


def test_almost_atomic_one_third():
    w = almost_atomic_decide(FNAA, Q(1, 3)).witness
    assert Q(w["c"]) == Q(2, 3) and w["sum_atoms"] == [["1/3", 3]]


def test_nearly_atomic_factorizations():
    st = nearly_atomic_verify(NANF, [Q(3, 4), Q(1), Q(1, 2)])
    facts = dict((b, t) for b, t in st.witness["factorizations"])
    assert facts["3/4"] == [["7/44", 11]]
    assert facts["1"] == [["1/3", 6]]
    assert facts["1/2"] == [["3/10", 5]]
    verify_witness(NANF, st.witness)


def test_nonisomorphism():
    st = nonisomorphism_witness(POW3, build_family("pow-denom", p=5))
    assert st.verdict == PROVEN and st.witness["kind"] == "valuation-mismatch"
    verify_nonisomorphism(POW3, build_family("pow-denom", p=5), st.witness)
    st = nonisomorphism_witness(AF1, build_family("af-not-f", l=2))
    assert st.verdict == PROVEN and st.witness["kind"] == "support-mismatch"
    assert nonisomorphism_witness(AF1, AF1).verdict == UNKNOWN


def test_sample_members_is_seeded():
    assert sample_members(AF1, 20, seed=1) == sample_members(AF1, 20, seed=1)
    assert all(member(AF1, x) for x in sample_members(AF1, 20, seed=1))


# ------------------------------------------------------------------ audit

SPECS = ["family:pow-denom{p=3}", "family:af-not-f{l=1}", "family:nf-not-af{p=7}",
         "family:af-not-nf{l=1}", "family:f-not-aa", "family:na-not-f", "family:grams",
         "family:lexcone"]


@pytest.fixture(scope="module", params=SPECS)
def audit(request):
    return parse_monoid(request.param), diagram_audit(parse_monoid(request.param), depth=20)


def test_audit_matches_classification(audit):
    F, r = audit
    assert r["ok"], r["mismatches"] or r["violations"]
    expected = CLASSIFICATION[F.tag]
    for prop, st in r["statuses"].items():
        if prop in expected and st["verdict"] != UNKNOWN:
            assert (st["verdict"] in (PROVEN, PROVEN_ON_SAMPLE)) is expected[prop], prop


def test_audit_respects_implications(audit):
    _, r = audit
    verdicts = {p: s["verdict"] for p, s in r["statuses"].items()}
    for lhs, rhs in IMPLICATIONS:
        if verdicts[lhs] in (PROVEN, PROVEN_ON_SAMPLE):
            assert verdicts[rhs] != REFUTED


def test_audit_witnesses_verify(audit):
    _, r = audit
    assert set(r["statuses"]) == set(PROPERTIES)
    for st in r["statuses"].values():
        verify_status(st)


def test_audit_is_deterministic():
    assert diagram_audit(AF1, depth=10, seed=4) == diagram_audit(AF1, depth=10, seed=4)


@pytest.mark.parametrize("spec,prop,verdict", [
    ("family:f-not-aa", "Furstenberg", PROVEN),
    ("family:f-not-aa", "almost-atomic", REFUTED),
    ("family:na-not-f", "nearly-atomic", PROVEN_ON_SAMPLE),
    ("family:na-not-f", "Furstenberg", REFUTED),
    ("family:lexcone", "Furstenberg", PROVEN_ON_SAMPLE),
    ("family:lexcone", "quasi-atomic", REFUTED),
])
def test_named_verdicts(spec, prop, verdict):
    assert diagram_audit(parse_monoid(spec), depth=15)["statuses"][prop]["verdict"] == verdict
