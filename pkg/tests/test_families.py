from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from puiseux.families import (
    AtomUpToDepth,
    LexCone,
    NotAtom,
    StructuredPresentation,
    bespoke_member_f_not_aa,
    bespoke_member_nf_not_af,
    atomic_part_member,
    build_family,
    decompose,
    divides,
    invariant_descriptors,
    is_atom_truncated,
    lexcone_member,
    member,
    parse_family,
    parse_monoid,
)
from puiseux.fgmonoid import Member, member_fg, truncate
from puiseux.ratcore import NEG_INFINITY, padic_valuation, partition_primes

SPECS = [
    "family:pow-denom{p=3}", "family:af-not-f{l=1}", "family:af-not-f{l=2}",
    "family:nf-not-af{p=7}", "family:af-not-nf{l=1}", "family:f-not-aa",
    "family:na-not-f", "family:grams",
]
STRUCTURED = [s for s in SPECS if isinstance(parse_monoid(s), StructuredPresentation)]


def yes(r):
    return isinstance(r, Member)


# ------------------------------------------------------------ construction

@pytest.mark.parametrize("tag,params,atoms", [
    ("af-not-nf", {"l": 1}, [Q(1, 6), Q(3, 28), Q(7, 104)]),
    ("na-not-f", {}, [Q(1, 3), Q(3, 10), Q(5, 28)]),
    ("f-not-aa", {}, [Q(1, 3), Q(1, 5), Q(1, 7)]),
    ("af-not-f", {"l": 1}, [Q(2, 3), Q(3, 7)]),
    ("grams", {}, [Q(1, 6), Q(1, 20), Q(1, 56)]),
])
def test_first_atoms(tag, params, atoms):
    assert build_family(tag, **params).claimed_atoms(len(atoms)) == atoms


def test_pow_denom_has_one_atom():
    F = build_family("pow-denom", p=3)
    assert F.claimed_atoms(3) == [Q(1, 2)]


@pytest.mark.parametrize("p", [2, 3, 5, 9])
def test_nf_not_af_needs_large_prime(p):
    with pytest.raises(ValueError):
        build_family("nf-not-af", p=p)


@pytest.mark.parametrize("spec", SPECS + ["family:lexcone"])
def test_spec_round_trip(spec):
    F = parse_monoid(spec)
    assert parse_monoid(F.spec()) is F
    assert F.spec() == spec


@pytest.mark.parametrize("alias", ["family:af-not-f{ℓ=1}", "family:af-not-f{ell=1}", "family:af-not-f{ l = 1 }"])
def test_key_aliases(alias):
    assert parse_family(alias).spec() == "family:af-not-f{l=1}"


@pytest.mark.parametrize("bad", [
    "family:", "family:nope", "family:af-not-f{l=}", "family:af-not-f{q=1}",
    "family:af-not-f{l=1", "family:grams{p=3}", "fam:grams", "",
])
def test_parser_rejects(bad):
    with pytest.raises(ValueError):
        parse_monoid(bad)


@settings(max_examples=300)
@given(st.text(max_size=40))
def test_parser_never_crashes(text):
    try:
        parse_monoid(text)
    except ValueError:
        pass


@settings(max_examples=200)
@given(st.sampled_from(["family:", "fg:"]), st.text(alphabet="0123456789/,{}=lpℓ-abcfgnotr ", max_size=25))
def test_parser_never_crashes_near_valid(prefix, body):
    try:
        parse_monoid(prefix + body)
    except ValueError:
        pass


# ------------------------------------------------------------- membership

@pytest.mark.parametrize("spec,q,expected", [
    ("family:af-not-nf{l=1}", Q(1, 2), True),
    ("family:af-not-nf{l=1}", Q(1, 12), False),
    ("family:af-not-f{l=1}", Q(1, 3), False),
    ("family:af-not-f{l=1}", Q(2, 3), True),
    ("family:nf-not-af{p=7}", Q(5, 14), False),
    ("family:nf-not-af{p=7}", Q(9, 14), True),
    ("family:nf-not-af{p=7}", Q(0), True),
    ("family:f-not-aa", Q(3, 2), True),
    ("family:f-not-aa", Q(8, 15), True),
    ("family:f-not-aa", Q(1, 2), False),
    ("family:f-not-aa", Q(7, 10), False),
    ("family:pow-denom{p=3}", Q(1, 3), True),
    ("family:pow-denom{p=3}", Q(1, 5), False),
    ("family:grams", Q(1, 6), True),
    ("family:grams", Q(1, 12), False),
])
def test_membership_examples(spec, q, expected):
    r = member(parse_monoid(spec), q)
    assert yes(r) is expected
    if expected:
        assert r.certificate.total() == q


def test_direct_oracles():
    assert yes(bespoke_member_nf_not_af(7, Q(9, 14)))
    assert not yes(bespoke_member_nf_not_af(7, Q(5, 14)))
    assert yes(bespoke_member_f_not_aa(Q(8, 15)))
    assert not yes(atomic_part_member(Q(3, 2)))
    assert yes(atomic_part_member(Q(1, 3) + Q(1, 5)))


def test_certificates_use_defining_generators():
    F = parse_monoid("family:f-not-aa")
    r = member(F, Q(8, 15))
    assert dict(r.certificate.terms) == {Q(1, 3): 1, Q(1, 5): 1}
    for spec in STRUCTURED:
        F = parse_monoid(spec)
        for a in F.claimed_atoms(5):
            r = member(F, 3 * a + Q(1, 1))
            if yes(r):
                assert F.verify_certificate(r.certificate)


@pytest.mark.parametrize("spec", SPECS)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_closed_under_addition(spec, data):
    F = parse_monoid(spec)
    gens = truncate(F, 6).generators
    xs = data.draw(st.lists(st.sampled_from(gens), min_size=1, max_size=4))
    assert yes(member(F, sum(xs)))


@pytest.mark.parametrize("spec", SPECS)
def test_truncations_are_monotone(spec):
    F = parse_monoid(spec)
    gens = [set(truncate(F, d).generators) for d in (2, 4, 8)]
    assert gens[0] <= gens[1] <= gens[2]
    grid = [Q(a, b) for a in range(1, 20) for b in (1, 2, 3, 4, 6, 12)]
    for q in grid:
        hits = [yes(member_fg(truncate(F, d), q)) for d in (2, 4, 8)]
        assert hits == sorted(hits), q  # once a member, always a member
        if hits[-1]:
            assert yes(member(F, q))


# ----------------------------------------------------------- divisibility

def test_divides_examples():
    assert not yes(divides(build_family("nf-not-af", p=7), Q(1, 7), Q(1, 2)))
    F = build_family("af-not-f", l=1)
    assert not any(yes(divides(F, a, 1)) for a in F.claimed_atoms(200))
    L = build_family("lexcone")
    assert yes(divides(L, (1, 0), (-5, 2)))


def test_divides_requires_members():
    with pytest.raises(ValueError):
        divides(build_family("grams"), Q(1, 6), Q(1, 9))


@pytest.mark.parametrize("x,y,expected", [(-5, 2, True), (-1, 0, False), (0, 0, True), (3, 0, True), (0, -1, False)])
def test_lexcone_member(x, y, expected):
    assert lexcone_member(x, y) is expected


# ------------------------------------------------------------------ atoms

def test_atoms_up_to_depth():
    assert is_atom_truncated(build_family("af-not-f", l=1), 1, 8) == AtomUpToDepth(8)
    assert is_atom_truncated(build_family("grams"), 1, 6) == AtomUpToDepth(6)


def test_non_atom_generator_decomposes():
    F = build_family("pow-denom", p=3)
    split = decompose(F, Q(1, 3))
    assert isinstance(split, NotAtom) and split.x + split.y == Q(1, 3)
    assert yes(member(F, split.x)) and yes(member(F, split.y))
    # the explicit relation 1/3^n = 3 * 1/3^(n+1)
    r = member_fg(truncate(F, 4).without(Q(1, 3)), Q(1, 3))
    assert yes(r)


@pytest.mark.parametrize("spec", STRUCTURED)
def test_tagged_atom_invariants(spec):
    F = parse_monoid(spec)
    n = F.atom_count_at_least(100)
    primes = [F.private_prime(i) for i in range(1, n + 1)]
    assert len(set(primes)) == len(primes)
    for i, p in enumerate(primes, 1):
        a = F.atom(i)
        assert a > 0 and F.is_generator(a)
        assert padic_valuation(a, p) == -1
        assert F.index_of_prime(p) == i
        # no other atom carries this prime
        for j in range(1, min(n, 30) + 1):
            if j != i:
                assert padic_valuation(F.atom(j), p) >= 0


def test_af_not_nf_guard_holds_for_1000_indices():
    F = build_family("af-not-nf", l=1)
    for n in range(1, 1001):
        p = F.private_prime(n)
        assert pow(2, n, p) != 1
        assert F.atom(n) == (1 - Q(1, 2**n)) / p


def test_af_not_nf_uses_pool_primes():
    F = build_family("af-not-nf", l=1)
    pool = {partition_primes(1, n) for n in range(1, 3000)}
    assert all(F.private_prime(n) in pool for n in range(1, 500))


def test_af_not_f_atoms_deep():
    F = build_family("af-not-f", l=1)
    a = F.atom(1300)
    p = F.private_prime(1300)
    assert padic_valuation(a, p) == -1 and F.index_of_prime(p) == 1300


# ------------------------------------------------------------- invariants

def test_invariant_descriptors():
    s3, v3 = invariant_descriptors(build_family("pow-denom", p=3))
    s5, v5 = invariant_descriptors(build_family("pow-denom", p=5))
    assert s3.symmetric_difference_infinite(s5) is False
    assert v3(3) is NEG_INFINITY and v5(3) == 0
    with pytest.raises(ValueError):
        invariant_descriptors(LexCone())


def test_support_of_parametrized_families_differs_infinitely():
    s1, _ = invariant_descriptors(build_family("af-not-f", l=1))
    s2, _ = invariant_descriptors(build_family("af-not-f", l=2))
    assert s1.symmetric_difference_infinite(s2) is True
    # same pool, different infinite subsets: the descriptors cannot tell
    assert s1.symmetric_difference_infinite(s1) is None
