from fractions import Fraction as Q

import pytest

from puiseux import crosscheck as cc
from puiseux import families
from puiseux.families import build_family
from puiseux.fgmonoid import NonMember

SMALL = dict(depths=(4, 8), a_max=16, two_max=3)


def test_grid_shape():
    F = build_family("af-not-nf", l=1)
    g = cc.grid(F, a_max=4, two_max=1)
    dens = {q.denominator for q in g}
    assert Q(1, 2 * 3 * 7 * 13) in g
    assert max(dens) == 2 * 3 * 7 * 13
    assert cc.tagged_primes(F) == [3, 7, 13]
    assert g == sorted(set(g))


@pytest.mark.parametrize("spec", ["pow-denom{p=3}", "af-not-f{l=1}", "nf-not-af{p=7}", "af-not-nf{l=1}",
                                  "f-not-aa", "na-not-f", "grams"])
def test_no_disagreements_on_small_grid(spec):
    rep = cc.crosscheck(families.parse_monoid("family:" + spec), **SMALL)
    assert rep.ok, rep.minimal_counterexample()
    assert rep.checked > 0 and rep.members > 0


def test_lexcone_is_rejected():
    with pytest.raises(ValueError):
        cc.crosscheck(build_family("lexcone"))


def test_threaded_run_matches_serial():
    F = build_family("grams")
    a = cc.crosscheck(F, **SMALL).to_json()
    b = cc.crosscheck(F, workers=4, **SMALL).to_json()
    assert a == b


def test_planted_bug_is_caught(monkeypatch):
    F = build_family("grams")
    real = F.member

    def broken(q):
        # reject everything with denominator 20
        if q.denominator == 20:
            return NonMember("planted")
        return real(q)

    monkeypatch.setattr(F, "member", broken)
    rep = cc.crosscheck(F, **SMALL)
    assert not rep.ok
    worst = rep.minimal_counterexample()
    assert worst["kind"] == "truncation-member" and Q(worst["q"]).denominator == 20
    assert worst["q"] == "1/20"


def test_bad_certificate_is_caught(monkeypatch):
    F = build_family("f-not-aa")
    real = F.member

    def lying(q):
        r = real(q)
        if q == Q(8, 15):
            return real(Q(1, 3))  # certificate for the wrong value
        return r

    monkeypatch.setattr(F, "member", lying)
    rep = cc.crosscheck(F, **SMALL)
    kinds = {d["kind"] for d in rep.disagreements}
    assert "bad-certificate" in kinds
