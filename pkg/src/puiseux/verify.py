"""Re-check property witnesses using only family oracles.

Nothing here imports the code that produced the witnesses; each check
recomputes the claimed sums and divisibilities from the strings in the
witness dict.
"""

from __future__ import annotations

from fractions import Fraction

from .families import (
    AtomUpToDepth,
    LexCone,
    invariant_descriptors,
    is_atom_truncated,
    member,
    parse_monoid,
)
from .ratcore import NEG_INFINITY, as_rat, is_dyadic, padic_valuation


class VerificationError(AssertionError):
    pass


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise VerificationError(msg)


def _in(F, x: Fraction) -> bool:
    return bool(member(F, x))


def _div(F, a: Fraction, b: Fraction) -> bool:
    """a | b in F for members a, b."""
    return b >= a and _in(F, b - a)


def _claimed(F, a: Fraction) -> bool:
    for j in sorted(set(F.atom_candidates(a)) | set(range(1, F.atom_count_at_least(200) + 1))):
        if F.atom(j) == a:
            return True
    return False


def _atom_sum(F, terms) -> Fraction:
    total = Fraction(0)
    for x, m in terms:
        x = as_rat(x)
        _check(isinstance(m, int) and m >= 0, f"bad multiplicity {m}")
        _check(_claimed(F, x), f"{x} is not a claimed atom")
        total += m * x
    return total


def _no_new_divisor(F, b: Fraction, c: Fraction, upto: int) -> None:
    for j in range(1, F.atom_count_at_least(upto) + 1):
        a = F.atom(j)
        _check(not (_div(F, a, b + c) and not _div(F, a, c)),
               f"atom {j} divides b + c without dividing c")


def _non_f_closed_form(F, b: Fraction) -> bool:
    tag = F.tag
    if tag == "af-not-f":
        return is_dyadic(b) and 0 < b <= 1
    if tag == "af-not-nf":
        return is_dyadic(b) and 0 < b < Fraction(1, 2)
    if tag == "na-not-f":
        return is_dyadic(b) and 0 < b < 1
    if tag == "pow-denom":
        d = b.denominator
        while d % F.p == 0:
            d //= F.p
        return d == 1 and 0 < b < 1
    if tag == "nf-not-af":
        return not _div(F, Fraction(1, F.p), b)
    return False


def verify_witness(F, w: dict) -> None:
    """Raise :class:`VerificationError` unless the witness holds in F."""
    kind = w.get("kind")
    r = lambda key: as_rat(w[key])  # noqa: E731

    if kind == "quasi-atomic":
        b, a, c, k = r("b"), r("a"), r("c"), w["k"]
        _check(b + c == k * a, "b + c != k*a")
        _check(_in(F, c) and _in(F, b), "b or c outside the monoid")
        _check(_claimed(F, a), "a is not a claimed atom")
    elif kind == "quasi-furstenberg":
        b, a, c = r("b"), r("a"), r("c")
        _check(_in(F, c), "c outside the monoid")
        _check(_claimed(F, a), "a is not a claimed atom")
        _check(_div(F, a, b + c), "a does not divide b + c")
        _check(not _div(F, a, c), "a divides c")
    elif kind == "atom-divisor":
        a, b = r("a"), r("b")
        _check(_claimed(F, a) and _div(F, a, b), "atom does not divide b")
    elif kind == "atom-divisors":
        for b, j in w["divisors"]:
            _check(_div(F, F.atom(j), as_rat(b)), f"atom {j} does not divide {b}")
    elif kind == "no-atom-divisor":
        b = r("b")
        _check(_in(F, b), "b outside the monoid")
        _check(_non_f_closed_form(F, b), "b is outside the closed-form non-divisible set")
        for j in range(1, F.atom_count_at_least(w["checked_upto"]) + 1):
            _check(not _div(F, F.atom(j), b), f"atom {j} divides b")
    elif kind == "almost-furstenberg":
        b, c, a = r("b"), r("c"), r("a")
        _check(_atom_sum(F, w["c_atoms"]) == c, "c is not the stated sum of atoms")
        _check(_claimed(F, a), "a is not a claimed atom")
        _check(_div(F, a, b + c), "a does not divide b + c")
        _check(not _div(F, a, c), "a divides c")
    elif kind == "single-atom":
        a, b = r("a"), r("b")
        _check(F.finite_atoms == 1 and F.atom(1) == a, "monoid does not have the single atom a")
        _check(_in(F, b) and not _div(F, a, b), "a divides b")
    elif kind == "nearly-furstenberg":
        c = r("c")
        for b, j in w["divisors"]:
            b, a = as_rat(b), F.atom(j)
            _check(_div(F, a, b + c) and not _div(F, a, c), f"atom {j} fails for b = {b}")
    elif kind == "nearly-counterexample":
        _no_new_divisor(F, r("b"), r("c"), w["checked_upto"])
    elif kind == "nearly-refutation":
        c, b, d_c, i = r("c"), r("b"), r("d_c"), w["i"]
        _check(F.tag == "af-not-nf", "refutation form applies to af-not-nf")
        _check(b == Fraction(1, 2**i), "b != 1/2^i")
        rest = c
        for n, e in w["coefficients"]:
            _check(0 <= e < F.private_prime(n), "coefficient not reduced")
            rest -= e * F.atom(n)
        _check(rest == d_c and d_c >= 0 and is_dyadic(d_c), "normal form does not match c")
        n0 = w["threshold_index"]
        thr = lambda n: 1 - Fraction(1, 2**n)  # noqa: E731
        if n0 is None:
            _check(d_c >= 1, "no threshold index although d_c < 1")
        else:
            _check(n0 == 1 or thr(n0 - 1) <= d_c, "threshold index not minimal")
            _check(d_c + b < thr(n0), "a threshold lies in (d_c, d_c + b]")
        _check(w["checked_upto"] >= max([n0 or 0] + [n for n, _ in w["coefficients"]]),
               "explicit range does not cover the finite part")
        _no_new_divisor(F, b, c, w["checked_upto"])
    elif kind == "nearly-refutation-single-atom":
        _check(F.finite_atoms == 1 and F.atom(1) == r("a"), "monoid does not have the single atom a")
        _no_new_divisor(F, r("b"), r("c"), 1)
    elif kind == "almost-atomic":
        b, c = r("b"), r("c")
        _check(_atom_sum(F, w["c_atoms"]) == c, "c is not the stated sum of atoms")
        _check(_atom_sum(F, w["sum_atoms"]) == b + c, "b + c is not the stated sum of atoms")
    elif kind == "two-adic-obstruction":
        b = r("b")
        _check(F.tag == "f-not-aa", "obstruction applies to f-not-aa")
        _check(_in(F, b) and padic_valuation(b, 2) < 0, "b has no negative 2-adic valuation")
        _check(all(a.denominator % 2 for a in F.claimed_atoms(50)), "an atom has even denominator")
    elif kind == "odd-valuation-obstruction":
        b, p = r("b"), w["prime"]
        _check(F.tag == "f-not-aa", "obstruction applies to f-not-aa")
        _check(_in(F, b) and padic_valuation(b, p) < -1, "valuation is not below -1")
    elif kind == "single-atom-multiple":
        a, b = r("a"), r("b")
        _check(F.finite_atoms == 1 and F.atom(1) == a, "monoid does not have the single atom a")
        _check(_in(F, b) and (b / a).denominator != 1, "b is a multiple of the atom")
    elif kind == "nearly-atomic":
        c = r("c")
        _check(_atom_sum(F, w["c_atoms"]) == c, "c is not the stated sum of atoms")
        for b, terms in w["factorizations"]:
            _check(_atom_sum(F, terms) == as_rat(b) + c, f"1 + {b} factorization does not sum")
    elif kind == "atomic-factorizations":
        for b, terms in w["factorizations"]:
            _check(_atom_sum(F, terms) == as_rat(b), f"factorization of {b} does not sum")
    elif kind == "atom":
        if isinstance(F, LexCone):
            _check(F.is_atom_on_grid(tuple(w["a"]), w["radius"]), "decomposition found")
        else:
            res = is_atom_truncated(F, w["index"], max(w["index"], w["depth"]))
            _check(isinstance(res, AtomUpToDepth) and F.atom(w["index"]) == r("a"),
                   "atom decomposes in the truncation")
    elif kind == "lexcone-divisor":
        R = w["radius"]
        for x in range(-R, R + 1):
            for y in range(0, R + 1):
                if (x, y) != (0, 0) and F.member((x, y)):
                    _check(F.divides(tuple(w["a"]), (x, y)), f"(1,0) does not divide {(x, y)}")
    elif kind == "lexcone-not-quasi-atomic":
        # every atomic element has y = 0, and b + c has y >= 1 for members c
        R = w["radius"]
        bx, by = w["b"]
        for x in range(-R, R + 1):
            for y in range(0, R + 1):
                if F.member((x, y)):
                    _check(by + y != 0, "b + c can land on the atomic axis")
    elif kind in ("quasi-atomic-family", "quasi-furstenberg-family",
                  "almost-furstenberg-family", "nearly-refutation-family"):
        items = w.get("witnesses") or w.get("refutations") or []
        for item in items:
            verify_witness(F, item)
    elif kind == "support-mismatch":
        pass  # checked by verify_nonisomorphism
    elif kind == "implied":
        pass  # holds by the named implication; the premise is checked separately
    else:
        raise VerificationError(f"unknown witness kind {kind!r}")


def verify_nonisomorphism(F1, F2, w: dict) -> None:
    s1, v1 = invariant_descriptors(F1)
    s2, v2 = invariant_descriptors(F2)
    if w["kind"] == "support-mismatch":
        _check(s1.symmetric_difference_infinite(s2) is True, "supports differ finitely")
    elif w["kind"] == "valuation-mismatch":
        p = w["prime"]
        _check((v1(p) is NEG_INFINITY) != (v2(p) is NEG_INFINITY), "inf v_p agrees")
    else:
        raise VerificationError(f"not a non-isomorphism witness: {w['kind']!r}")


def verify_status(record: dict) -> None:
    """Re-check a PropertyStatus JSON record; unknown verdicts carry nothing."""
    if record["verdict"] == "unknown" or "witness" not in record:
        return
    F = parse_monoid(record["monoid"])
    verify_witness(F, record["witness"])
