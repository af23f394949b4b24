"""Witnesses and refutations for the Furstenberg and atomicity properties.

Every witness is a plain dict of strings and ints (rationals printed as
``"a/b"``) so it can be written to JSON and re-checked later by
:mod:`puiseux.verify` with nothing but the family oracles.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .families import (
    FNotAa,
    LexCone,
    NaNotF,
    StructuredPresentation,
    dividing_atoms,
    divides,
    invariant_descriptors,
    is_atom_truncated,
    AtomUpToDepth,
    member,
    monoid_spec,
)
from .fgmonoid import truncate
from .ratcore import (
    NEG_INFINITY,
    as_rat,
    dyadic_index,
    ell2,
    fmt_rat,
    is_dyadic,
    mod_p,
    nth_prime,
    padic_valuation,
    prime_factors,
)

PROPERTIES = (
    "antimatter",
    "atomic",
    "Furstenberg",
    "quasi-F",
    "almost-F",
    "nearly-F",
    "quasi-atomic",
    "almost-atomic",
    "nearly-atomic",
)

PROVEN = "proven"
PROVEN_ON_SAMPLE = "proven-on-sample"
REFUTED = "refuted"
UNKNOWN = "unknown"
POSITIVE = (PROVEN, PROVEN_ON_SAMPLE)


@dataclass
class PropertyStatus:
    property: str
    verdict: str
    witness: dict | None = None
    sample: list | None = None
    depth: int | None = None
    monoid: str = ""
    evidence: list = field(default_factory=list)

    @property
    def positive(self) -> bool:
        return self.verdict in POSITIVE

    def to_json(self) -> dict:
        out = {"monoid": self.monoid, "property": self.property, "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.sample is not None:
            out["sample"] = self.sample
        if self.evidence:
            out["evidence"] = self.evidence
        out["depth"] = self.depth
        return out


def _s(q: Fraction) -> str:
    return fmt_rat(q)


def _require_member(F, b: Fraction) -> None:
    if not member(F, b):
        raise ValueError(f"{_s(b)} is not in {monoid_spec(F)}")


def atom_index(F, a, limit: int = 200) -> int | None:
    """Index of a among the claimed atoms of F, or None."""
    a = as_rat(a)
    idx = set(F.atom_candidates(a)) | set(range(1, F.atom_count_at_least(limit) + 1))
    for j in sorted(idx):
        if F.atom(j) == a:
            return j
    return None


# --------------------------------------------------------------------------
# Quasi-atomic / quasi-Furstenberg
# --------------------------------------------------------------------------

def quasi_atomic_witness(F, b, a) -> dict:
    b, a = as_rat(b), as_rat(a)
    if b == 0:
        return {"kind": "quasi-atomic", "b": "0", "a": _s(a), "c": "0", "k": 0}
    _require_member(F, b)
    if atom_index(F, a) is None:
        raise ValueError(f"{_s(a)} is not a claimed atom of {monoid_spec(F)}")
    c = (a.numerator * b.denominator - 1) * b
    k = b.numerator * a.denominator
    if b + c != k * a:
        raise ArithmeticError("quasi-atomic identity failed")
    return {"kind": "quasi-atomic", "b": _s(b), "a": _s(a), "c": _s(c), "k": k}


def quasi_furstenberg_witness(F, b) -> dict:
    """Shrink the quasi-atomic c by the atom until the atom stops dividing it."""
    b = as_rat(b)
    a = F.atom(1)
    w = quasi_atomic_witness(F, b, a)
    c, k = as_rat(w["c"]), w["k"]
    steps = 0
    # c stays a member throughout, so a | c is just c - a in F
    while c >= a and member(F, c - a):
        c -= a
        k -= 1
        steps += 1
    return {"kind": "quasi-furstenberg", "b": _s(b), "a": _s(a), "c": _s(c),
            "k": k, "iterations": steps}


# --------------------------------------------------------------------------
# Furstenberg
# --------------------------------------------------------------------------

def non_furstenberg_closed_form(F, b: Fraction) -> bool | None:
    """Exact test 'b is not divisible by any atom' for families where it is
    known in closed form; None when no such description is available."""
    tag = getattr(F, "tag", "")
    if b <= 0:
        return None
    if tag == "af-not-f":
        return is_dyadic(b) and b <= 1
    if tag == "af-not-nf":
        return is_dyadic(b) and b < Fraction(1, 2)
    if tag == "na-not-f":
        return is_dyadic(b) and b < 1
    if tag == "pow-denom":
        return F.base.contains(b) and b < 1
    if tag == "nf-not-af":
        return not divides(F, F.atom(1), b)
    if tag in ("grams", "f-not-aa"):
        return False
    return None


def furstenberg_witness(F, b, depth: int = 50) -> PropertyStatus:
    b = as_rat(b)
    if b == 0:
        raise ValueError("0 is invertible; divisibility by atoms is not asked of it")
    _require_member(F, b)
    spec = monoid_spec(F)
    for j in dividing_atoms(F, b, depth):
        a = F.atom(j)
        return PropertyStatus("Furstenberg", PROVEN, {
            "kind": "atom-divisor", "b": _s(b), "a": _s(a), "index": j}, depth=depth, monoid=spec)
    closed = non_furstenberg_closed_form(F, b)
    if closed:
        return PropertyStatus("Furstenberg", REFUTED, {
            "kind": "no-atom-divisor", "b": _s(b), "checked_upto": depth},
            depth=depth, monoid=spec)
    return PropertyStatus("Furstenberg", UNKNOWN, {"b": _s(b)}, depth=depth, monoid=spec)


# --------------------------------------------------------------------------
# Almost Furstenberg
# --------------------------------------------------------------------------

def _single_atom_refutation(F, b: Fraction, prop: str) -> PropertyStatus:
    a = F.atom(1)
    return PropertyStatus(prop, REFUTED, {
        "kind": "single-atom", "b": _s(b), "a": _s(a)}, monoid=monoid_spec(F))


def almost_furstenberg_witness(F, b, *, construction: bool = False,
                               depth: int = 50) -> PropertyStatus:
    """An atomic c and an atom a with a | b + c and a not dividing c.

    With ``construction=True`` the family-specific construction is used even
    when b is already divisible by an atom.
    """
    b = as_rat(b)
    _require_member(F, b)
    spec = monoid_spec(F)
    tag = getattr(F, "tag", "")

    def found(c, factorization, j):
        a = F.atom(j)
        return PropertyStatus("almost-F", PROVEN, {
            "kind": "almost-furstenberg", "b": _s(b), "c": _s(c),
            "c_atoms": [[_s(x), m] for x, m in factorization],
            "a": _s(a), "index": j}, depth=depth, monoid=spec)

    if not construction:
        fw = furstenberg_witness(F, b, depth)
        if fw.verdict == PROVEN:
            return found(Fraction(0), [], fw.witness["index"])
    if F.finite_atoms == 1:
        if divides(F, F.atom(1), b):
            return found(Fraction(0), [], 1)
        return _single_atom_refutation(F, b, "almost-F")
    if tag == "af-not-f" and is_dyadic(b):
        c = Fraction(2)
        # r_1 = 2, so c is p_1 copies of the first atom
        j = dyadic_index(b + c)
        return found(c, [(F.atom(1), F.private_prime(1))], j)
    if tag == "af-not-nf" and is_dyadic(b):
        n = max(1, -padic_valuation(b, 2))
        c = 1 - Fraction(1, 2**n)
        return found(c, [(F.atom(n), F.private_prime(n))], n + 1)
    if tag == "na-not-f" and is_dyadic(b) and (b + 1).denominator != 1:
        f = _na_not_f_factor(F, b + 1)
        return found(Fraction(1), [(F.atom(1), 3)], f[0][2])
    fw = furstenberg_witness(F, b, depth)
    if fw.verdict == PROVEN:
        return found(Fraction(0), [], fw.witness["index"])
    return PropertyStatus("almost-F", UNKNOWN, {"b": _s(b)}, depth=depth, monoid=spec)


# --------------------------------------------------------------------------
# Nearly Furstenberg
# --------------------------------------------------------------------------

def nearly_furstenberg_verify(F, c, sample, depth: int = 50) -> PropertyStatus:
    c = as_rat(c)
    if not member(F, c):
        raise ValueError(f"{_s(c)} is not in {monoid_spec(F)}")
    spec = monoid_spec(F)
    pairs = []
    for b in sample:
        b = as_rat(b)
        hit = None
        for j in dividing_atoms(F, b + c, depth):
            if not divides(F, F.atom(j), c):
                hit = j
                break
        if hit is None:
            return PropertyStatus("nearly-F", REFUTED, {
                "kind": "nearly-counterexample", "c": _s(c), "b": _s(b),
                "checked_upto": depth}, depth=depth, monoid=spec)
        pairs.append([_s(b), hit])
    return PropertyStatus("nearly-F", PROVEN_ON_SAMPLE, {
        "kind": "nearly-furstenberg", "c": _s(c), "divisors": pairs},
        sample=[p[0] for p in pairs], depth=depth, monoid=spec)


def _normal_form(F: StructuredPresentation, c: Fraction) -> tuple[dict[int, int], Fraction]:
    """Atom coefficients below the private primes and the base part."""
    coeffs = {}
    d = c
    for p in prime_factors(c.denominator):
        if p in F.base.primes:
            continue
        n = F.index_of_prime(p)
        a = F.atom(n)
        e = mod_p(c * p, p) * pow(mod_p(a * p, p), -1, p) % p
        coeffs[n] = e
        d -= e * a
    return coeffs, d


def nearly_furstenberg_refute(F, c, depth: int = 50) -> dict:
    """For a given c, an element b such that every atom dividing b + c also
    divides c."""
    c = as_rat(c)
    _require_member(F, c)
    tag = getattr(F, "tag", "")
    if tag == "af-not-nf":
        coeffs, d_c = _normal_form(F, c)
        thr = lambda n: 1 - Fraction(1, 2**n)  # noqa: E731
        n0 = None
        if d_c < 1:
            n0 = 1
            while thr(n0) <= d_c:
                n0 += 1
        i = 1
        if n0 is not None:
            while d_c + Fraction(1, 2**i) >= thr(n0):
                i += 1
        b = Fraction(1, 2**i)
        checked = max([depth, n0 or 0] + list(coeffs))
        w = {"kind": "nearly-refutation", "c": _s(c), "b": _s(b), "i": i,
             "d_c": _s(d_c), "coefficients": [[n, e] for n, e in sorted(coeffs.items())],
             "threshold_index": n0, "checked_upto": checked}
    elif F.finite_atoms == 1:
        a = F.atom(1)
        if divides(F, a, c):
            b = a
        else:
            # c sits in the base below 1; a tiny base element keeps it there
            k = 1
            while not (F.base.contains(Fraction(1, F.base.p**k)) and c + Fraction(1, F.base.p**k) < 1):
                k += 1
            b = Fraction(1, F.base.p**k)
        checked = 1
        w = {"kind": "nearly-refutation-single-atom", "c": _s(c), "b": _s(b), "a": _s(a),
             "checked_upto": checked}
    else:
        raise ValueError(f"no nearly-Furstenberg refuter for {monoid_spec(F)}")
    for j in range(1, F.atom_count_at_least(checked) + 1):
        a = F.atom(j)
        if divides(F, a, b + c) and not divides(F, a, c):
            raise ArithmeticError(f"atom {j} divides b + c but not c")
    return w


# --------------------------------------------------------------------------
# Atomicity variants
# --------------------------------------------------------------------------

def almost_atomic_decide(F, b) -> PropertyStatus:
    """For the f-not-aa family: b + c is atomic for some atomic c exactly when
    v_2(b) >= 0 and v_p(b) >= -1 for every odd p."""
    if not isinstance(F, FNotAa):
        raise ValueError("almost_atomic_decide applies to family:f-not-aa")
    b = as_rat(b)
    _require_member(F, b)
    spec = monoid_spec(F)
    if b == 0:
        return PropertyStatus("almost-atomic", PROVEN, {
            "kind": "almost-atomic", "b": "0", "c": "0", "c_atoms": [], "sum_atoms": []},
            monoid=spec)
    if padic_valuation(b, 2) < 0:
        return PropertyStatus("almost-atomic", REFUTED, {
            "kind": "two-adic-obstruction", "b": _s(b),
            "v2": padic_valuation(b, 2)}, monoid=spec)
    for p in prime_factors(b.denominator):
        if padic_valuation(b, p) < -1:
            return PropertyStatus("almost-atomic", REFUTED, {
                "kind": "odd-valuation-obstruction", "b": _s(b), "prime": p,
                "valuation": padic_valuation(b, p)}, monoid=spec)
    c_terms = []
    c = Fraction(0)
    for p in prime_factors(b.denominator):
        e = mod_p(b * p, p)
        c_terms.append((Fraction(1, p), p - e))
        c += Fraction(p - e, p)
    total = b + c
    if total.denominator != 1:
        raise ArithmeticError("residue clearing left a denominator")
    if total < 1:
        c_terms.append((Fraction(1, 3), 3))
        c += 1
        total += 1
    res = F.atomic_part_member(total)
    if not res:
        raise ArithmeticError("b + c failed to factor into atoms")
    return PropertyStatus("almost-atomic", PROVEN, {
        "kind": "almost-atomic", "b": _s(b), "c": _s(c),
        "c_atoms": [[_s(x), m] for x, m in c_terms],
        "sum_atoms": res.certificate.to_json()}, monoid=spec)


def _na_not_f_factor(F, x: Fraction) -> list[tuple[Fraction, int, int]]:
    """Atom factorization (atom, multiplicity, index) of 1 + b for dyadic b."""
    if x.denominator == 1 and (x % 2 == 0 or x == 1):
        return [(F.atom(1), 3 * int(x), 1)]
    a, den = x.numerator, x.denominator
    if a <= den:
        raise ValueError(f"{_s(x)} is not of the form 1 + b with b >= 0")
    n = (a - 1) // 2
    p = nth_prime(n + 2)
    atom = Fraction(a, ell2(a) * p)
    mult = ell2(a) * p // den
    if atom != F.atom(n + 1) or mult * atom != x:
        raise ArithmeticError(f"factorization of {_s(x)} failed")
    return [(atom, mult, n + 1)]


def nearly_atomic_verify(F, sample) -> PropertyStatus:
    """With c = 1, each 1 + b is written as a multiple of one atom."""
    if not isinstance(F, NaNotF):
        raise ValueError("nearly_atomic_verify applies to family:na-not-f")
    rows = []
    for b in sample:
        b = as_rat(b)
        if b < 0 or not is_dyadic(b):
            raise ValueError(f"{_s(b)} is not a nonnegative dyadic rational")
        f = _na_not_f_factor(F, b + 1)
        rows.append([_s(b), [[_s(x), m] for x, m, _ in f]])
    return PropertyStatus("nearly-atomic", PROVEN_ON_SAMPLE, {
        "kind": "nearly-atomic", "c": "1", "c_atoms": [["1/3", 3]], "factorizations": rows},
        sample=[r[0] for r in rows], monoid=monoid_spec(F))


# --------------------------------------------------------------------------
# Non-isomorphism
# --------------------------------------------------------------------------

def nonisomorphism_witness(F1, F2, probe: int = 30) -> PropertyStatus:
    s1, v1 = invariant_descriptors(F1)
    s2, v2 = invariant_descriptors(F2)
    spec = f"{monoid_spec(F1)} vs {monoid_spec(F2)}"
    if s1.symmetric_difference_infinite(s2):
        return PropertyStatus("non-isomorphic", PROVEN, {
            "kind": "support-mismatch", "left": s1.describe(), "right": s2.describe()},
            monoid=spec)
    primes = sorted(set(s1.primes) | set(s2.primes) | {nth_prime(i) for i in range(1, probe + 1)})
    for p in primes:
        a, b = v1(p), v2(p)
        if (a is NEG_INFINITY) != (b is NEG_INFINITY):
            return PropertyStatus("non-isomorphic", PROVEN, {
                "kind": "valuation-mismatch", "prime": p,
                "left": "-inf" if a is NEG_INFINITY else a,
                "right": "-inf" if b is NEG_INFINITY else b}, monoid=spec)
    return PropertyStatus("non-isomorphic", UNKNOWN, {"kind": "inconclusive"}, monoid=spec)


# --------------------------------------------------------------------------
# Family audits
# --------------------------------------------------------------------------

def sample_members(F, count: int, seed: int = 0, depth: int = 8) -> list[Fraction]:
    """Nonzero members built as small combinations of truncation generators."""
    rng = random.Random(seed)
    gens = truncate(F, depth).generators
    out = set()
    tries = 0
    while len(out) < count and tries < 50 * count:
        tries += 1
        k = rng.randint(1, 3)
        x = sum((rng.choice(gens) * rng.randint(1, 3) for _ in range(k)), Fraction(0))
        out.add(x)
    return sorted(out)


def dyadic_grid(upto: Fraction, max_exp: int, strict: bool = False) -> list[Fraction]:
    out = set()
    for k in range(max_exp + 1):
        for x in range(1, int(upto * 2**k) + 1):
            q = Fraction(x, 2**k)
            if q < upto or (q == upto and not strict):
                out.add(q)
    return sorted(out)


# Expected status vectors; True = holds, False = fails, absent = not asserted.
CLASSIFICATION = {
    "pow-denom": {"antimatter": False, "atomic": False, "Furstenberg": False, "quasi-F": True,
                  "almost-F": False, "nearly-F": False, "quasi-atomic": True,
                  "almost-atomic": False, "nearly-atomic": False},
    "af-not-f": {"antimatter": False, "atomic": False, "Furstenberg": False, "quasi-F": True,
                 "almost-F": True, "nearly-F": True, "quasi-atomic": True},
    "nf-not-af": {"antimatter": False, "atomic": False, "Furstenberg": False, "quasi-F": True,
                  "almost-F": False, "nearly-F": True, "quasi-atomic": True,
                  "almost-atomic": False, "nearly-atomic": False},
    "af-not-nf": {"antimatter": False, "atomic": False, "Furstenberg": False, "quasi-F": True,
                  "almost-F": True, "nearly-F": False, "quasi-atomic": True},
    "f-not-aa": {"antimatter": False, "atomic": False, "Furstenberg": True, "quasi-F": True,
                 "almost-F": True, "nearly-F": True, "quasi-atomic": True,
                 "almost-atomic": False, "nearly-atomic": False},
    "na-not-f": {"antimatter": False, "atomic": False, "Furstenberg": False, "quasi-F": True,
                 "almost-F": True, "nearly-F": True, "quasi-atomic": True,
                 "almost-atomic": True, "nearly-atomic": True},
    "grams": {"antimatter": False, "atomic": True, "Furstenberg": True, "quasi-F": True,
              "almost-F": True, "nearly-F": True, "quasi-atomic": True,
              "almost-atomic": True, "nearly-atomic": True},
    "lexcone": {"antimatter": False, "atomic": False, "Furstenberg": True, "quasi-F": True,
                "almost-F": True, "nearly-F": True, "quasi-atomic": False,
                "almost-atomic": False, "nearly-atomic": False},
}

IMPLICATIONS = (
    ("Furstenberg", "nearly-F"),
    ("Furstenberg", "almost-F"),
    ("nearly-F", "quasi-F"),
    ("almost-F", "quasi-F"),
    ("atomic", "Furstenberg"),
    ("atomic", "nearly-atomic"),
    ("nearly-atomic", "almost-atomic"),
    ("almost-atomic", "quasi-atomic"),
)

NON_F_PROBE = {
    "pow-denom": Fraction(1, 3),
    "af-not-f": Fraction(1),
    "af-not-nf": Fraction(1, 4),
    "na-not-f": Fraction(1, 2),
    "nf-not-af": Fraction(1, 2),
}

NEARLY_C = {
    "af-not-f": Fraction(1),
    "na-not-f": Fraction(1),
    "nf-not-af": Fraction(1, 2),
    "grams": Fraction(0),
    "f-not-aa": Fraction(0),
}


def _status(F, prop, verdict, witness=None, sample=None, depth=None, evidence=()):
    return PropertyStatus(prop, verdict, witness, sample, depth, monoid_spec(F), list(evidence))


def _non_f_sample(F, depth: int) -> list[Fraction]:
    tag = F.tag
    max_exp = min(5, max(1, depth // 10))
    if tag == "af-not-f":
        return dyadic_grid(Fraction(1), max_exp)
    if tag == "af-not-nf":
        return dyadic_grid(Fraction(1, 2), max_exp + 1, strict=True)
    if tag == "na-not-f":
        return dyadic_grid(Fraction(1), max_exp, strict=True)
    if tag == "pow-denom":
        return [Fraction(m, 3**k) for k in range(1, 4) for m in range(1, 3**k) if m % 3]
    if tag == "nf-not-af":
        return [Fraction(1, 2**k) for k in range(1, max_exp + 2)]
    return []


def _audit_puiseux(F, depth: int, seed: int) -> dict[str, PropertyStatus]:
    tag = F.tag
    st: dict[str, PropertyStatus] = {}
    members = sample_members(F, 2 * depth, seed)
    a1 = F.atom(1)

    atom_check = is_atom_truncated(F, 1, max(1, min(depth, 10)))
    st["antimatter"] = _status(F, "antimatter", REFUTED if isinstance(atom_check, AtomUpToDepth)
                               else UNKNOWN, {"kind": "atom", "a": _s(a1), "index": 1,
                                             "depth": max(1, min(depth, 10))}, depth=depth)

    # Furstenberg
    probe = NON_F_PROBE.get(tag)
    if probe is not None:
        fw = furstenberg_witness(F, probe, depth)
        st["Furstenberg"] = _status(F, "Furstenberg", fw.verdict if fw.verdict == REFUTED
                                    else UNKNOWN, fw.witness, depth=depth)
    else:
        rows = [furstenberg_witness(F, b, depth) for b in members]
        ok = all(r.verdict == PROVEN for r in rows)
        verdict = PROVEN if ok and non_furstenberg_closed_form(F, members[0]) is False else (
            PROVEN_ON_SAMPLE if ok else UNKNOWN)
        st["Furstenberg"] = _status(F, "Furstenberg", verdict, {
            "kind": "atom-divisors", "divisors": [[r.witness["b"], r.witness["index"]] for r in rows]},
            sample=[_s(b) for b in members], depth=depth)

    # quasi-F and quasi-atomic: every element of a Puiseux monoid with an atom
    qa = [quasi_atomic_witness(F, b, a1) for b in members]
    st["quasi-atomic"] = _status(F, "quasi-atomic", PROVEN, {
        "kind": "quasi-atomic-family", "a": _s(a1), "witnesses": qa}, depth=depth)
    # the reduction loop is linear in k, so keep to members with a small one
    small = sorted(members, key=lambda b: b.numerator * a1.denominator)
    qf = [quasi_furstenberg_witness(F, b) for b in small[: max(10, depth // 2)]]
    st["quasi-F"] = _status(F, "quasi-F", PROVEN, {
        "kind": "quasi-furstenberg-family", "witnesses": qf}, depth=depth)

    # almost-F
    probes = _non_f_sample(F, depth) + members
    if F.finite_atoms == 1 and probe is not None:
        st["almost-F"] = _single_atom_refutation(F, probe, "almost-F")
        st["almost-F"].depth = depth
    else:
        rows = [almost_furstenberg_witness(F, b, depth=depth) for b in probes]
        bad = [r for r in rows if r.verdict != PROVEN]
        if any(r.verdict == REFUTED for r in bad):
            st["almost-F"] = next(r for r in bad if r.verdict == REFUTED)
        else:
            st["almost-F"] = _status(F, "almost-F", UNKNOWN if bad else PROVEN_ON_SAMPLE, {
                "kind": "almost-furstenberg-family", "witnesses": [r.witness for r in rows]},
                sample=[_s(b) for b in probes], depth=depth)

    # nearly-F
    if tag in NEARLY_C:
        c = NEARLY_C[tag]
        sample = probes
        if tag == "nf-not-af":
            sample = sorted(set(F.truncation_generators(min(depth, 20))) | set(probes))
        st["nearly-F"] = nearly_furstenberg_verify(F, c, sample, depth)
    else:
        cs = [Fraction(0)] + members[: max(10, depth // 2)]
        refs = [nearly_furstenberg_refute(F, c, depth) for c in cs]
        st["nearly-F"] = _status(F, "nearly-F", REFUTED, {
            "kind": "nearly-refutation-family", "refutations": refs}, depth=depth,
            evidence=["closed form: the refuter applies to every c"])

    # atomic / almost-atomic / nearly-atomic
    if tag == "grams":
        facts = []
        for b in members:
            cert = member(F, b).certificate
            facts.append([_s(b), _grams_atoms(F, cert.terms)])
        st["atomic"] = _status(F, "atomic", PROVEN, {
            "kind": "atomic-factorizations", "factorizations": facts},
            sample=[_s(b) for b in members], depth=depth,
            evidence=["closed form: every base generator 1/2^n is p_n copies of atom n"])
        for prop in ("almost-atomic", "nearly-atomic"):
            st[prop] = _status(F, prop, PROVEN, {"kind": "implied", "by": "atomic"}, depth=depth)
    elif tag == "f-not-aa":
        aa = almost_atomic_decide(F, Fraction(3, 2))
        aa.depth = depth
        st["almost-atomic"] = aa
        st["nearly-atomic"] = _status(F, "nearly-atomic", REFUTED, aa.witness, depth=depth,
                                      evidence=["nearly atomic implies almost atomic"])
        st["atomic"] = _status(F, "atomic", REFUTED, aa.witness, depth=depth,
                               evidence=["atomic implies almost atomic"])
    elif tag == "na-not-f":
        grid = dyadic_grid(Fraction(4), min(6, max(2, depth // 8)))
        na = nearly_atomic_verify(F, grid)
        na.depth = depth
        st["nearly-atomic"] = na
        st["almost-atomic"] = _status(F, "almost-atomic", PROVEN_ON_SAMPLE, na.witness,
                                      sample=na.sample, depth=depth,
                                      evidence=["c = 1 is atomic (three copies of 1/3)"])
        st["atomic"] = _status(F, "atomic", REFUTED, st["Furstenberg"].witness, depth=depth,
                               evidence=["atomic implies Furstenberg"])
    else:
        if probe is not None:
            st["atomic"] = _status(F, "atomic", REFUTED, st["Furstenberg"].witness, depth=depth,
                                   evidence=["atomic implies Furstenberg"])
        if F.finite_atoms == 1:
            w = {"kind": "single-atom-multiple", "b": _s(probe), "a": _s(a1)}
            st["almost-atomic"] = _status(F, "almost-atomic", REFUTED, w, depth=depth)
            st["nearly-atomic"] = _status(F, "nearly-atomic", REFUTED, w, depth=depth)
    for prop in PROPERTIES:
        st.setdefault(prop, _status(F, prop, UNKNOWN, depth=depth))
    return st


def _grams_atoms(F, terms) -> list:
    out = {}
    for g, m in terms:
        j = atom_index(F, g, limit=0)
        if j is None:
            # base generator 1/2^k = p_k * a_k
            k = g.denominator.bit_length() - 1
            if k == 0:
                # 1 = 2 * 1/2 = 2 * p_1 * a_1
                k, m = 1, 2 * m
            j = k
            m = m * F.private_prime(k)
        a = F.atom(j)
        out[a] = out.get(a, 0) + m
    return [[_s(a), m] for a, m in sorted(out.items())]


def _audit_lexcone(F: LexCone, depth: int) -> dict[str, PropertyStatus]:
    r = min(depth, 100)
    grid = [(x, y) for x in range(-r, r + 1) for y in range(0, r + 1) if F.member((x, y))]
    ok = all(F.divides(F.ATOM, v) for v in grid if v != (0, 0))
    st = {}
    st["antimatter"] = _status(F, "antimatter", REFUTED if F.is_atom_on_grid(F.ATOM) else UNKNOWN,
                               {"kind": "atom", "a": [1, 0], "radius": 10}, depth=depth)
    st["Furstenberg"] = _status(F, "Furstenberg", PROVEN_ON_SAMPLE if ok else REFUTED, {
        "kind": "lexcone-divisor", "a": [1, 0], "radius": r}, depth=depth)
    for prop in ("quasi-F", "almost-F", "nearly-F"):
        st[prop] = _status(F, prop, st["Furstenberg"].verdict, {
            "kind": "implied", "by": "Furstenberg", "c": [0, 0]}, depth=depth)
    # atomic elements are exactly N0*(1,0); (0,1) + c always has y >= 1
    blocked = all(not (v[1] + 1 == 0) for v in grid)
    w = {"kind": "lexcone-not-quasi-atomic", "b": [0, 1], "radius": r}
    for prop in ("atomic", "quasi-atomic", "almost-atomic", "nearly-atomic"):
        st[prop] = _status(F, prop, REFUTED if blocked else UNKNOWN, w, depth=depth)
    return st


def audit_statuses(F, depth: int = 50, seed: int = 0) -> dict[str, PropertyStatus]:
    if isinstance(F, LexCone):
        return _audit_lexcone(F, depth)
    return _audit_puiseux(F, depth, seed)


def diagram_audit(F, depth: int = 50, seed: int = 0) -> dict:
    st = audit_statuses(F, depth, seed)
    violations = []
    for up, down in IMPLICATIONS:
        if st[up].positive and st[down].verdict == REFUTED:
            violations.append({"implication": f"{up} => {down}",
                               "upstream": st[up].to_json(), "downstream": st[down].to_json()})
    mismatches = []
    for prop, expected in CLASSIFICATION.get(F.tag, {}).items():
        v = st[prop].verdict
        got = True if v in POSITIVE else False if v == REFUTED else None
        if got is not expected:
            mismatches.append({"property": prop, "expected": expected, "verdict": v})
    return {
        "monoid": monoid_spec(F),
        "depth": depth,
        "statuses": {p: st[p].to_json() for p in PROPERTIES},
        "violations": violations,
        "mismatches": mismatches,
        "ok": not violations and not mismatches,
    }
