"""Command-line front end.

Exit codes are shared by every subcommand: 0 affirmative, 1 negative or
refuted, 2 unknown or error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .claims import SuiteConfig, run_suite
from .crosscheck import crosscheck
from .families import (
    LexCone,
    divides,
    is_atom_truncated,
    AtomUpToDepth,
    member,
    monoid_spec,
    parse_monoid,
)
from .fgmonoid import FgPresentation, Member, Unknown, atoms_fg, divides_fg, member_fg, truncate
from .props import diagram_audit
from .ratcore import fmt_rat, parse_rat

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2

CONFIG_KEYS = {"depth": int, "seed": int, "a_max": int, "two_max": int, "workers": int,
               "crosscheck_depths": lambda v: tuple(int(x) for x in v.split(","))}


class CliError(Exception):
    pass


def read_config(path: str | None) -> dict:
    """Parse a ``key = value`` file (``#`` comments, optional quotes)."""
    if not path:
        return {}
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line or line.startswith("["):
            continue
        if "=" not in line:
            raise CliError(f"{path}:{lineno}: expected key = value")
        key, value = (t.strip() for t in line.split("=", 1))
        value = value.strip("\"'")
        if key not in CONFIG_KEYS:
            raise CliError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            out[key] = CONFIG_KEYS[key](value)
        except ValueError:
            raise CliError(f"{path}:{lineno}: bad value for {key}: {value!r}") from None
    return out


def _settings(args) -> dict:
    cfg = read_config(getattr(args, "config", None))
    for key in ("depth", "seed"):
        v = getattr(args, key, None)
        if v is not None:
            cfg[key] = v
    return cfg


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _result_code(res) -> int:
    if isinstance(res, Member):
        return EXIT_YES
    if isinstance(res, Unknown):
        return EXIT_ERROR
    return EXIT_NO


def _describe(res) -> str:
    if isinstance(res, Member):
        terms = " + ".join(f"{c}*{fmt_rat(g)}" for g, c in res.certificate.terms) or "0"
        return f"Member: {fmt_rat(res.certificate.value)} = {terms}"
    if isinstance(res, Unknown):
        return f"Unknown: {res.reason} (bound {res.bound})"
    return f"NonMember ({res.reason})"


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def cmd_member(args) -> int:
    M = parse_monoid(args.spec)
    q = parse_rat(args.q)
    cfg = _settings(args)
    if args.truncated:
        if isinstance(M, (FgPresentation, LexCone)):
            raise CliError("--truncated needs a family spec")
        res = member_fg(truncate(M, cfg.get("depth", 12)), q)
    else:
        res = member(M, q)
    payload = {"monoid": monoid_spec(M), "q": fmt_rat(q), **res.to_json()}
    _emit(args, payload, _describe(res))
    return _result_code(res)


def cmd_divides(args) -> int:
    M = parse_monoid(args.spec)
    if isinstance(M, LexCone):
        a = tuple(int(t) for t in args.a.split(","))
        b = tuple(int(t) for t in args.b.split(","))
        yes = M.divides(a, b)
        _emit(args, {"monoid": M.spec(), "a": list(a), "b": list(b), "divides": yes},
              f"{'divides' if yes else 'does not divide'}")
        return EXIT_YES if yes else EXIT_NO
    a, b = parse_rat(args.a), parse_rat(args.b)
    res = divides_fg(M, a, b) if isinstance(M, FgPresentation) else divides(M, a, b)
    payload = {"monoid": monoid_spec(M), "a": fmt_rat(a), "b": fmt_rat(b), **res.to_json()}
    _emit(args, payload, _describe(res).replace("Member", "Divides", 1)
          if isinstance(res, Member) else _describe(res))
    return _result_code(res)


def cmd_atoms(args) -> int:
    M = parse_monoid(args.spec)
    if isinstance(M, FgPresentation):
        atoms = atoms_fg(M)
        _emit(args, {"monoid": str(M), "atoms": [fmt_rat(a) for a in atoms], "complete": True},
              ", ".join(fmt_rat(a) for a in atoms))
        return EXIT_YES
    if isinstance(M, LexCone):
        _emit(args, {"monoid": M.spec(), "atoms": [[1, 0]], "complete": True}, "(1, 0)")
        return EXIT_YES
    n = _settings(args).get("depth", 10)
    rows = []
    for i in range(1, M.atom_count_at_least(n) + 1):
        checked = isinstance(is_atom_truncated(M, i, max(n, i)), AtomUpToDepth)
        rows.append({"index": i, "atom": fmt_rat(M.atom(i)), "atom_up_to_depth": checked})
    text = "\n".join(f"{r['index']}: {r['atom']}" + ("" if r["atom_up_to_depth"] else "  (decomposes!)")
                     for r in rows)
    _emit(args, {"monoid": M.spec(), "atoms": rows, "complete": M.finite_atoms is not None}, text)
    return EXIT_YES if all(r["atom_up_to_depth"] for r in rows) else EXIT_NO


def cmd_props(args) -> int:
    M = parse_monoid(args.spec)
    if isinstance(M, FgPresentation):
        raise CliError("props works on family specs")
    cfg = _settings(args)
    r = diagram_audit(M, cfg.get("depth", 50), cfg.get("seed", 0))
    lines = [f"{p:14s} {s['verdict']}" for p, s in r["statuses"].items()]
    for v in r["violations"]:
        lines.append(f"VIOLATION {v['implication']}")
    for m in r["mismatches"]:
        lines.append(f"MISMATCH {m['property']}: expected {m['expected']}, got {m['verdict']}")
    _emit(args, r, "\n".join(lines))
    return EXIT_YES if r["ok"] else EXIT_NO


def _markdown(doc: dict) -> str:
    out = ["# Claim report", "",
           f"Config: `{json.dumps(doc['config'], sort_keys=True)}`", "",
           "| claim | status | statement |", "|---|---|---|"]
    for rec in doc["claims"]:
        out.append(f"| {rec['id']} | {rec['status'].upper()} | {rec['anchor']} |")
    s = doc["summary"]
    out += ["", f"{s['passed']} of {s['total']} claims pass."]
    for rec in doc["claims"]:
        if rec["status"] != "pass":
            out += ["", f"## {rec['id']} failed", "", "```",
                    json.dumps(rec["evidence"], indent=2)[:4000], "```"]
    return "\n".join(out) + "\n"


def build_report(cfg: SuiteConfig, only=None) -> dict:
    t0 = time.perf_counter()
    records = run_suite(cfg, only)
    failed = [r.id for r in records if not r.passed]
    return {
        # header is the only part allowed to differ between identical runs
        "header": {"tool": "puiseux", "version": __version__,
                   "generated": datetime.now(timezone.utc).isoformat(timespec="seconds"),
                   "seconds": round(time.perf_counter() - t0, 2),
                   "claim_seconds": {r.id: round(r.seconds, 2) for r in records}},
        "config": cfg.to_json(),
        "claims": [r.to_json() for r in records],
        "summary": {"total": len(records), "passed": len(records) - len(failed),
                    "failed": failed},
    }


def cmd_report(args) -> int:
    cfg = SuiteConfig(**_settings(args) | _grid_settings(args))
    doc = build_report(cfg, set(args.only.split(",")) if args.only else None)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    json_path = out.with_suffix(".json")
    md_path = out.with_suffix(".md")
    json_path.write_text(json.dumps(doc, indent=2) + "\n")
    md_path.write_text(_markdown(doc))
    s = doc["summary"]
    text = f"{s['passed']}/{s['total']} claims pass; wrote {json_path} and {md_path}"
    if s["failed"]:
        text += "\nfailed: " + ", ".join(s["failed"])
    _emit(args, {"summary": s, "json": str(json_path), "markdown": str(md_path)}, text)
    return EXIT_YES if not s["failed"] else EXIT_NO


def _grid_settings(args) -> dict:
    cfg = read_config(getattr(args, "config", None))
    out = {k: cfg[k] for k in ("a_max", "two_max", "crosscheck_depths", "workers") if k in cfg}
    if getattr(args, "workers", None):
        out["workers"] = args.workers
    return out


def cmd_crosscheck(args) -> int:
    M = parse_monoid(args.spec)
    if isinstance(M, LexCone):
        raise CliError("crosscheck needs a Puiseux family; lexcone membership is closed form")
    if isinstance(M, FgPresentation):
        raise CliError("crosscheck compares a family oracle with its truncations; got fg:")
    cfg = read_config(args.config)
    a_max, two_max = cfg.get("a_max", 64), cfg.get("two_max", 6)
    if args.grid:
        try:
            a_max, two_max = (int(t) for t in args.grid.split(","))
        except ValueError:
            raise CliError("--grid expects a_max,two_max") from None
    depths = cfg.get("crosscheck_depths", (4, 8, 12))
    if args.depth is not None:
        depths = tuple(range(4, args.depth + 1, 4)) or (args.depth,)
    rep = crosscheck(M, depths, a_max, two_max, workers=args.workers or cfg.get("workers", 1))
    j = rep.to_json()
    text = (f"{j['checked']} rationals, {j['members']} members, "
            f"{j['brute_force_runs']} truncated searches, "
            f"{len(j['disagreements'])} disagreements, {len(j['unknown'])} undecided")
    if not rep.ok:
        text += f"\nminimal counterexample: {json.dumps(j['minimal_counterexample'])}"
    _emit(args, j, text)
    return EXIT_YES if rep.ok else EXIT_NO


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--depth", type=int, help="truncation depth / sample scale")
    common.add_argument("--config", help="key = value file with depths, grids and seeds")
    common.add_argument("--seed", type=int, help="seed for sampled checks")

    p = argparse.ArgumentParser(prog="puiseux", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"puiseux {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("member", parents=[common], help="decide q in M")
    s.add_argument("spec")
    s.add_argument("q")
    s.add_argument("--truncated", action="store_true",
                   help="search the depth-N truncation instead of using the oracle")
    s.set_defaults(func=cmd_member)

    s = sub.add_parser("divides", parents=[common], help="decide a | b in M")
    s.add_argument("spec")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_divides)

    s = sub.add_parser("atoms", parents=[common], help="list (claimed) atoms")
    s.add_argument("spec")
    s.set_defaults(func=cmd_atoms)

    s = sub.add_parser("props", parents=[common], help="property statuses of a family")
    s.add_argument("spec")
    s.set_defaults(func=cmd_props)

    s = sub.add_parser("report", parents=[common], help="run the claim suite")
    s.add_argument("--out", default="puiseux-report", help="output path stem (.json/.md)")
    s.add_argument("--only", help="comma-separated claim ids")
    s.add_argument("--workers", type=int)
    s.set_defaults(func=cmd_report)

    s = sub.add_parser("crosscheck", parents=[common], help="oracle vs truncation search")
    s.add_argument("spec")
    s.add_argument("--grid", help="a_max,two_max")
    s.add_argument("--workers", type=int)
    s.set_defaults(func=cmd_crosscheck)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_YES
    try:
        return args.func(args)
    except (CliError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
