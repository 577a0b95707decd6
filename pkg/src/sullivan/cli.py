"""Command line interface: ``sullivan <command> ...``.

Exit status: 0 success, 1 verification mismatch, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
import time
from pathlib import Path

from . import __version__
from .bases import BasisTooLarge, basis_cap, enumerate_basis, hilbert_count
from .cohomology import cohomology, to_element
from .differential import check_d_squared, check_minimal_1connected, spot_check_d_squared
from .dsl import ParseError, emit_dsl, parse_dsl
from .family import FamilyError, build_family
from .graded import AlgebraError
from .reports import (group_report, jsonable, obstruction_report, selfequiv_payload, verify_family,
                      well_formed_report)
from .selfequiv import LatticeNotTrivial, SolverError, brute_force_diagonal_oracle, compute_selfequiv_group

LEMMA_CHOICES = {
    # accepted spellings -> internal check
    "2.2": "low", "no-low-cocycles": "low",
    "2.3": "z", "z-degree": "z",
    "2.4": "w", "w-degree": "w",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--max-basis", type=int, default=None, metavar="K",
                   help="refuse degree bases larger than K monomials")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for the oracle enumeration")
    p.add_argument("--stretch", action="store_true", help="allow n = 3 (slow)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sullivan", description="Minimal Sullivan algebras: cohomology, obstructions and "
                                                  "self-equivalence groups.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="check d^2 = 0 and minimality of a DSL file")
    p.add_argument("file")
    p.add_argument("--samples", type=int, default=100, help="random decomposables for the d^2 spot check")
    _common(p)

    for name, helptext in (("basis", "monomial basis of a filtered piece"),
                           ("cohomology", "cohomology of a filtered piece")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("file")
        p.add_argument("--degree", type=int, required=True)
        p.add_argument("--cap", type=int, default=None, help="generator degree cap (default: no cap)")
        _common(p)

    p = sub.add_parser("family", help="build the test family for a given n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--emit", action="store_true", help="print the DSL text")
    _common(p)

    p = sub.add_parser("verify", help="run the family cohomology checks")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lemma", choices=sorted(LEMMA_CHOICES) + ["all"], default="all")
    _common(p)

    p = sub.add_parser("obstruction", help="obstruction classes of the family generators")
    p.add_argument("--n", type=int, required=True)
    _common(p)

    p = sub.add_parser("selfequiv", help="staged computation of the self-equivalence group")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--n", type=int)
    src.add_argument("file", nargs="?")
    p.add_argument("--no-oracle", action="store_true", help="skip the brute-force cross-check")
    _common(p)

    p = sub.add_parser("oracle", help="brute-force ±1 diagonal self-maps of the family")
    p.add_argument("--n", type=int, required=True)
    _common(p)
    return parser


def _family(args):
    if args.n == 3 and not args.stretch:
        raise UsageError("n = 3 is slow; pass --stretch to run it")
    return build_family(args.n)


def _load(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(str(exc))
    return parse_dsl(text)


# -- commands: each returns (input, result, discrepancies, ok, text) -----------


def cmd_check(args):
    A = _load(args.file)
    d2 = check_d_squared(A)
    mini = check_minimal_1connected(A)
    spot = spot_check_d_squared(A, samples=args.samples, seed=args.seed)
    result = {"algebra": A.name, "generators": len(A.generators),
              "d_squared": {"ok": d2.ok, "failures": [[g, str(r)] for g, r in d2.failures]},
              "minimality": {"ok": mini.ok, "failures": [[g, str(r)] for g, r in mini.failures]},
              "spot_check": {"samples": args.samples, "seed": args.seed, "failures": [str(e) for e in spot]}}
    ok = d2.ok and mini.ok and not spot
    text = [f"{A.name}: {len(A.generators)} generators",
            f"d^2 = 0: {'ok' if d2.ok else 'FAIL'}", f"minimal, 1-connected: {'ok' if mini.ok else 'FAIL'}",
            f"random d^2 spot check ({args.samples} samples, seed {args.seed}): {'ok' if not spot else 'FAIL'}"]
    return {"file": args.file}, result, [], ok, "\n".join(text)


def _cap(args, A):
    return args.cap if args.cap is not None else max(A.free.degrees, default=0)


def cmd_basis(args):
    A = _load(args.file)
    m = _cap(args, A)
    B = enumerate_basis(A, args.degree, m)
    monos = [A.free.format_monomial(x) for x in B.monomials]
    count = hilbert_count(A, args.degree, m)
    result = {"degree": args.degree, "cap": m, "size": len(B), "hilbert_count": count, "monomials": monos}
    text = f"degree {args.degree}, cap {m}: {len(B)} monomials\n" + "\n".join(monos)
    return {"file": args.file}, result, [], len(B) == count, text


def cmd_cohomology(args):
    A = _load(args.file)
    m = _cap(args, A)
    H = cohomology(A, args.degree, m)
    reps = [str(to_element(A, H.basis, r)) for r in H.representatives]
    result = {"degree": args.degree, "cap": m, "basis_size": len(H.basis), "cocycle_dim": H.cocycle_dim,
              "coboundary_dim": H.coboundary_dim, "dim": H.dim, "representatives": reps}
    text = (f"H^{args.degree} (cap {m}): dim {H.dim} (cocycles {H.cocycle_dim}, coboundaries "
            f"{H.coboundary_dim}, chains {len(H.basis)})\n" + "\n".join(reps))
    return {"file": args.file}, result, [], True, text


def cmd_family(args):
    fam = _family(args)
    result = well_formed_report(fam)
    result["dsl"] = emit_dsl(fam.algebra)
    ok = not result["d_squared_failures"] and not result["minimality_failures"]
    if args.emit:
        text = result["dsl"].rstrip("\n")
    else:
        text = "\n".join([f"n = {fam.n}"] + [f"{g} : {d}   d {g} = {result['differentials'][g]}"
                                            for g, d in fam.degrees.items()]
                         + [f"d^2 = 0: {'ok' if not result['d_squared_failures'] else 'FAIL'}",
                            f"minimal: {'ok' if not result['minimality_failures'] else 'FAIL'}"])
    return {"n": args.n, "emit": args.emit}, result, [], ok, text


def cmd_verify(args):
    fam = _family(args)
    which = ("low", "z", "w") if args.lemma == "all" else (LEMMA_CHOICES[args.lemma],)
    result, disc = verify_family(fam, which)
    ok = all(v.get("ok", True) for v in result.values() if isinstance(v, dict))
    lines = [f"n = {fam.n}"]
    if "no_low_cocycles" in result:
        for c in result["no_low_cocycles"]["checks"]:
            lines.append(f"no low cocycles, degree {c['degree']} (cap {c['cap']}): cocycle dim {c['cocycle_dim']} "
                         f"[{'ok' if c['ok'] else 'FAIL'}]")
    for key in ("z_degree", "w_degree"):
        if key in result:
            r = result[key]
            lines.append(f"cocycles bound, degree {r['degree']} (cap {r['cap']}): dim H {r['h_dim']}, "
                         f"{r['preimages_rechecked']} of {r['cocycle_dim']} cocycle basis vectors bound "
                         f"[{'ok' if r['ok'] else 'FAIL'}]")
    return {"n": args.n, "lemma": args.lemma}, result, disc, ok, "\n".join(lines)


def cmd_obstruction(args):
    fam = _family(args)
    result, disc = obstruction_report(fam)
    ok = all(result[g]["equals_class_of_differential"] for g in ("y1", "y2", "y3", "w", "z"))
    lines = [f"b({g}) = [{result[g]['differential']}] in H^{result[g]['degree'] + 1} (dim {result[g]['h_dim']})"
             for g in ("y1", "y2", "y3", "w", "z")]
    return {"n": args.n}, result, disc, ok, "\n".join(lines)


def _selfequiv_text(result) -> str:
    lines = []
    for s in result["stages"]:
        head = f"[{s['generator']} : {s['degree']}]"
        if s["kind"] == "base":
            lines.append(f"{head} alpha({s['generator']}) = {s['lift']}")
            continue
        u = s["uniqueness"]
        lines.append(f"{head} uniqueness: {u['mode']} (cocycles {u['cocycle_dim']}, dim H {u['h_dim']})")
        for e in s["equations"]:
            lines.append(f"    {e}")
        if s["killed"]:
            lines.append(f"    killed: {', '.join(s['killed'])}")
        lines.append(f"    alpha({s['generator']}) = {s['lift']}")
    lines.append(f"order: {result['order']} (free rank {result['free_rank']}, torsion {result['torsion_order']})")
    if result.get("elementary_abelian_rank") is not None:
        lines.append(f"elementary abelian of rank {result['elementary_abelian_rank']}")
    for sol in result["solutions"]:
        lines.append("  " + " ".join(f"{g}:{'+' if v > 0 else '-'}" for g, v in sol.items()))
    if "comparison" in result:
        c = result["comparison"]
        lines.append(f"published: {c['claimed_classes_total']} classes; computed: {c['computed_order']}")
    if "oracle" in result:
        o = result["oracle"]
        lines.append(f"oracle: {o.get('count', o.get('error'))} solutions"
                     + (f", equal to staged: {o['equal_to_staged']}" if "equal_to_staged" in o else ""))
    return "\n".join(lines)


def cmd_selfequiv(args):
    if args.n is not None:
        fam = _family(args)
        result, disc = group_report(fam, jobs=args.jobs, with_oracle=not args.no_oracle)
        inp = {"n": args.n}
    else:
        A = _load(args.file)
        rep = compute_selfequiv_group(A, strict=False)
        result = selfequiv_payload(rep)
        disc = []
        if not args.no_oracle:
            try:
                oracle = brute_force_diagonal_oracle(A, jobs=args.jobs)
                result["oracle"] = {"solutions": oracle, "count": len(oracle)}
            except LatticeNotTrivial as exc:
                result["oracle"] = {"error": str(exc)}
        inp = {"file": args.file}
    ok = not any(d.severity == "mismatch" for d in disc)
    return inp, result, disc, ok, _selfequiv_text(result)


def cmd_oracle(args):
    fam = _family(args)
    sols = brute_force_diagonal_oracle(fam, jobs=args.jobs)
    result = {"n": fam.n, "count": len(sols), "solutions": sols}
    text = f"{len(sols)} diagonal ±1 self-maps\n" + "\n".join(
        "  " + " ".join(f"{g}:{'+' if v > 0 else '-'}" for g, v in s.items()) for s in sols)
    return {"n": args.n}, result, [], True, text


COMMANDS = {"check": cmd_check, "basis": cmd_basis, "cohomology": cmd_cohomology, "family": cmd_family,
            "verify": cmd_verify, "obstruction": cmd_obstruction, "selfequiv": cmd_selfequiv,
            "oracle": cmd_oracle}


def _emit(args, payload: dict, text: str, disc: list, out):
    if getattr(args, "format", "text") == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=False) + "\n")
        return
    out.write(text + "\n")
    if disc:
        out.write("discrepancies:\n")
        for d in disc:
            out.write(f"  [{d.severity}] {d.code}: {d.message}\n")


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        with basis_cap(args.max_basis) if args.max_basis else contextlib.nullcontext():
            inp, result, disc, ok, text = COMMANDS[args.command](args)
    except ParseError as exc:
        detail = exc.message + (f" (expected {' or '.join(exc.expected)})" if exc.expected else "")
        print(f"{getattr(args, 'file', '<input>')}:{exc.line}:{exc.column}: {detail}", file=sys.stderr)
        return 2
    except (UsageError, FamilyError) as exc:
        print(f"sullivan: error: {exc}", file=sys.stderr)
        return 2
    except BasisTooLarge as exc:
        print(f"sullivan: resource limit: {exc}", file=sys.stderr)
        return 2
    except (SolverError, AlgebraError) as exc:
        print(f"sullivan: {exc}", file=sys.stderr)
        return 1
    elapsed = (time.perf_counter() - start) * 1000
    payload = {"command": args.command, "input": inp, "result": jsonable(result),
               "discrepancies": [d.to_json() for d in disc], "timing_ms": round(elapsed, 3),
               "version": __version__}
    _emit(args, payload, text, disc, out)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
