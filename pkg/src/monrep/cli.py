"""Command-line driver.

Exit codes: 0 when every certificate verified, 1 when a mathematical check
failed (the report names the failed identity and carries its matrices), 2 on
input or validation errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from .algebra import NotFiniteDimensional, Quiver, ValidationError
from .certificate import recheck
from .homcm import mon_cm_check
from .instances import TEST_QUIVERS
from .moninj import (
    NotMonic,
    indec_injectives_mon,
    injective_coresolution,
    injective_embedding,
    is_indecomposable,
    source_strip,
    strip_filtration,
)
from .quiverrep import adjunction_check, delta, is_monic
from .serialize import module_from_json, parse_field, rep_from_json, rep_to_json, resolve_algebra
from .stablecat import NotSelfInjective, cosyzygy_chain, end_iso_check, stable_hom, t1_check
from .suites import SUITES

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _load(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _rep(args, path):
    return rep_from_json(_load(path), parse_field(args.field))


def _module(args, path):
    data = _load(path)
    if "algebra" not in data and args.algebra:
        data["algebra"] = args.algebra
    return module_from_json(data, parse_field(args.field))


def _quiver(text: str) -> Quiver:
    if text in TEST_QUIVERS:
        return TEST_QUIVERS[text]
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = _load(text)
    return Quiver.from_json(data)


def _cert_block(cert, args) -> dict:
    out = cert.to_json(matrices=True)
    if args.recheck:
        ok, fails = recheck(out)
        out["recheck"] = {"ok": ok, "failures": fails}
    return out


def _status(*certs, extra_ok: bool = True) -> int:
    ok = all(c.verified for c in certs) and extra_ok
    return EXIT_OK if ok else EXIT_FAILED


# ---------------------------------------------------------------------------
# subcommands: each returns (exit code, report)
# ---------------------------------------------------------------------------


def cmd_check(args):
    x = _rep(args, args.input)
    report = is_monic(x)
    out = {"dim_vector": list(x.dim_vector), "monic": bool(report), "ranks": {str(i): list(r) for i, r in report.ranks.items()}}
    if not report:
        out["failures"] = [f"δ_{i} not injective" for i in report.failures]
        out["witness"] = {str(i): x.field.to_list(delta(x, i).mat) for i in report.failures}
        return EXIT_FAILED, out
    return EXIT_OK, out


def cmd_envelope(args):
    x = _rep(args, args.input)
    r = injective_embedding(x)
    out = {"certificate": _cert_block(r.certificate, args), "E": rep_to_json(r.E), "Z": rep_to_json(r.Z), "f": {str(i): x.field.to_list(m) for i, m in r.f.comps.items()}}
    return _status(r.certificate, extra_ok=_rechecked(out["certificate"])), out


def _rechecked(block: dict) -> bool:
    return block.get("recheck", {"ok": True})["ok"]


def cmd_coresolve(args):
    x = _rep(args, args.input)
    c = injective_coresolution(x, args.length)
    out = {"dims": [list(t.dim_vector) for t in c.terms], "certificate": _cert_block(c.certificate, args), "terms": [rep_to_json(t) for t in c.terms]}
    return _status(c.certificate, extra_ok=_rechecked(out["certificate"])), out


def cmd_strip(args):
    x = _rep(args, args.input)
    s = source_strip(x)
    stages, cert = strip_filtration(x)
    out = {
        "sources": s.sources,
        "Z": rep_to_json(s.Z),
        "strip_certificate": _cert_block(s.certificate, args),
        "stages": [{"quiver": st.quiver.to_json(), "labels": {str(k): v for k, v in st.labels.items()}, "Z_dims": list(st.strip.Z.dim_vector)} for st in stages],
        "filtration_certificate": _cert_block(cert, args),
    }
    ok = _rechecked(out["strip_certificate"]) and _rechecked(out["filtration_certificate"])
    return _status(s.certificate, cert, extra_ok=ok), out


def cmd_injectives(args):
    q = _quiver(args.quiver)
    a = resolve_algebra(args.algebra, parse_field(args.field))
    objs = indec_injectives_mon(q, a)
    out = {
        "count": len(objs),
        "objects": [
            {"dim_vector": list(o.dim_vector), "indecomposable": is_indecomposable(o, args.bound), "Z_dims": list(injective_embedding(o).Z.dim_vector), "rep": rep_to_json(o)}
            for o in objs
        ],
    }
    return EXIT_OK, out


def cmd_stable_hom(args):
    x, y = _rep(args, args.input), _rep(args, args.second)
    s = stable_hom(x, y)
    return EXIT_OK, {"ambient_dim": len(s.ambient), "factoring_dim": len(s.subspace), "stable_dim": s.dim}


def cmd_cosyzygy(args):
    x = _rep(args, args.input)
    steps = cosyzygy_chain(x, args.n)
    out = {"dims": [list(s.Z.dim_vector) for s in steps], "result": rep_to_json(steps[-1].Z) if steps else rep_to_json(x), "certificates": [_cert_block(s.certificate, args) for s in steps]}
    return _status(*(s.certificate for s in steps), extra_ok=all(_rechecked(c) for c in out["certificates"])), out


def cmd_t1(args):
    t = _module(args, args.input)
    rep = t1_check(t, _quiver(args.quiver), args.nmax)
    return (EXIT_OK if rep.implication_holds else EXIT_FAILED), rep.to_json()


def cmd_end_iso(args):
    t = _module(args, args.input)
    cert = end_iso_check(t, _quiver(args.quiver))
    out = _cert_block(cert, args)
    return _status(cert, extra_ok=_rechecked(out)), out


def cmd_cm_check(args):
    x = _rep(args, args.input)
    rep = mon_cm_check(x, args.bound)
    out = rep.to_json()
    return (EXIT_OK if rep.agree else EXIT_FAILED), out


def cmd_adjunction(args):
    m = _module(args, args.input)
    x = _rep(args, args.second)
    if m.algebra is not x.algebra:
        raise ValidationError("module and representation are over different algebras")
    cert = adjunction_check(m, x, args.vertex)
    out = _cert_block(cert, args)
    return _status(cert, extra_ok=_rechecked(out)), out


def cmd_suite(args):
    names = list(SUITES) if args.name == "all" else [args.name]
    results = []
    for name in names:
        results.append(SUITES[name](args.count, seed=args.seed).to_json())
    ok = all(r["ok"] for r in results)
    return (EXIT_OK if ok else EXIT_FAILED), {"seed": args.seed, "count": args.count, "suites": results}


def cmd_recheck(args):
    data = _load(args.input)
    if "certificate" in data and "kind" not in data:
        data = data["certificate"]
    try:
        ok, fails = recheck(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"not a serialized certificate: {exc}") from None
    return (EXIT_OK if ok else EXIT_FAILED), {"ok": ok, "failures": fails}


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="2", help="prime p or Q (default 2)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--recheck", action="store_true", help="re-verify emitted certificates independently")
    common.add_argument("--out", help="write the JSON report here instead of stdout")

    p = argparse.ArgumentParser(prog="monrep", description="Exact computations in monomorphism categories.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *inputs, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        for arg in inputs:
            sp.add_argument(arg)
        sp.set_defaults(func=fn)
        return sp

    add("check", cmd_check, "input", help="validate a representation and test monicity")
    add("envelope", cmd_envelope, "input", help="injective embedding X -> E with cokernel Z")
    add("coresolve", cmd_coresolve, "input", help="injective coresolution").add_argument("--length", type=int, default=2)
    add("strip", cmd_strip, "input", help="source strip and strip filtration")
    sp = add("injectives", cmd_injectives, help="indecomposable injective objects")
    sp.add_argument("--quiver", required=True, help="A2, 1<-3->2, 2->1<-3, or quiver JSON")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--bound", type=int, default=6, help="max dim End for the idempotent search")
    add("stable-hom", cmd_stable_hom, "input", "second", help="stable Hom(X, Y)")
    add("cosyzygy", cmd_cosyzygy, "input", help="iterated cosyzygy").add_argument("--n", type=int, default=1)
    for name, fn in (("t1", cmd_t1), ("end-iso", cmd_end_iso)):
        sp = add(name, fn, "input", help="tilting checks for m(t) from a module t")
        sp.add_argument("--quiver", default="A2")
        sp.add_argument("--algebra", help="algebra id when the module JSON omits one")
        if name == "t1":
            sp.add_argument("--nmax", type=int, default=3)
    add("cm-check", cmd_cm_check, "input", help="Cohen-Macaulay agreement report").add_argument("--bound", type=int, default=2)
    sp = add("adjunction", cmd_adjunction, "input", "second", help="Hom(m_i M, X) = Hom(M, X_i) certificate")
    sp.add_argument("--vertex", type=int, required=True)
    sp.add_argument("--algebra")
    sp = add("suite", cmd_suite, help="seeded randomized suites")
    sp.add_argument("name", nargs="?", default="all", choices=["all", *SUITES])
    sp.add_argument("--count", type=int, default=20)
    add("recheck", cmd_recheck, "input", help="re-verify a certificate JSON from its matrices")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        code, report = args.func(args)
    except (InputError, ValidationError, NotFiniteDimensional, NotMonic, NotSelfInjective, KeyError, ValueError) as exc:
        code, report = EXIT_INPUT, {"error": type(exc).__name__, "message": str(exc)}
    text = json.dumps(report, indent=2, ensure_ascii=False)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
