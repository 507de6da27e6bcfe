"""Command-line front end: dimensions, identity checks, kernels, equivalences,
series, witness-model sampling, and the named check suites.

Reports carry the stable schema {check, claim_ref, verdict, char,
multidegrees, timing, warnings}; `--format json` emits them verbatim, and the
process exits nonzero iff any sub-check fails its expected outcome.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from . import albert27, engine, lang, series, tideal
from .term import COMMUTATIVE, PLANAR, field_by_char, mdeg


@dataclass
class RunConfig:
    char: int = 0
    degree_cap: int = 8
    exact_column_cap: int = engine.EXACT_COLUMN_CAP
    workers: int = 1
    fmt: str = "text"
    extended: bool = False
    certificates: bool = False
    catalog_path: str | None = None

    def __post_init__(self):
        if self.char < 0 or (self.char not in (0,) and not _is_prime(self.char)):
            raise ValueError("characteristic must be 0 or a prime")
        if self.degree_cap < 1 or self.workers < 1:
            raise ValueError("caps and worker counts must be positive")


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _parse_mdeg(text):
    return mdeg(int(x) for x in text.split(","))


def _get_variety(cfg, name, q=None):
    if cfg.catalog_path:
        extra = tideal.load_catalog_file(cfg.catalog_path)
        key = tideal.ALIASES.get(name, name)
        if key in extra:
            return extra[key]
    return tideal.get_variety(name, q)


def _emit(cfg, payload, text_lines):
    if cfg.fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def cmd_dim(cfg, args):
    v = _get_variety(cfg, args.variety, args.q)
    fld = field_by_char(cfg.char)
    results = []
    for d in args.multidegree:
        t0 = time.time()
        dim = tideal.quotient_dim(v, d, fld, degree_cap=cfg.degree_cap)
        results.append({
            "check": "dim:%s:%s" % (v.name, ",".join(map(str, d))),
            "claim_ref": "dimension",
            "verdict": str(dim),
            "char": cfg.char,
            "multidegrees": [list(d)],
            "timing": time.time() - t0,
            "warnings": [],
        })
    _emit(cfg, results, ["%s dim %s = %s" % (v.name, list(d), r["verdict"])
                         for d, r in zip(args.multidegree, results)])
    return 0


def cmd_check(cfg, args):
    v = _get_variety(cfg, args.variety, args.q)
    verdict = engine.is_identity(v, args.expr, cfg.char, args.mode,
                                 want_certificate=cfg.certificates,
                                 exact_column_cap=cfg.exact_column_cap,
                                 degree_cap=cfg.degree_cap)
    rep = verdict.as_report("check:%s" % args.expr, "identity-verdict")
    if cfg.certificates and verdict.certificate is not None:
        rep["certificate"] = {str(list(k)): val for k, val in verdict.certificate.items()}
    lines = ["%s on %s (char %d, %s mode): %s"
             % (args.expr, v.name, cfg.char, args.mode, rep["verdict"])]
    for w in verdict.warnings:
        lines.append("  warning: %s" % w)
    _emit(cfg, [rep], lines)
    return 0 if (verdict.is_identity == (not args.expect_nonidentity)) else 1


def cmd_expand(cfg, args):
    flavor = args.flavor
    p = lang.expand(args.expr, flavor)
    if args.star_expand:
        if flavor != COMMUTATIVE:
            raise SystemExit("--star-expand needs commutative flavor")
        p = lang.star_expand(p)
    payload = [{
        "check": "expand:%s" % args.expr,
        "claim_ref": "expansion",
        "verdict": str(p),
        "char": cfg.char,
        "multidegrees": [list(d) for d in p.components()],
        "timing": 0.0,
        "warnings": [],
    }]
    _emit(cfg, payload, [str(p)])
    return 0


def cmd_sigma_q(cfg, args):
    p = lang.apply_sigma_q(lang.expand(args.expr, PLANAR), Fraction(args.q))
    payload = [{
        "check": "sigma-q:%s" % args.expr,
        "claim_ref": "q-commutator-image",
        "verdict": str(p),
        "char": cfg.char,
        "multidegrees": [list(d) for d in p.components()],
        "timing": 0.0,
        "warnings": [],
    }]
    _emit(cfg, payload, [str(p)])
    return 0


def cmd_kernel(cfg, args):
    v = _get_variety(cfg, args.variety, args.q)
    t0 = time.time()
    kb, comm = engine.plus_identity_kernel(v, args.multidegree, cfg.char, cfg.degree_cap)
    polys = engine.kernel_polynomials(kb, comm, field_by_char(cfg.char))
    payload = [{
        "check": "kernel:%s:%s" % (v.name, ",".join(map(str, args.multidegree))),
        "claim_ref": "plus-identity-kernel",
        "verdict": "dim %d" % kb.rank,
        "char": cfg.char,
        "multidegrees": [list(args.multidegree)],
        "timing": time.time() - t0,
        "warnings": [],
        "kernel": [str(p) for p in polys],
    }]
    lines = ["kernel dimension %d at %s" % (kb.rank, list(args.multidegree))]
    lines += ["  %s" % p for p in payload[0]["kernel"]]
    _emit(cfg, payload, lines)
    return 0


def cmd_equiv(cfg, args):
    ambient = _get_variety(cfg, args.ambient)
    res = engine.systems_equivalent(args.left, args.right, ambient,
                                    args.multidegree, cfg.char)
    ok = all(res.values())
    payload = [{
        "check": "equiv",
        "claim_ref": "identity-systems-equivalent",
        "verdict": "pass" if ok else "fail",
        "char": cfg.char,
        "multidegrees": [list(d) for d in res],
        "timing": 0.0,
        "warnings": [],
        "per_degree": {",".join(map(str, d)): bool(v) for d, v in res.items()},
    }]
    lines = ["%s: %s" % (list(d), "equivalent" if v else "different")
             for d, v in res.items()]
    _emit(cfg, payload, lines)
    return 0 if ok else 1


def cmd_koszul(cfg, args):
    v = tideal.get_variety("assosymmetric")
    dv = tideal.get_variety("dual_assosymmetric")
    order = args.order
    t0 = time.time()
    resid, dims, dual_dims = series.koszul_residual(
        v, dv, order, field_by_char(cfg.char),
        degree_cap=max(cfg.degree_cap, order + (1 if cfg.extended else 0)))
    koszul = resid.is_zero()
    payload = [{
        "check": "koszul:order-%d" % order,
        "claim_ref": "koszul-composition-residual",
        "verdict": "residual %s" % resid,
        "char": cfg.char,
        "multidegrees": [[1] * n for n in range(1, order + 1)],
        "timing": time.time() - t0,
        "warnings": [],
        "dims": dims,
        "dual_dims": dual_dims,
        "koszul": koszul,
    }]
    lines = [
        "multilinear dims:      %s" % dims,
        "dual multilinear dims: %s" % dual_dims,
        "composition residual:  %s" % resid,
        "verdict: %s" % ("Koszul up to this order" if koszul else "not Koszul"),
    ]
    _emit(cfg, payload, lines)
    return 0


def cmd_albert(cfg, args):
    t0 = time.time()
    report = albert27.sample_report(args.expr, args.seed, args.samples, args.bound,
                                    workers=cfg.workers)
    payload = [{
        "check": "albert:%s" % args.expr,
        "claim_ref": "hermitian-octonion-samples",
        "verdict": "%d/%d zero" % (report["zero_count"], report["samples"]),
        "char": 0,
        "multidegrees": [],
        "timing": time.time() - t0,
        "warnings": [],
        "report": report,
    }]
    lines = ["%s: %d/%d samples evaluate to zero (seed %d)"
             % (args.expr, report["zero_count"], report["samples"], report["seed"])]
    if report["witness"] is not None:
        lines.append("first nonzero witness at sample %d" % report["witness"]["sample_index"])
    _emit(cfg, payload, lines)
    return 0


def cmd_suite(cfg, args):
    kw = {"char": cfg.char, "extended": cfg.extended}
    if args.name == "albert":
        kw = {"seed": args.seed, "samples": args.samples}
    if args.name in ("main1", "char3"):
        kw["heavy"] = not args.skip_heavy
    result = engine.theorem_suite(args.name, **kw)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(result, fh, indent=2, sort_keys=True)
    lines = []
    for e in result["entries"]:
        lines.append("[%s] %s" % ("PASS" if e["verdict"] == "pass" else "FAIL", e["check"]))
    lines.append("suite %s: %s" % (args.name, "PASS" if result["passed"] else "FAIL"))
    _emit(cfg, result["entries"] if cfg.fmt == "json" else result, lines)
    return 0 if result["passed"] else 1


def build_parser():
    ap = argparse.ArgumentParser(
        prog="freealg",
        description="Exact identity verification in free nonassociative algebras")
    ap.add_argument("--char", type=int, default=0, help="field characteristic (0 or prime)")
    ap.add_argument("--degree-cap", type=int, default=8)
    ap.add_argument("--exact-column-cap", type=int, default=engine.EXACT_COLUMN_CAP,
                    help="largest free-coordinate component decided over the rationals")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--format", dest="fmt", choices=["text", "json"], default="text")
    ap.add_argument("--extended", action="store_true",
                    help="enable the resource-heavy extras (degree-7 dual dimension)")
    ap.add_argument("--certificate", dest="certificates", action="store_true")
    ap.add_argument("--catalog", dest="catalog_path", default=None,
                    help="extra variety catalog file")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("dim", help="dimension of a relatively-free component")
    p.add_argument("variety")
    p.add_argument("--multidegree", type=_parse_mdeg, action="append", required=True)
    p.add_argument("--q", type=Fraction, default=None)
    p.set_defaults(fn=cmd_dim)

    p = sub.add_parser("check", help="identity verdict for an expression")
    p.add_argument("variety")
    p.add_argument("expr")
    p.add_argument("--mode", choices=["direct", "plus"], default="direct")
    p.add_argument("--q", type=Fraction, default=None)
    p.add_argument("--expect-nonidentity", action="store_true")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("expand", help="expand an expression to a polynomial")
    p.add_argument("expr")
    p.add_argument("--flavor", choices=[PLANAR, COMMUTATIVE], default=PLANAR)
    p.add_argument("--star-expand", action="store_true")
    p.set_defaults(fn=cmd_expand)

    p = sub.add_parser("sigma-q", help="apply the q-commutator endomorphism")
    p.add_argument("expr")
    p.add_argument("--q", type=Fraction, required=True)
    p.set_defaults(fn=cmd_sigma_q)

    p = sub.add_parser("kernel", help="plus-identity kernel at a multidegree")
    p.add_argument("variety")
    p.add_argument("--multidegree", type=_parse_mdeg, required=True)
    p.add_argument("--q", type=Fraction, default=None)
    p.set_defaults(fn=cmd_kernel)

    p = sub.add_parser("equiv", help="compare consequence spans of identity systems")
    p.add_argument("--left", action="append", required=True)
    p.add_argument("--right", action="append", required=True)
    p.add_argument("--ambient", default="commutative_magmatic")
    p.add_argument("--multidegree", type=_parse_mdeg, action="append", required=True)
    p.set_defaults(fn=cmd_equiv)

    p = sub.add_parser("koszul", help="operadic composition residual")
    p.add_argument("--order", type=int, default=5)
    p.set_defaults(fn=cmd_koszul)

    p = sub.add_parser("albert", help="sample an expression on the witness model")
    p.add_argument("expr")
    p.add_argument("--seed", type=int, default=20240809)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--bound", type=int, default=3)
    p.set_defaults(fn=cmd_albert)

    p = sub.add_parser("suite", help="run a named check suite")
    p.add_argument("name", choices=sorted(engine.SUITES))
    p.add_argument("--out", default=None, help="write the JSON report here")
    p.add_argument("--seed", type=int, default=20240809)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--skip-heavy", action="store_true",
                   help="skip the degree-8 checks in main1/char3")
    p.set_defaults(fn=cmd_suite)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    cfg = RunConfig(char=args.char, degree_cap=args.degree_cap,
                    exact_column_cap=args.exact_column_cap, workers=args.workers,
                    fmt=args.fmt, extended=args.extended,
                    certificates=args.certificates, catalog_path=args.catalog_path)
    return args.fn(cfg, args)


if __name__ == "__main__":
    sys.exit(main())
