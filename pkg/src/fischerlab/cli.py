"""Command-line front end.

Exit codes: 0 success, 1 mathematical-verdict failure, 2 usage error,
3 resource cap exceeded.  All machine output serializes rationals as "p/q"
strings and uses canonical (sorted-key) JSON, so emitted JSON round-trips
byte-identically.  Timings appear only in the human-readable text output.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import catalog, fischer, groups, matsuo, virasoro
from .catalog import CatalogError
from .fischer import NotThreeTranspositionError
from .groups import DEFAULT_MAX_ORDER, EnumerationCapError
from .matsuo import MatsuoError, format_rational
from .virasoro import NotInTableError, VirasoroError

DEFAULT_MAX_AXES = fischer.DEFAULT_MAX_AXES

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _canonical_json(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _verdict(status, reason=""):
    return {"verdict": status, "reason": reason}


def _parse_fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad rational {text!r}: {exc}")


def _parse_label(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"label must be 'r,s', got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"label must be integers 'r,s', got {text!r}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fischerlab",
        description="3-transposition groups, Fischer graphs, Matsuo algebras "
        "and unitary-series fusion calculus.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_cat = sub.add_parser("catalog", help="catalog queries")
    p_cat.add_argument("action", choices=["list"])
    p_cat.add_argument("--json", action="store_true")

    p_an = sub.add_parser("analyze", help="full analysis of a catalog descriptor")
    p_an.add_argument("descriptor")
    p_an.add_argument("--alpha", type=_parse_fraction, default=Fraction(1, 2))
    p_an.add_argument("--beta", type=_parse_fraction, default=Fraction(1, 2))
    p_an.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    p_an.add_argument("--max-axes", type=int, default=DEFAULT_MAX_AXES)
    p_an.add_argument("--threads", type=int, default=1)
    p_an.add_argument("--dot", metavar="FILE", help="export the Fischer graph as DOT")
    p_an.add_argument("--gram", metavar="FILE", help="export the Gram matrix as CSV")
    p_an.add_argument(
        "--json", nargs="?", const="-", metavar="FILE",
        help="emit the report as canonical JSON (to FILE, or stdout)",
    )

    p_fu = sub.add_parser("fusion", help="unitary-series fusion queries")
    p_fu.add_argument("--m", type=int, required=True)
    p_fu.add_argument("--left", type=_parse_label)
    p_fu.add_argument("--right", type=_parse_label)
    p_fu.add_argument("--grid", action="store_true", help="list all module weights")
    p_fu.add_argument("--sector", action="store_true", help="show P_m and sigma signs")
    p_fu.add_argument("--contains", type=_parse_fraction, metavar="p/q",
                      help="with --grid: test membership of a weight")
    p_fu.add_argument("--json", nargs="?", const="-", metavar="FILE")

    p_sa = sub.add_parser("sakuma", help="dihedral-subalgebra table lookups")
    p_sa.add_argument("tag", nargs="?")
    p_sa.add_argument("--inner", type=_parse_fraction, metavar="p/q")
    p_sa.add_argument("--json", nargs="?", const="-", metavar="FILE")
    return parser


def _emit(payload, json_target, text):
    if json_target is None:
        sys.stdout.write(text)
        return
    blob = _canonical_json(payload)
    if json_target == "-":
        sys.stdout.write(blob)
    else:
        with open(json_target, "w") as fh:
            fh.write(blob)


# -- catalog -----------------------------------------------------------------


def cmd_catalog(args):
    rows = [
        {"family": name, "params": info["params"], "example": info["example"]}
        for name, info in sorted(catalog.FAMILIES.items())
    ]
    if args.json:
        sys.stdout.write(_canonical_json(rows))
    else:
        for row in rows:
            sys.stdout.write(
                f"{row['family']:<16} {row['params']:<48} e.g. {row['example']}\n"
            )
    return EXIT_OK


# -- analyze -----------------------------------------------------------------


def _unity_section(algebra, components):
    out = []
    for idx, comp in enumerate(components):
        k = fischer.valency(algebra.system, comp)
        if k * algebra.alpha + 4 == 0:
            out.append(
                {"component": idx, "exists": False, "coefficient": None,
                 **_verdict("not-run", "k*alpha+4 = 0")}
            )
            continue
        omega = algebra.unity(comp)
        coeff = Fraction(4) / (k * algebra.alpha + 4)
        out.append(
            {"component": idx, "exists": True,
             "coefficient": format_rational(coeff), **_verdict("pass")}
        )
        del omega
    return out


def _spectra_section(algebra, components):
    if algebra.alpha in (0, 2):
        return {"per_component": [], **_verdict("not-run", "degenerate-alpha")}
    per_component = []
    for idx, comp in enumerate(components):
        rep = comp[0]
        spectrum = algebra.adjoint_spectrum(rep)
        per_component.append(
            {
                "component": idx,
                "axis": rep,
                "dims": {
                    "2": len(spectrum.basis_2),
                    "0": len(spectrum.basis_0),
                    "alpha": len(spectrum.basis_alpha),
                },
            }
        )
    for i in range(algebra.n):
        algebra.adjoint_spectrum(i)  # raises VerificationError on any defect
    return {"per_component": per_component, **_verdict("pass")}


def cmd_analyze(args):
    t_start = time.perf_counter()
    entry = catalog.from_descriptor(args.descriptor)
    if args.threads < 1:
        raise CatalogError("--threads must be >= 1")

    sys_t0 = time.perf_counter()
    system = fischer.build_system(
        entry.generators, entry.seed, max_axes=args.max_axes
    )
    comps = fischer.components(system)
    witness = fischer.detect_H_triple(system)
    h_order = fischer.extract_H(system, witness).order if witness else None
    group = system.group(max_order=args.max_order)
    center_order = len(groups.center(group))
    graph_seconds = time.perf_counter() - sys_t0

    alg_t0 = time.perf_counter()
    algebra = matsuo.MatsuoAlgebra(system, args.alpha, args.beta)
    try:
        algebra.verify_axioms()
        axioms = _verdict("pass")
    except matsuo.VerificationError as exc:
        axioms = _verdict("fail", str(exc))
    radical = algebra.gram_radical()
    try:
        quotient = algebra.quotient(radical)
        quotient_dim = quotient.dim
        quotient_verdict = _verdict("pass")
    except matsuo.MatsuoError as exc:
        quotient_dim = None
        quotient_verdict = _verdict("fail", str(exc))
    try:
        miyamoto_maps = [algebra.miyamoto(i) for i in range(algebra.n)]
        miyamoto_verdict = _verdict("pass")
        del miyamoto_maps
    except matsuo.MatsuoError as exc:
        miyamoto_verdict = _verdict("fail", str(exc))
    algebra_seconds = time.perf_counter() - alg_t0

    report = {
        "descriptor": entry.descriptor,
        "group_order": group.order,
        "center_order": center_order,
        "class_size": system.size,
        "connected": len(comps) == 1,
        "components": [
            {"size": len(c), "valency": fischer.valency(system, c)} for c in comps
        ],
        "three_transposition": _verdict("pass"),
        "h_triple": {
            "witness": list(witness) if witness else None,
            "subgroup_order": h_order,
            "type_verdict": "symplectic" if witness is None else
            "non-symplectic (H witness); finer type undetermined beyond H",
        },
        "matsuo": {
            "alpha": format_rational(args.alpha),
            "beta": format_rational(args.beta),
            "axioms": axioms,
            "unity": _unity_section(algebra, comps),
            "radical_dimension": len(radical),
            "quotient_dimension": quotient_dim,
            "quotient": quotient_verdict,
            "spectra": _spectra_section(algebra, comps),
            "miyamoto": miyamoto_verdict,
            "form_positive_definite": positive_definite(algebra),
        },
    }

    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(fischer.to_dot(system))
    if args.gram:
        with open(args.gram, "w") as fh:
            fh.write(matsuo.export_gram_csv(algebra))

    total = time.perf_counter() - t_start
    text = _analysis_text(report, graph_seconds, algebra_seconds, total)
    _emit(report, args.json, text)
    failed = any(
        section.get("verdict") == "fail"
        for section in (
            report["matsuo"]["axioms"],
            report["matsuo"]["quotient"],
            report["matsuo"]["spectra"],
            report["matsuo"]["miyamoto"],
        )
    )
    return EXIT_VERDICT if failed else EXIT_OK


def positive_definite(algebra):
    """All leading principal minors positive, via one fraction-free pass."""
    import math

    n = algebra.n
    den = math.lcm(*(x.denominator for row in algebra.gram for x in row), 1)
    m = [[int(x * den) for x in row] for row in algebra.gram]
    prev = 1
    for k in range(n):
        if m[k][k] <= 0:
            return False
        for row in range(k + 1, n):
            for col in range(k + 1, n):
                m[row][col] = (m[row][col] * m[k][k] - m[row][k] * m[k][col]) // prev
            m[row][k] = 0
        prev = m[k][k]
    return True


def _analysis_text(report, graph_seconds, algebra_seconds, total_seconds):
    lines = [f"descriptor        {report['descriptor']}"]
    lines.append(f"group order       {report['group_order']}")
    lines.append(f"center order      {report['center_order']}")
    lines.append(f"class size |I|    {report['class_size']}")
    comps = ", ".join(
        f"size {c['size']} (k={c['valency']})" for c in report["components"]
    )
    lines.append(f"components        {comps}")
    h = report["h_triple"]
    if h["witness"] is None:
        lines.append("H triple          none -> symplectic type")
    else:
        lines.append(
            f"H triple          {tuple(h['witness'])} -> subgroup order "
            f"{h['subgroup_order']} (non-symplectic)"
        )
    m = report["matsuo"]
    lines.append(f"matsuo            alpha={m['alpha']} beta={m['beta']}")
    lines.append(f"  axioms          {m['axioms']['verdict']}")
    for u in m["unity"]:
        desc = f"coefficient {u['coefficient']}" if u["exists"] else "none (k*alpha+4=0)"
        lines.append(f"  unity[{u['component']}]        {desc} [{u['verdict']}]")
    lines.append(f"  radical dim     {m['radical_dimension']}")
    lines.append(
        f"  quotient dim    {m['quotient_dimension']} [{m['quotient']['verdict']}]"
    )
    lines.append(f"  spectra         {m['spectra']['verdict']}")
    for s in m["spectra"]["per_component"]:
        d = s["dims"]
        lines.append(
            f"    axis {s['axis']:<4} dims: 2 -> {d['2']}, 0 -> {d['0']}, "
            f"alpha -> {d['alpha']}"
        )
    lines.append(f"  miyamoto        {m['miyamoto']['verdict']}")
    lines.append(f"  form pos.def.   {m['form_positive_definite']}")
    lines.append(
        f"timing            graph {graph_seconds:.2f}s, algebra "
        f"{algebra_seconds:.2f}s, total {total_seconds:.2f}s"
    )
    return "\n".join(lines) + "\n"


# -- fusion ------------------------------------------------------------------


def cmd_fusion(args):
    m = args.m
    if m < 1:
        raise VirasoroError(f"--m must be >= 1, got {m}")
    if args.grid:
        labels = virasoro.irreducibles(m)
        payload = {
            "m": m,
            "central_charge": format_rational(virasoro.central_charge(m)),
            "labels": [
                {"r": r, "s": s, "weight": format_rational(virasoro.weight(m, r, s)),
                 "tau_sign": virasoro.tau_sign(m, (r, s))}
                for r, s in labels
            ],
        }
        if args.contains is not None:
            payload["contains"] = {
                "weight": format_rational(args.contains),
                "present": virasoro.weight_exists(m, args.contains),
            }
        text_lines = [f"m={m}  c={payload['central_charge']}"]
        for row in payload["labels"]:
            text_lines.append(
                f"  ({row['r']},{row['s']})  h={row['weight']:<8} tau={row['tau_sign']:+d}"
            )
        if "contains" in payload:
            verdict = "present" if payload["contains"]["present"] else "absent"
            text_lines.append(
                f"  weight {payload['contains']['weight']}: {verdict}"
            )
        _emit(payload, args.json, "\n".join(text_lines) + "\n")
        return EXIT_OK
    if args.sector:
        sector = virasoro.sigma_sector(m)
        payload = {
            "m": m,
            "sector": [
                {"r": r, "s": s, "weight": format_rational(virasoro.weight(m, r, s)),
                 "sigma_sign": virasoro.sigma_sign(m, (r, s))}
                for r, s in sector
            ],
        }
        lines = [f"P_{m}:"]
        for row in payload["sector"]:
            lines.append(
                f"  ({row['r']},{row['s']})  h={row['weight']:<8} sigma={row['sigma_sign']:+d}"
            )
        _emit(payload, args.json, "\n".join(lines) + "\n")
        return EXIT_OK
    if args.left is None or args.right is None:
        raise VirasoroError("need --left and --right (or --grid / --sector)")
    product = virasoro.fuse(m, args.left, args.right)
    payload = {
        "m": m,
        "left": list(args.left),
        "right": list(args.right),
        "product": [
            {
                "r": r,
                "s": s,
                "weight": format_rational(virasoro.weight(m, r, s)),
                "tau_sign": virasoro.tau_sign(m, (r, s)),
                "in_sigma_sector": virasoro.in_sigma_sector(m, (r, s)),
                "sigma_sign": (
                    virasoro.sigma_sign(m, (r, s))
                    if virasoro.in_sigma_sector(m, (r, s))
                    else None
                ),
            }
            for r, s in product
        ],
    }
    lines = [f"({args.left[0]},{args.left[1]}) x ({args.right[0]},{args.right[1]}) at m={m}:"]
    for row in payload["product"]:
        sig = f" sigma={row['sigma_sign']:+d}" if row["sigma_sign"] is not None else ""
        lines.append(
            f"  ({row['r']},{row['s']})  h={row['weight']:<8} tau={row['tau_sign']:+d}{sig}"
        )
    _emit(payload, args.json, "\n".join(lines) + "\n")
    return EXIT_OK


# -- sakuma ------------------------------------------------------------------


def _record_jsonable(rec, ambiguous=False):
    out = {
        "type": rec.type_tag,
        "max_tau_order": rec.max_tau_order,
        "inner_product": format_rational(rec.inner_product),
        "inner_product_times_1024": rec.inner_product_times_1024,
        "griess_dim": rec.griess_dim,
        "ising_count": rec.ising_count,
        "miyamoto_kind": rec.miyamoto_kind,
    }
    if ambiguous:
        out["ambiguous"] = True
    return out


def cmd_sakuma(args):
    if (args.tag is None) == (args.inner is None):
        raise NotInTableError("give exactly one of a type tag or --inner p/q")
    if args.tag is not None:
        records = (virasoro.lookup_by_type(args.tag),)
    else:
        records = virasoro.lookup_by_inner_product(args.inner)
    ambiguous = len(records) > 1
    payload = [_record_jsonable(rec, ambiguous) for rec in records]
    lines = []
    if ambiguous:
        lines.append("ambiguous inner product; candidates:")
    for rec in records:
        lines.append(
            f"{rec.type_tag}: (e|f)={format_rational(rec.inner_product)} "
            f"(x1024: {rec.inner_product_times_1024}), dim={rec.griess_dim}, "
            f"axes={rec.ising_count}, max|tt'|={rec.max_tau_order}, "
            f"kind={rec.miyamoto_kind}"
        )
    _emit(payload, args.json, "\n".join(lines) + "\n")
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        if args.command == "catalog":
            return cmd_catalog(args)
        if args.command == "analyze":
            return cmd_analyze(args)
        if args.command == "fusion":
            return cmd_fusion(args)
        if args.command == "sakuma":
            return cmd_sakuma(args)
        return EXIT_USAGE
    except NotThreeTranspositionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERDICT
    except EnumerationCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (CatalogError, VirasoroError, NotInTableError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MatsuoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERDICT


def run():
    raise SystemExit(main())


if __name__ == "__main__":
    run()
