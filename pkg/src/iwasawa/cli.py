"""Command-line front end: ``iwa <subcommand> [options]``.

Exit status: 0 on success, 1 when a verification fails (the first failing
witness goes to stderr), 2 on bad input or a point outside the domain of
the requested computation.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .scalars import GScalar, ParamPoint, ParseError, PoleError, T_VARS
from .exterior import Form, render, parse_form
from .deformation import (build_structure, sigma_from_frame, sigma_appendix, nakamura_class,
                          FrameSingular, WrongClass, StructureEquationViolation)
from .cohomology import hodge_numbers, betti_numbers, frolicher_page, INF_PAGE
from .hodge import Metric, hodge_star, metric_predicates, NotPositive
from . import mirror as mi
from .sampling import sample_points, DEFAULT_SEED

__all__ = ["main", "run_command", "emit_report", "build_parser", "to_jsonable"]

FORMATS = ("json", "table", "csv")
DOMAIN_ERRORS = (ParseError, PoleError, NotPositive, FrameSingular, WrongClass,
                 mi.NormalizationPole, mi.DegreeMismatch, mi.JacobianSingular,
                 mi.IsotropyError, StructureEquationViolation, ValueError)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- output

def pt_str(t):
    nz = [f"{k}={v.to_literal()}" for k, v in zip(T_VARS, t.t) if v]
    return ",".join(nz) if nz else "0"


def to_jsonable(x):
    if isinstance(x, GScalar):
        return x.to_literal()
    if isinstance(x, Form):
        return render(x)
    if isinstance(x, ParamPoint):
        return pt_str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    return x


def _cell(v):
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    if isinstance(v, bool):
        return "true" if v else "false"
    return "" if v is None else str(v)


def _is_grid(v):
    return isinstance(v, list) and v and all(isinstance(r, list) for r in v)


def _table(records):
    if not records:
        return ""
    flat = all(not isinstance(v, (list, dict)) or not _is_grid(v) for r in records for v in r.values())
    if flat and len(records) > 1 or all(not isinstance(v, (list, dict)) for r in records for v in r.values()):
        keys = sorted({k for r in records for k in r})
        rows = [[_cell(r.get(k)) for k in keys] for r in records]
        widths = [max(len(k), *(len(row[i]) for row in rows)) for i, k in enumerate(keys)]
        lines = ["  ".join(k.ljust(w) for k, w in zip(keys, widths)).rstrip()]
        lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows]
        return "\n".join(lines) + "\n"
    blocks = []
    for r in records:
        keys = sorted(r)
        kw = max(len(k) for k in keys)
        lines = []
        for k in keys:
            v = r[k]
            if _is_grid(v):
                cells = [[_cell(c) for c in row] for row in v]
                w = max(len(c) for row in cells for c in row)
                head = "p\\q " + " ".join(str(j).rjust(w) for j in range(len(cells[0])))
                lines.append(f"{k.ljust(kw)}  {head}")
                for i, row in enumerate(cells):
                    lines.append(f"{' ' * kw}  {str(i).ljust(3)} " + " ".join(c.rjust(w) for c in row))
            elif isinstance(v, list):
                lines.append(f"{k.ljust(kw)}  " + " ".join(_cell(c) for c in v))
            else:
                lines.append(f"{k.ljust(kw)}  {_cell(v)}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def emit_report(records, fmt="json", single=False):
    """Serialise a list of records; returns bytes."""
    recs = [to_jsonable(r) for r in records]
    if fmt == "json":
        obj = recs[0] if single and len(recs) == 1 else recs
        text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        keys = sorted({k for r in recs for k in r})
        w = csv.writer(buf, lineterminator="\n")
        if keys:
            w.writerow(keys)
        for r in recs:
            w.writerow([_cell(r.get(k)) for k in keys])
        text = buf.getvalue()
    elif fmt == "table":
        text = _table(recs)
    else:
        raise UsageError(f"unknown format {fmt!r}")
    return text.encode("utf-8")


# ---------------------------------------------------------------- commands

def _grid(h):
    return [[h[p, q] for q in range(4)] for p in range(4)]


def cmd_hodge(t, args):
    J = build_structure(t)
    return {"t": t, "class": nakamura_class(t), "kind": args.kind,
            "hodge": _grid(hodge_numbers(J, args.kind)), "betti": betti_numbers(J)}


def cmd_frolicher(t, args):
    J = build_structure(t)
    pages = {}
    for r in (1, 2, 3, INF_PAGE):
        pages[r] = [[frolicher_page(r, p, q, J).dimension for q in range(4)] for p in range(4)]
    return {"t": t, "E1": pages[1], "E2": pages[2], "E3": pages[3], "Einf": pages[INF_PAGE],
            "degenerates_at_E2": pages[2] == pages[3] == pages[INF_PAGE]}


def cmd_star(t, args):
    if not args.form:
        raise UsageError("star needs --form")
    u = parse_form(args.form)
    m = Metric.omega11(t) if args.metric == "omega11" else Metric.standard(build_structure(t))
    s = hodge_star(u, m)
    ev = mi.star_eigenvalue(u, m) if u.degrees() == [3] else None
    return {"t": t, "metric": args.metric, "form": u, "star": s,
            "eigenvalue": ev.to_literal() if ev is not None else None}


def cmd_metric(t, args):
    out = {"t": t}
    fams = ("omega", "omega11") if args.family == "both" else (args.family,)
    for fam in fams:
        m = Metric.omega11(t) if fam == "omega11" else Metric.standard(build_structure(t))
        pr = metric_predicates(m)
        for k in ("gauduchon", "strongly_gauduchon", "balanced", "positive"):
            out[f"{fam}.{k}"] = pr[k]
    return out


def cmd_sigma(t, args):
    s = sigma_from_frame(build_structure(t))
    out = {"t": t, "class": nakamura_class(t), "frame": s.as_dict()}
    if not t.D:
        a = sigma_appendix(t, variant=args.variant)
        out["appendix"] = a.as_dict()
        out["agree"] = a == s
    return out


def cmd_coords(t, args):
    return {"t": t, "z": mi.coordinates_z(t), "w": mi.coordinates_w(t)}


def cmd_mirror(t, args):
    img = mi.mirror_map_complexified(t) if args.complexified else mi.mirror_map_positive(t)
    return {"t": t, "map": "complexified" if args.complexified else "positive",
            "coeffs": img.coeffs, "basis": img.labels, "marked": img.marked}


POINT_COMMANDS = {"hodge": cmd_hodge, "frolicher": cmd_frolicher, "star": cmd_star,
                  "metric": cmd_metric, "sigma": cmd_sigma, "coords": cmd_coords,
                  "mirror": cmd_mirror}


def cmd_signature(args):
    pm = mi.space_signature(args.space)
    return [{"space": args.space, "pairing": pm.kind, "basis": pm.labels,
             "gram": pm.entries, "signature": "".join(pm.signature)}]


def cmd_vhs(args):
    v = mi.vhs_checks()
    recs = []
    recs.append({"verdict": "transversality", "ok": v["transversality"]["ok"],
                 "witness": [f"{n} -| Gamma_{j}: {render(c) if isinstance(c, Form) else c}"
                             for n, j, c in v["transversality"]["witnesses"]]})
    recs.append({"verdict": "f2_holomorphic", "ok": v["f2_holomorphic"]["ok"],
                 "witness": [f"dGamma_{j}/d{s}: {render(f)}"
                             for (j, s), f in sorted(v["f2_holomorphic"]["derivatives"].items())]})
    w = v["h12_not_holomorphic"]
    recs.append({"verdict": "h12_not_holomorphic", "ok": w["ok"],
                 "witness": [f"W = {render(w['W'])}", f"delbar_0 W = {render(w['delbar_W'])}",
                             f"delbar_0(al^ga~^be) = {render(w['delbar_al_gab_be'])}"]})
    recs.append({"verdict": "fg_holomorphic", "ok": v["fg_holomorphic"]["ok"],
                 "witness": [f"dG_{k}/d{s}: {render(f)}"
                             for (k, s), f in sorted(v["fg_holomorphic"]["derivatives"].items())]})
    return recs


def cmd_verify(args, seed):
    from .checks import run_checks
    ids = None
    if args.only:
        try:
            ids = [int(x) for x in args.only.split(",") if x]
        except ValueError:
            raise UsageError(f"--only expects comma-separated integers, got {args.only!r}") from None
    from .checks import REGISTRY
    for i in ids or []:
        if i not in REGISTRY:
            raise UsageError(f"no acceptance criterion {i}")
    results = run_checks(ids, seed=seed)
    recs = [{"id": r.cid, "title": r.title, "status": "PASS" if r.passed else "FAIL",
             "subchecks": [f"{'ok  ' if ok else 'FAIL'} {label}{' | ' + note if note and not ok else ''}"
                           for label, ok, note in r.lines]} for r in results]
    first = next((r for r in results if not r.passed), None)
    return recs, first


# ---------------------------------------------------------------- parsing

def _common(p):
    p.add_argument("--t", action="append", default=None,
                   help="parameter point, e.g. 0 or 't11=1/4,t22=1/8+1/8i' (repeatable)")
    p.add_argument("--seed", type=int, default=None, help="sampler seed (IWA_SEED overrides)")
    p.add_argument("--count", type=int, default=None, help="number of sampled points")
    p.add_argument("--max-den", type=int, default=8, help="sampler denominator bound")
    p.add_argument("--slice", choices=("essential", "full"), default="essential")
    p.add_argument("--format", choices=FORMATS, default="json")
    p.add_argument("--output", default=None, help="write the report to this file")
    p.add_argument("--config", default=None, help="JSON file whose keys mirror the flags")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for point lists")


def build_parser():
    parser = argparse.ArgumentParser(prog="iwa", description="Exact invariant-form computations "
                                     "on the Iwasawa manifold and its Kuranishi family.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("hodge", help="Hodge and Betti numbers")
    _common(p)
    p.add_argument("--kind", choices=("dolbeault", "bc", "aeppli"), default="dolbeault")
    p = sub.add_parser("frolicher", help="Frolicher pages E1, E2, E3, E_inf")
    _common(p)
    p = sub.add_parser("star", help="Hodge star of a form")
    _common(p)
    p.add_argument("--form", default=None)
    p.add_argument("--metric", choices=("standard", "omega11"), default="standard")
    p = sub.add_parser("metric", help="Gauduchon / sG / balanced predicates")
    _common(p)
    p.add_argument("--family", choices=("omega", "omega11", "both"), default="both")
    p = sub.add_parser("sigma", help="structure coefficients sigma")
    _common(p)
    p.add_argument("--variant", choices=("expanded", "printed"), default="expanded")
    p = sub.add_parser("coords", help="canonical coordinates z and w")
    _common(p)
    p = sub.add_parser("mirror", help="positive or complexified mirror map")
    _common(p)
    p.add_argument("--complexified", action="store_true")
    p = sub.add_parser("signature", help="signature of an intersection form")
    _common(p)
    p.add_argument("--space", choices=("h21gamma", "f2", "h11B"), default="h21gamma")
    p = sub.add_parser("vhs-check", help="transversality and holomorphicity verdicts")
    _common(p)
    p = sub.add_parser("verify", help="replay every acceptance check")
    _common(p)
    p.add_argument("--only", default=None, help="comma-separated criterion ids")
    return parser


def _apply_config(parser, argv):
    args = parser.parse_args(argv)
    if not args.config:
        return args
    try:
        with open(args.config, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {args.config}: {exc}") from None
    if not isinstance(cfg, dict):
        raise UsageError("config file must hold a JSON object")
    known = vars(args)
    for k, v in cfg.items():
        key = k.replace("-", "_")
        if key not in known or key in ("command", "config"):
            raise UsageError(f"unknown config key {k!r}")
        if key == "t" and isinstance(v, str):
            cfg[k] = [v]
    # flags given explicitly on the command line win over the config file
    defaults = {k.replace("-", "_"): v for k, v in cfg.items()}
    sub = parser._subparsers._group_actions[0].choices[args.command]
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


def _seed(args):
    env = os.environ.get("IWA_SEED")
    if env not in (None, ""):
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"IWA_SEED must be an integer, got {env!r}") from None
    return DEFAULT_SEED if args.seed is None else args.seed


def _points(args, seed):
    pts = [ParamPoint.parse(s) for s in args.t] if args.t else []
    if args.count:
        pts += sample_points(seed, args.count, slice=args.slice, max_den=args.max_den)
    return pts or [ParamPoint()]


def _run_point(payload):
    name, t, args = payload
    return POINT_COMMANDS[name](t, args)


def _write(data, args, stream):
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(data)
    else:
        stream.write(data.decode("utf-8"))
        stream.flush()


def run_command(argv, stdout=None, stderr=None):
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        try:
            args = _apply_config(parser, argv)
        except SystemExit as exc:
            return 2 if exc.code not in (0, None) else 0
        seed = _seed(args)
        if args.command == "verify":
            recs, first = cmd_verify(args, seed)
            _write(emit_report(recs, args.format), args, stdout)
            if first is not None:
                label, _, note = next(l for l in first.lines if not l[1])
                stderr.write(f"first failure: criterion {first.cid} ({first.title}): {label}"
                             f"{' | ' + note if note else ''}\n")
                return 1
            return 0
        if args.command == "signature":
            _write(emit_report(cmd_signature(args), args.format, single=True), args, stdout)
            return 0
        if args.command == "vhs-check":
            recs = cmd_vhs(args)
            _write(emit_report(recs, args.format), args, stdout)
            if not all(r["ok"] for r in recs):
                bad = next(r for r in recs if not r["ok"])
                stderr.write(f"first failure: {bad['verdict']}\n")
                return 1
            return 0
        pts = _points(args, seed)
        jobs = [(args.command, t, args) for t in pts]
        if args.jobs > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as ex:
                recs = list(ex.map(_run_point, jobs))
        else:
            recs = [_run_point(j) for j in jobs]
        single = bool(args.t) and len(args.t) == 1 and not args.count
        _write(emit_report(recs, args.format, single=single), args, stdout)
        return 0
    except UsageError as exc:
        stderr.write(f"iwa: error: {exc}\n")
        return 2
    except DOMAIN_ERRORS as exc:
        stderr.write(f"iwa: {type(exc).__name__}: {exc}\n")
        return 2
    except OSError as exc:
        stderr.write(f"iwa: I/O error: {exc}\n")
        return 2


def main(argv=None):
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
