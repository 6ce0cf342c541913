"""Command-line surface: compute coefficient tables, run the verifiers.

Subcommands
-----------
compute   emit one table column (or a whole height range) as JSON lines
          or CSV, sorted lexicographically by output then input tuple.
verify    run one verification suite and print PASS/FAIL lines.
selftest  a fast pass over every suite.

Output on stdout (or --out) is deterministic byte for byte; timings and
other diagnostics go to stderr.  Exit status: 0 all checks pass, 1 a
check failed, 2 usage error.
"""

import argparse
import csv
import io
import json
import os
import sys
import time
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor

from . import pbw, verify
from .presets import preset, reverse, tuples_with_weight, weights_up_to
from .qfield import canonical_string, parse as parse_coefficient

ALGEBRAS = ("A2", "C2", "G2")
KINDS = ("gamma", "phi", "R", "K", "F")
_KIND_ALGEBRA = {"R": "A2", "K": "C2", "F": "G2"}
SUITES = ("tetra", "reflect3d", "theorem", "props", "intertwine")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# wire format

TableRecord = namedtuple("TableRecord", ["algebra", "kind", "inp", "out",
                                         "coeff"])


def record_to_json(rec):
    return json.dumps({"algebra": rec.algebra, "kind": rec.kind,
                       "in": list(rec.inp), "out": list(rec.out),
                       "coeff": rec.coeff}, separators=(", ", ": "))


def record_from_json(line):
    d = json.loads(line)
    rec = TableRecord(d["algebra"], d["kind"], tuple(d["in"]),
                      tuple(d["out"]), d["coeff"])
    parse_coefficient(rec.coeff)      # wire invariant: must parse back
    return rec


def records_to_csv(records):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["algebra", "kind", "in", "out", "coeff"])
    for r in records:
        w.writerow([r.algebra, r.kind, ",".join(map(str, r.inp)),
                    ",".join(map(str, r.out)), r.coeff])
    return buf.getvalue().splitlines()


def records_from_csv(lines):
    rows = list(csv.reader(lines))
    if not rows or rows[0] != ["algebra", "kind", "in", "out", "coeff"]:
        raise ValueError("missing csv header")
    out = []
    for alg, kind, inp, outp, coeff in rows[1:]:
        parse_coefficient(coeff)
        out.append(TableRecord(alg, kind, _parse_tuple(inp),
                               _parse_tuple(outp), coeff))
    return out


def _parse_tuple(text):
    try:
        t = tuple(int(s) for s in text.split(","))
    except ValueError:
        raise UsageError(f"not a comma-separated integer tuple: {text!r}")
    if any(x < 0 for x in t):
        raise UsageError(f"negative exponent in {text!r}")
    return t


# ---------------------------------------------------------------------------
# compute

def _gamma_records(name, inputs):
    """gamma^A_B over word-1 outputs B, one block per input A (word 2)."""
    p = preset(name)
    out = []
    for A in inputs:
        wgt = p.conserved2(A)
        tb = pbw.transition_block(name, wgt)
        ra = reverse(A)
        for B in tuples_with_weight(name, 1, wgt):
            c = tb.gamma(ra, reverse(B))
            if not c.num.is_zero():
                out.append(TableRecord(name, "gamma", A, B,
                                       canonical_string(c)))
    return out


def _phi_records(name, inputs):
    """Phi^C_B over word-2 outputs C, one block per input ket B (word 1)."""
    phi = verify.shared_phi(name)
    p = phi.preset
    out = []
    for B in inputs:
        _, _, ent = phi.block(p.conserved1(B))
        for (C, Bc), v in ent.items():
            if Bc == B and not v.num.is_zero():
                out.append(TableRecord(name, "phi", B, C,
                                       canonical_string(v)))
    return out


def _checked_records(name, kind, inputs):
    tab = verify.shared_table(name)
    out = []
    for I in inputs:
        for C, v in sorted(tab.column(I).items()):
            if not v.num.is_zero():
                out.append(TableRecord(name, kind, I, C,
                                       canonical_string(v)))
    return out


def compute_records(algebra, kind, inp=None, max_height=None):
    """TableRecords for one input tuple, or every input up to max_height."""
    if algebra not in ALGEBRAS:
        raise UsageError(f"unknown algebra {algebra!r}")
    if kind not in KINDS:
        raise UsageError(f"unknown kind {kind!r}")
    want = _KIND_ALGEBRA.get(kind)
    if want is not None and want != algebra:
        raise UsageError(f"kind {kind} belongs to {want}, not {algebra}")
    p = preset(algebra)
    bound = verify.DEFAULT_HEIGHTS[algebra] if max_height is None \
        else max_height
    if inp is not None:
        if len(inp) != p.length:
            raise UsageError(f"{algebra} tuples have {p.length} entries, "
                             f"got {inp}")
        if sum(inp) > bound:
            raise UsageError(f"input sum {sum(inp)} beyond height bound "
                             f"{bound}")
        inputs = [tuple(inp)]
    else:
        label = 1 if kind == "phi" else 2
        inputs = [t for w in weights_up_to(algebra, bound)
                  for t in tuples_with_weight(algebra, label, w)
                  if sum(t) <= bound]
    if kind == "gamma":
        records = _gamma_records(algebra, inputs)
    elif kind == "phi":
        records = _phi_records(algebra, inputs)
    else:
        records = _checked_records(algebra, kind, inputs)
    records.sort(key=lambda r: (r.out, r.inp))
    return records


# ---------------------------------------------------------------------------
# verify dispatch

def _merge(suite, reports, elapsed):
    checks = [c for r in reports for c in r.checks]
    return verify.VerifyReport(suite, checks, elapsed)


def _fanout(fn, algebras, workers):
    if workers > 1 and len(algebras) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(fn, algebras))
    return [fn(a) for a in algebras]


def run_suite(suite, algebras=ALGEBRAS, max_height=None, max_occ=None,
              mode=None, workers=1):
    """One verification suite as a single VerifyReport."""
    t0 = time.perf_counter()
    if suite == "tetra":
        return verify.verify_tetrahedron(
            max_occ=2 if max_occ is None else max_occ,
            mode=mode or "sampled")
    if suite == "reflect3d":
        return verify.verify_3d_reflection(
            max_occ=1 if max_occ is None else max_occ,
            mode=mode or "sampled")
    heights = None if max_height is None \
        else {a: max_height for a in algebras}
    if suite == "theorem":
        reports = _fanout(
            lambda a: verify.verify_theorem(heights=heights, algebras=(a,)),
            algebras, workers)
    elif suite == "props":
        kw = {}
        if max_occ is not None:
            kw = {"key_prop_entries": max_occ, "serre_entries": max_occ}
        reports = _fanout(
            lambda a: verify.verify_properties(heights=heights,
                                               algebras=(a,), **kw),
            algebras, workers)
    elif suite == "intertwine":
        bounds = None if max_occ is None else {a: max_occ for a in algebras}
        reports = _fanout(
            lambda a: verify.verify_t_intertwining(
                bounds=bounds, heights=heights, algebras=(a,)),
            algebras, workers)
    else:
        raise UsageError(f"unknown suite {suite!r}")
    return _merge(reports[0].suite, reports, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# plumbing

def _workers_from_env():
    raw = os.environ.get("QPBW_WORKERS")
    if raw is None or raw == "":
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"QPBW_WORKERS must be an integer, got {raw!r}")
    if n < 1:
        raise UsageError(f"QPBW_WORKERS must be >= 1, got {n}")
    return n


def _apply_config(args):
    path = getattr(args, "config", None)
    if not path:
        return
    try:
        fh = open(path)
    except OSError as e:
        raise UsageError(f"cannot read config: {e}")
    cfg = {}
    with fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"bad config line (want key=value): "
                                 f"{line!r}")
            k, v = line.split("=", 1)
            cfg[k.strip().replace("-", "_")] = v.strip()
    names = {"algebra": str, "kind": str, "inp": str, "max_height": int,
             "max_occ": int, "mode": str, "fmt": str, "out": str}
    alias = {"format": "fmt", "in": "inp"}
    for key, val in cfg.items():
        key = alias.get(key, key)
        if key not in names:
            raise UsageError(f"unknown config key {key!r}")
        if not hasattr(args, key) or getattr(args, key) is not None:
            continue                      # flags win, or key not relevant
        try:
            setattr(args, key, names[key](val))
        except ValueError:
            raise UsageError(f"bad config value for {key}: {val!r}")


def _emit(lines, out_path):
    text = "\n".join(lines) + ("\n" if lines else "")
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report_exit(reports, out_path):
    lines = [ln for r in reports for ln in r.lines()]
    _emit(lines, out_path)
    for r in reports:
        print(f"{r.suite}: {len(r.checks)} checks in {r.duration:.2f}s",
              file=sys.stderr)
    return 0 if all(r.passed for r in reports) else 1


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH",
                        help="key=value defaults; flags override")
    common.add_argument("--out", metavar="PATH",
                        help="write output here instead of stdout")
    ap = argparse.ArgumentParser(
        prog="qpbw",
        description="Exact PBW transition / intertwiner tables and their "
                    "verification suites (types A2, C2, G2).")
    sub = ap.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("compute", parents=[common],
                        help="emit coefficient records")
    pc.add_argument("--algebra", choices=ALGEBRAS)
    pc.add_argument("--kind", choices=KINDS)
    pc.add_argument("--in", dest="inp", metavar="TUPLE",
                    help="comma-separated exponent tuple, e.g. 3,1,4")
    pc.add_argument("--max-height", dest="max_height", type=int,
                    help="index-sum bound for enumerated inputs")
    pc.add_argument("--format", dest="fmt", choices=("json", "csv"))

    pv = sub.add_parser("verify", parents=[common],
                        help="run one verification suite")
    pv.add_argument("suite", choices=SUITES)
    pv.add_argument("--algebra", choices=ALGEBRAS)
    pv.add_argument("--max-height", dest="max_height", type=int)
    pv.add_argument("--max-occ", dest="max_occ", type=int)
    pv.add_argument("--mode", choices=("exact", "sampled"))

    sub.add_parser("selftest", parents=[common],
                   help="fast pass over every suite")
    return ap


def main(argv=None):
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        _apply_config(args)
        workers = _workers_from_env()
        if args.command == "compute":
            if args.algebra is None or args.kind is None:
                raise UsageError("compute needs --algebra and --kind")
            inp = _parse_tuple(args.inp) if args.inp is not None else None
            records = compute_records(args.algebra, args.kind, inp,
                                      args.max_height)
            fmt = args.fmt or "json"
            lines = records_to_csv(records) if fmt == "csv" \
                else [record_to_json(r) for r in records]
            _emit(lines, args.out)
            print(f"{len(records)} records", file=sys.stderr)
            return 0
        if args.command == "verify":
            algebras = (args.algebra,) if args.algebra else ALGEBRAS
            report = run_suite(args.suite, algebras, args.max_height,
                               args.max_occ, args.mode, workers)
            return _report_exit([report], args.out)
        return _report_exit(verify.selftest(), args.out)
    except UsageError as e:
        print(f"qpbw: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"qpbw: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
