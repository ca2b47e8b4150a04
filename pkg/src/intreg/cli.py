"""Command-line interface.

Exit codes: 0 success, 2 data or usage error, 3 solver error. Results go to
stdout and diagnostics to stderr. The default output format comes from
``INTREG_FORMAT`` when ``--format`` is not given.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys

import numpy as np

from . import __version__
from .datasets import bundled, bundled_ids, read_csv, write_csv
from .exceptions import DataError, IntervalRegressionError, SolverError
from .interval import summarize
from .metrics import METRIC_NAMES, dataset_metrics
from .regressors import METHODS, TABLE_ORDER, fit, method_id, predict, symbol
from .surface import sweep

FORMATS = ("table", "csv", "json")
METRIC_LABELS = {"rmse_lo": "RMSE^-", "rmse_hi": "RMSE^+", "mae_lo": "MAE^-",
                 "mae_hi": "MAE^+", "mmre": "MMRE"}
# Diagnostics shown in table mode, in this order.
TABLE_DIAGNOSTICS = ("coherence_violations", "path", "fallback_reason", "nnls_applied",
                     "box_cox", "box_cox_lambda", "box_cox_shift", "precheck_min_range",
                     "tau", "underdetermined", "used_minimum_norm")


class UsageError(DataError):
    pass


def _num(v, digits=3):
    """Round for display: ``0.430`` prints as ``0.43``."""
    return np.format_float_positional(round(float(v), digits) + 0.0, trim="-")


def _csv_line(fields):
    return ",".join(str(f) for f in fields) + "\n"


def _jsonable(v):
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, np.generic):
        return v.item()
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _dump(obj):
    return json.dumps(_jsonable(obj), indent=2) + "\n"


def _load(args):
    if args.bundled is not None:
        return bundled(args.bundled).data, args.bundled.lower()
    try:
        return read_csv(args.data, target=args.target), args.data
    except OSError as exc:
        raise DataError(f"cannot read {args.data}: {exc.strerror or exc}") from None


def _warn(model, out):
    d = model.diagnostics
    if d.get("underdetermined"):
        out.write(f"warning: {model.method} fit is underdetermined; minimum-norm solution used\n")
    if d.get("coherence_violations"):
        out.write(f"warning: {model.method} has {d['coherence_violations']} incoherent in-sample predictions\n")


def cmd_fit(args, out, err):
    ds, label = _load(args)
    model = fit(args.method, ds)
    _warn(model, err)
    if args.format == "json":
        out.write(_dump({"dataset": label, **model.to_dict()}))
    elif args.format == "csv":
        out.write(_csv_line(["coefficient", "symbol", "value"]))
        for k, v in model.coefficients.items():
            out.write(_csv_line([k, symbol(k), repr(float(v))]))
    else:
        out.write(f"method: {model.method}\n")
        out.write(f"dataset: {label} (n={ds.n}, p={ds.p})\n")
        out.write("coefficients:\n")
        for k, v in model.coefficients.items():
            out.write(f"  {symbol(k)} = {_num(v)}\n")
        out.write("diagnostics:\n")
        for key in TABLE_DIAGNOSTICS:
            if key not in model.diagnostics or model.diagnostics[key] is None:
                continue
            v = model.diagnostics[key]
            v = _num(v, 6) if isinstance(v, float) else v
            out.write(f"  {key}: {v}\n")
    return 0


def _split(n, fraction, seed):
    if not 0 < fraction < 1:
        raise UsageError(f"--holdout must lie strictly between 0 and 1, got {fraction}")
    n_test = int(round(fraction * n))
    if n_test < 1 or n_test >= n:
        raise UsageError(f"--holdout {fraction} leaves an empty train or test set for n={n}")
    order = np.random.default_rng(seed).permutation(n)
    return np.sort(order[n_test:]), np.sort(order[:n_test])


def cmd_evaluate(args, out, err):
    ds, label = _load(args)
    split = None
    if args.holdout is not None:
        train, test = _split(ds.n, args.holdout, args.seed)
        train_ds, test_ds = ds.subset(train), ds.subset(test)
        split = {"holdout": args.holdout, "seed": args.seed,
                 "train_rows": train.tolist(), "test_rows": test.tolist()}
    else:
        train_ds = test_ds = ds
    model = fit(args.method, train_ds)
    _warn(model, err)
    p = predict(model, test_ds)
    rep = dataset_metrics(test_ds, np.column_stack([p.lo, p.hi]))
    if args.format == "json":
        out.write(_dump({"dataset": label, "method": model.method, "split": split,
                         "metrics": rep.as_dict()}))
    elif args.format == "csv":
        fields = list(rep.as_dict())
        out.write(_csv_line(["method", *fields]))
        out.write(_csv_line([model.method, *(repr(v) for v in rep.as_dict().values())]))
    else:
        where = "in-sample" if split is None else (
            f"holdout {args.holdout} (seed {args.seed}, {len(split['test_rows'])} test rows)")
        out.write(f"method: {model.method}\ndataset: {label} ({where})\n")
        for m in METRIC_NAMES:
            out.write(f"  {METRIC_LABELS[m]} = {_num(getattr(rep, m))}\n")
        out.write(f"  mmre_excluded: {rep.mmre_excluded}\n")
        out.write(f"  coherence_violations: {rep.coherence_violations}\n")
    return 0


def _methods(args):
    if args.methods:
        return [method_id(m) for m in args.methods.split(",") if m.strip()]
    return list(TABLE_ORDER)


def cmd_compare(args, out, err):
    ds, label = _load(args)
    rows = []
    for m in _methods(args):
        model = fit(m, ds)
        p = predict(model, ds)
        rows.append((m, dataset_metrics(ds, np.column_stack([p.lo, p.hi]))))
    # Minima are judged on the 3-decimal display values so printed ties share the marker.
    best = {k: min(round(getattr(r, k), 3) for _, r in rows) for k in METRIC_NAMES}
    marks = [[k for k in METRIC_NAMES if round(getattr(r, k), 3) == best[k]] for _, r in rows]
    if args.format == "json":
        out.write(_dump({"dataset": label, "rows": [
            {"method": m, "metrics": r.as_dict(), "best": mk} for (m, r), mk in zip(rows, marks)]}))
    elif args.format == "csv":
        out.write(_csv_line(["method", *METRIC_NAMES, "coherence_violations", "best"]))
        for (m, r), mk in zip(rows, marks):
            out.write(_csv_line([m, *(repr(getattr(r, k)) for k in METRIC_NAMES),
                                 r.coherence_violations, ";".join(mk)]))
    else:
        out.write(f"dataset: {label}\n")
        out.write(f"{'method':<8}" + "".join(f"{METRIC_LABELS[k]:>10}" for k in METRIC_NAMES)
                  + f"{'flipped':>9}\n")
        for (m, r), mk in zip(rows, marks):
            cells = "".join(f"{getattr(r, k):>9.3f}{'*' if k in mk else ' '}" for k in METRIC_NAMES)
            out.write(f"{m:<8}{cells}{r.coherence_violations:>9}\n")
        out.write("* marks the per-column minimum\n")
    return 0


def _grid(text):
    try:
        c, w = text.lower().split("x")
        return int(c), int(w)
    except ValueError:
        raise UsageError(f"--grid must look like 20x20, got {text!r}") from None


def _range(text, name):
    try:
        lo, hi = (float(v) for v in text.split(":"))
    except ValueError:
        raise UsageError(f"--{name} must look like MIN:MAX, got {text!r}") from None
    return lo, hi


def cmd_surface(args, out, err):
    ds, label = _load(args)
    model = fit(args.method, ds)
    _warn(model, err)
    sc, sw = _grid(args.grid)
    regressor = args.regressor or ds.names[0]
    center = width = None
    j = ds.names.index(regressor) if regressor in ds.names else None
    if j is not None:
        c_obs = (ds.x_lo[:, j] + ds.x_hi[:, j]) / 2
        w_obs = ds.x_hi[:, j] - ds.x_lo[:, j]
        center = (*(_range(args.center, "center") if args.center else (c_obs.min(), c_obs.max())), sc)
        width = (*(_range(args.width, "width") if args.width else (w_obs.min(), w_obs.max())), sw)
    grid = sweep(model, ds, regressor, center=center, width=width)
    out.write(grid.to_json() + "\n" if args.format == "json" else grid.to_csv())
    return 0


def cmd_datasets(args, out, err):
    if args.action == "export":
        if not args.id or not args.path:
            raise UsageError("usage: datasets export ID PATH")
        ds = bundled(args.id).data
        try:
            write_csv(ds, args.path)
        except OSError as exc:
            raise DataError(f"cannot write {args.path}: {exc.strerror or exc}") from None
        err.write(f"wrote {args.id.lower()} ({ds.n} rows) to {args.path}\n")
        return 0
    recs = []
    for i in bundled_ids():
        b = bundled(i)
        s = summarize(b.data)
        cols = {name: s[name] for name in (*b.data.names, b.data.target)}
        recs.append((b, cols))
    if args.format == "json":
        out.write(_dump([{"id": b.id, "n": b.data.n, "p": b.data.p, "note": b.note,
                          "summary": {k: {"mean_center": c.mean_center, "sd_center": c.sd_center,
                                          "mean_range": c.mean_range, "sd_range": c.sd_range}
                                      for k, c in cols.items()}} for b, cols in recs]))
        return 0
    stats = ("mean_center", "sd_center", "mean_range", "sd_range")
    if args.format == "csv":
        out.write(_csv_line(["id", "n", "p", "variable", *stats]))
        for b, cols in recs:
            for k, c in cols.items():
                out.write(_csv_line([b.id, b.data.n, b.data.p, k, *(repr(getattr(c, s)) for s in stats)]))
        return 0
    heads = ("μ_c", "σ_c", "μ_w", "σ_w")
    out.write(f"{'id':<8}{'n':>3}{'p':>3}  " + "  ".join(
        f"{v + ' ' + h:>8}" for v in ("X", "Y") for h in heads) + "\n")
    for b, cols in recs:
        # Bundled sets have a single regressor.
        xs, ys = cols[b.data.names[0]], cols[b.data.target]
        cells = "  ".join(f"{getattr(c, s):>8.2f}" for c in (xs, ys) for s in stats)
        out.write(f"{b.id:<8}{b.data.n:>3}{b.data.p:>3}  {cells}\n")
    return 0


def _default_format():
    env = os.environ.get("INTREG_FORMAT", "table").strip().lower() or "table"
    return env


def build_parser():
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=FORMATS, default=None,
                     help="output format (default: $INTREG_FORMAT or table)")

    src = argparse.ArgumentParser(add_help=False)
    g = src.add_mutually_exclusive_group(required=True)
    g.add_argument("--data", metavar="PATH", help="interval CSV file")
    g.add_argument("--bundled", metavar="ID", help="bundled dataset id, e.g. set-1")
    src.add_argument("--target", default="y", help="regressand column name (default: y)")

    meth = argparse.ArgumentParser(add_help=False)
    meth.add_argument("--method", required=True, type=str.strip,
                      help="one of " + ", ".join(METHODS) + " (case-insensitive)")

    p = argparse.ArgumentParser(prog="intreg", description="Linear regression for interval-valued data.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("fit", parents=[meth, src, fmt], help="fit a model and print coefficients")
    s.set_defaults(func=cmd_fit)

    s = sub.add_parser("evaluate", parents=[meth, src, fmt], help="fitness metrics")
    s.add_argument("--holdout", type=float, default=None, metavar="FRACTION",
                   help="evaluate on a random held-out fraction instead of in-sample")
    s.add_argument("--seed", type=int, default=0, help="seed for --holdout (default: 0)")
    s.set_defaults(func=cmd_evaluate)

    s = sub.add_parser("compare", parents=[src, fmt], help="metrics for several methods")
    s.add_argument("--all-methods", action="store_true", help="every method in table order (default)")
    s.add_argument("--methods", default=None, help="comma-separated subset instead")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("surface", parents=[meth, src, fmt], help="prediction surface as CSV")
    s.add_argument("--regressor", default=None, help="regressor to sweep (default: first)")
    s.add_argument("--grid", default="20x20", help="CENTERSxWIDTHS steps (default: 20x20)")
    s.add_argument("--center", default=None, metavar="MIN:MAX", help="center range")
    s.add_argument("--width", default=None, metavar="MIN:MAX", help="width range")
    s.set_defaults(func=cmd_surface)

    s = sub.add_parser("datasets", parents=[fmt], help="list or export bundled datasets")
    s.add_argument("action", choices=("list", "export"))
    s.add_argument("id", nargs="?")
    s.add_argument("path", nargs="?")
    s.set_defaults(func=cmd_datasets)
    return p


def main(argv=None, stdout=None, stderr=None):
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.format is None:
        args.format = _default_format()
        if args.format not in FORMATS:
            err.write(f"error: INTREG_FORMAT must be one of {', '.join(FORMATS)}, got {args.format!r}\n")
            return 2
    buf = io.StringIO()
    try:
        code = args.func(args, buf, err)
    except DataError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2
    except SolverError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return 3
    except IntervalRegressionError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2
    # Output is only written once the command has fully succeeded.
    out.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
