"""Command-line front end: sample, exact, rmt, verify, rsk, hammersley.

Model specs come in as JSON files; rationals travel as decimal-free "p/q"
strings and floats print with 17 significant digits, so a fixed config and
seed reproduce byte-identical output.  Exit status: 0 on success / PASS,
1 on a FAIL verdict, 2 on configuration errors (reported as a JSON object).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .core import (
    DistributionTable,
    ModelSpec,
    format_rational,
    matrix_from_rows_top_to_bottom,
)
from .harness import hammersley_check, verify_model
from .lpp import mc_distribution, sample_batch
from .rmt import model_rmt_distribution, rmt_method
from .rsk import rsk
from .symfunc import exact_distribution

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# Deterministic serialization
# ---------------------------------------------------------------------------


def dump_json(obj, indent: int = 0) -> str:
    """JSON with Fractions as "p/q" strings and floats at 17 significant digits."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{inner}{json.dumps(str(k))}: {dump_json(v, indent + 1)}'
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{inner}{dump_json(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    if isinstance(obj, Fraction):
        return json.dumps(format_rational(obj))
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        if obj != obj or obj in (float("inf"), float("-inf")):
            return json.dumps(str(obj))
        return format(obj, ".17g")
    if isinstance(obj, (int, str)):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _flatten_csv_value(v) -> str:
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, float):
        return format(v, ".17g")
    if isinstance(v, bool) or v is None:
        return "" if v is None else str(v).lower()
    return str(v)


def rows_to_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    header = list(rows[0].keys())
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_flatten_csv_value(row.get(k)) for k in header))
    return "\n".join(lines) + "\n"


class ConfigError(Exception):
    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


def _load_model(path: str) -> ModelSpec:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"model file not found: {path}", field="model")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed model JSON: {exc}", field="model")
    try:
        return ModelSpec.from_json_dict(data)
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc), field="model")


def _seed_from(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("LPP_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ConfigError(f"LPP_SEED is not an integer: {env!r}", field="seed")
    return 0


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _distribution_payload(model: ModelSpec, table: DistributionTable, extra: dict) -> dict:
    payload = {"schema": SCHEMA_VERSION, "model": model.to_json_dict()}
    payload.update(extra)
    payload["distribution"] = table.to_rows()
    return payload


def _matrix_payload(matrix) -> dict:
    return {
        "n_rows": matrix.n_rows,
        "n_cols": matrix.n_cols,
        "row_labels_top_to_bottom": [f"i={i}" for i in range(matrix.n_rows, 0, -1)],
        "rows_top_to_bottom": matrix.rows_top_to_bottom(),
    }


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_sample(args) -> int:
    model = _load_model(args.model)
    seed = _seed_from(args)
    batch = sample_batch(model, args.count, seed)
    payload = {
        "schema": SCHEMA_VERSION,
        "model": model.to_json_dict(),
        "seed": seed,
        "count": args.count,
        "matrices": [_matrix_payload(m) for m in batch.matrices],
    }
    _emit(dump_json(payload), args.out)
    return 0


def _cmd_exact(args) -> int:
    model = _load_model(args.model)
    probs = {l: exact_distribution(model, l) for l in range(args.lmax + 1)}
    table = DistributionTable(probs, exact=True)
    if args.format == "csv":
        _emit(rows_to_csv(table.to_rows()), args.out)
    else:
        _emit(dump_json(_distribution_payload(model, table, {"kind": "exact"})), args.out)
    return 0


def _cmd_rmt(args) -> int:
    model = _load_model(args.model)
    value = model_rmt_distribution(model, args.l, args.tol)
    exact = isinstance(value, Fraction)
    payload = {
        "schema": SCHEMA_VERSION,
        "model": model.to_json_dict(),
        "l": args.l,
        "method": rmt_method(model),
        "value": value if exact else float(value),
        "exactness": "rational" if exact else "float",
    }
    if args.format == "csv":
        _emit(rows_to_csv([{k: payload[k] for k in ("l", "method", "value", "exactness")}]),
              args.out)
    else:
        _emit(dump_json(payload), args.out)
    return 0


def _cmd_verify(args) -> int:
    model = _load_model(args.model)
    seed = _seed_from(args)
    report = verify_model(model, args.lmax, args.samples, seed,
                          tol=args.tol, z_max=args.zmax, threads=args.threads)
    if args.format == "csv":
        _emit(rows_to_csv([r.to_json_dict() for r in report.rows]), args.out)
    else:
        _emit(dump_json(report.to_json_dict()), args.out)
    return 0 if report.passed() else 1


def _cmd_rsk(args) -> int:
    try:
        with open(args.matrix, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"matrix file not found: {args.matrix}", field="matrix")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed matrix JSON: {exc}", field="matrix")
    if "rows_top_to_bottom" not in data:
        raise ConfigError("matrix JSON is missing required field 'rows_top_to_bottom'",
                          field="rows_top_to_bottom")
    matrix = matrix_from_rows_top_to_bottom(data["rows_top_to_bottom"])
    pair = rsk(matrix)
    payload = {
        "schema": SCHEMA_VERSION,
        "matrix": _matrix_payload(matrix),
        "shape": list(pair.p.shape.parts),
        "p_rows": [list(r) for r in pair.p.rows],
        "q_rows": [list(r) for r in pair.q.rows],
    }
    _emit(dump_json(payload), args.out)
    return 0


def _cmd_hammersley(args) -> int:
    seed = _seed_from(args)
    report = hammersley_check(args.lam, args.lmax, args.samples, seed, z_max=args.zmax)
    if args.format == "csv":
        _emit(rows_to_csv([r.to_json_dict() for r in report.rows]), args.out)
    else:
        _emit(dump_json(report.to_json_dict()), args.out)
    return 0 if report.passed() else 1


def _cmd_mc(args) -> int:
    model = _load_model(args.model)
    seed = _seed_from(args)
    table = mc_distribution(model, args.lmax, args.samples, seed, args.threads)
    if args.format == "csv":
        _emit(rows_to_csv(table.to_rows()), args.out)
    else:
        payload = _distribution_payload(model, table,
                                        {"kind": "mc", "seed": seed, "samples": args.samples})
        _emit(dump_json(payload), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symlpp",
        description="Symmetrized last-passage percolation: exact laws, matrix "
                    "averages, and Monte Carlo cross-checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, model=True, seed=False):
        if model:
            p.add_argument("--model", required=True, help="model spec JSON file")
        if seed:
            p.add_argument("--seed", type=int, default=None,
                           help="RNG seed (fallback: env LPP_SEED, then 0)")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("sample", help="draw matrices from a model")
    common(p, seed=True)
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("exact", help="exact cumulative law Pr(L <= l)")
    common(p)
    p.add_argument("--lmax", type=int, required=True)
    p.set_defaults(func=_cmd_exact)

    p = sub.add_parser("rmt", help="matrix-average formula at one bound")
    common(p)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-12,
                   help="series/quadrature tolerance")
    p.set_defaults(func=_cmd_rmt)

    p = sub.add_parser("mc", help="Monte Carlo cumulative law")
    common(p, seed=True)
    p.add_argument("--lmax", type=int, required=True)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.set_defaults(func=_cmd_mc)

    p = sub.add_parser("verify", help="Monte Carlo vs exact vs matrix average")
    common(p, seed=True)
    p.add_argument("--lmax", type=int, required=True)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--zmax", type=float, default=4.0)
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("rsk", help="insertion pair of a matrix")
    p.add_argument("--matrix", required=True,
                   help="JSON file with field rows_top_to_bottom")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("json",), default="json")
    p.set_defaults(func=_cmd_rsk)

    p = sub.add_parser("hammersley", help="Poisson chain-length law vs Toeplitz formula")
    p.add_argument("--lam", type=float, required=True)
    p.add_argument("--lmax", type=int, required=True)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--zmax", type=float, default=4.0)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_hammersley)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        error = {"schema": SCHEMA_VERSION,
                 "error": {"message": str(exc), "field": exc.field}}
        sys.stdout.write(dump_json(error) + "\n")
        return 2
    except (ValueError, TypeError) as exc:
        error = {"schema": SCHEMA_VERSION, "error": {"message": str(exc), "field": None}}
        sys.stdout.write(dump_json(error) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
