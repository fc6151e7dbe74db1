"""``landen-kit``: the m_tilde(m, p) table, single transforms, and verification suites.

Exit codes: 0 success, 1 verification failure, 2 domain error, 3 parity error,
4 pole, 5 usage error.
"""
from __future__ import annotations

import argparse
import csv
import enum
import io
import json
import math
import os
import sys
from typing import Any, Optional, Sequence

from . import complex_landen as cl
from . import gauss, landen, products_zeta as pz, suites
from .core import jacobi_minor, jacobi_real, jacobi_zeta
from .errors import (
    ApplicabilityError,
    DomainError,
    LandenKitError,
    ParityError,
    PoleError,
    RangeError,
    UnsupportedOrder,
)

EXIT_FAIL, EXIT_DOMAIN, EXIT_PARITY, EXIT_POLE, EXIT_USAGE = 1, 2, 3, 4, 5

TABLE1_M = (0.0, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999, 0.9999, 0.99999, 1.0)
DEFAULT_TRANSFORM_TOL = {"landen": 1e-10, "gauss": 1e-9, "complex": 1e-9}
SUITE_NAMES = (*suites.SUITES, "all")
FAMILY_KINDS = {
    "landen": ("dn", "cn", "sn", "zeta", *(k.value for k in pz.ProductKind)),
    "gauss": ("dc", "nc", "sc"),
    "complex": ("dn", "cn", "sn"),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# formatting


def fmt_sig4(v: float) -> str:
    """4 significant figures in compact e-notation (5.155e-3); exact 0 and 1 stay bare."""
    if v == 0.0 or v == 1.0:
        return str(int(v))
    mant, exp = f"{v:.3e}".split("e")
    return f"{mant}e{int(exp)}"


def _plain(v: Any) -> Any:
    """JSON-safe copy with enums, tuples and numpy scalars flattened."""
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, enum.Enum):
        return v.value
    if isinstance(v, (bool, str, int)) or v is None:
        return v
    if isinstance(v, complex):
        return {"re": float(v.real), "im": float(v.imag)}
    if hasattr(v, "real") and getattr(v, "imag", 0) != 0:
        return {"re": float(v.real), "im": float(v.imag)}
    return float(v)


def to_json(obj: Any) -> str:
    """Deterministic JSON with every float written to 17 significant digits."""
    floats: list[str] = []

    def mark(v):
        if isinstance(v, dict):
            return {k: mark(x) for k, x in v.items()}
        if isinstance(v, list):
            return [mark(x) for x in v]
        if isinstance(v, float):
            floats.append(f"{v:.17g}" if math.isfinite(v) else "null")
            return f"\0{len(floats) - 1}\0"
        return v

    text = json.dumps(mark(_plain(obj)), indent=2)
    for i, f in enumerate(floats):
        text = text.replace(f'"\\u0000{i}\\u0000"', f, 1)
    return text + "\n"


def to_csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([f"{v:.17g}" if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def to_table(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    cells = [list(header)] + [[fmt_sig4(v) if isinstance(v, float) else str(v) for v in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "".join("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in cells)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# table1


def table1_value(p: int, m: float) -> float:
    if m == 0.0:
        return 0.0
    if m == 1.0:
        return 1.0
    return landen.make_transform_data(p, m).modulus_tilde.m


def cmd_table1(p_max: int = 7, m_list: Sequence[float] = TABLE1_M) -> tuple[list[str], list[list[float]]]:
    if not 2 <= p_max <= 12:
        raise UsageError(f"--p must lie in 2..12 for table1, got {p_max}")
    for m in m_list:
        if not 0.0 <= m <= 1.0:
            raise UsageError(f"m values must lie in [0, 1], got {m}")
    header = ["m"] + [f"p={p}" for p in range(2, p_max + 1)]
    rows = [[float(m)] + [table1_value(p, m) for p in range(2, p_max + 1)] for m in m_list]
    return header, rows


# ---------------------------------------------------------------------------
# transform


def _landen_record(kind: str, p: int, m: float, x: float) -> dict:
    d = landen.make_transform_data(p, m)
    mt = d.modulus_tilde
    if kind in ("dn", "cn", "sn"):
        value = landen.landen_sum(kind, p, m, x, d)
        ref = getattr(jacobi_real(x, mt), kind)
    elif kind == "zeta":
        value = pz.zeta_transform(p, m, x, d)
        ref = jacobi_zeta(x, mt)
    else:
        value = pz.product_transform(kind, p, m, x, d)
        ref = pz.product_target(kind, x, mt)
    return {"value": value, "m_tilde": mt.m, "reference": ref, "residual": _rel(value, ref)}


def _gauss_record(kind: str, p: int, m: float, x: float) -> dict:
    g = gauss.make_gauss_data(p, m)
    v = gauss.gauss_sum(kind, p, m, x, g)
    ref = jacobi_minor(kind, x, g.m_tilde)
    rec = {"value": v.real, "imag": v.imag, "m_tilde": g.m_tilde.m, "reference": ref,
           "residual": _rel(v.real, ref)}
    if p == 2:
        # the quadratic Gauss formulas give sn and cn at x = (1 + k)u directly
        u = x / (1 + math.sqrt(m))
        _, _, (dn_c, cn_c, sn_c) = gauss.classical_gauss(u, m)
        classical = {"dc": dn_c / cn_c, "nc": 1 / cn_c, "sc": sn_c / cn_c}[kind]
        rec["classical"] = classical
        rec["classical_residual"] = _rel(v.real, classical)
    return rec


def _complex_record(kind: str, p: int, m: float, x: float) -> dict:
    d = cl.make_complex_shift_data(p, m)
    v = cl.complex_landen_sum(kind, p, m, x, d)
    checks = cl.consistency_residuals(d, x)
    dual = abs(d.m_tilde - d.m_tilde_dual) / max(1.0, abs(d.m_tilde))
    return {"value": v, "m_tilde": d.m_tilde, "m_tilde_dual": d.m_tilde_dual,
            "residual": max(dual, *checks.values())}


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(a), abs(b))


def cmd_transform(kind: str, family: str, p: int, m: float, x: float, tol: Optional[float] = None) -> dict:
    if family not in FAMILY_KINDS:
        raise UsageError(f"--family must be one of {', '.join(FAMILY_KINDS)}")
    if kind not in FAMILY_KINDS[family]:
        raise UsageError(f"--kind for family {family} must be one of {', '.join(FAMILY_KINDS[family])}")
    if not 0.0 <= m <= 1.0:
        raise DomainError(f"m must lie in [0, 1], got {m}")
    if m == 1.0:
        raise DomainError("m = 1 is outside the domain: K(1) diverges, so the shift lattice is undefined")
    rec = {"landen": _landen_record, "gauss": _gauss_record, "complex": _complex_record}[family](kind, p, m, x)
    tol = tol if tol is not None else DEFAULT_TRANSFORM_TOL[family]
    head = {"command": "transform", "family": family, "kind": kind, "p": p, "m": m, "x": x}
    worst = max(rec["residual"], rec.get("classical_residual", 0.0))
    return {**head, **rec, "tol": tol, "status": "pass" if worst < tol else "fail"}


# ---------------------------------------------------------------------------
# verify


def cmd_verify(suite: str, seed: int = 0, tol: Optional[float] = None, r: Optional[int] = None) -> dict:
    if suite not in SUITE_NAMES:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITE_NAMES)}")
    reports = suites.run_suite(suite, seed)
    if r is not None:
        reports = [rep for rep in reports if rep.params.get("r", r) == r]
    cases = []
    for rep in reports:
        if tol is not None:
            rep.tol = tol
        cases.append({"id": rep.id, "params": rep.params, "residual": rep.max_residual, "status": rep.status})
    worst = max((c["residual"] for c in cases), default=0.0)
    ok = all(c["status"] in ("pass", "skipped-pole") for c in cases)
    return {"suite": suite, "seed": seed, "cases": cases, "worst_residual": worst, "pass": ok}


# ---------------------------------------------------------------------------
# entry point


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="landen-kit", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t1 = sub.add_parser("table1", help="transformed parameter m_tilde(m, p) for p = 2..p_max")
    t1.add_argument("--p", type=int, default=7, help="largest order p (2..12)")
    t1.add_argument("--m", type=str, default=None, help="comma-separated m values")
    t1.add_argument("--format", choices=("table", "json", "csv"), default="table")
    t1.add_argument("--out")

    tr = sub.add_parser("transform", help="evaluate one transform and cross-check it")
    tr.add_argument("--family", choices=tuple(FAMILY_KINDS), default="landen")
    tr.add_argument("--kind", default="dn")
    tr.add_argument("--p", type=int, required=True)
    tr.add_argument("--m", type=float, required=True)
    tr.add_argument("--x", type=float, required=True)
    tr.add_argument("--tol", type=float)
    tr.add_argument("--format", choices=("json", "csv", "table"), default="json")
    tr.add_argument("--out")

    ve = sub.add_parser("verify", help="run a seeded verification suite")
    ve.add_argument("--suite", default="all", help=f"one of {', '.join(SUITE_NAMES)}")
    ve.add_argument("--seed", type=int, default=0)
    ve.add_argument("--tol", type=float, help="override every case tolerance")
    ve.add_argument("--r", type=int, help="restrict cyclic cases to this shift")
    ve.add_argument("--format", choices=("json", "csv", "table"), default="json")
    ve.add_argument("--out")
    return ap


def _env_tol() -> Optional[float]:
    raw = os.environ.get("LANDEN_KIT_TOL")
    if not raw:
        return None
    try:
        return float(raw)
    except ValueError as exc:
        raise UsageError(f"LANDEN_KIT_TOL must be a number, got {raw!r}") from exc


def _run(args) -> int:
    tol = args.tol if getattr(args, "tol", None) is not None else _env_tol()
    if args.command == "table1":
        m_list = _floats(args.m) if args.m else TABLE1_M
        header, rows = cmd_table1(args.p, m_list)
        if args.format == "json":
            text = to_json({"command": "table1", "p_max": args.p,
                            "rows": [dict(zip(header, r)) for r in rows]})
        elif args.format == "csv":
            text = to_csv(header, rows)
        else:
            text = to_table(header, [[f"{r[0]:g}"] + r[1:] for r in rows])
        _emit(text, args.out)
        return 0

    if args.command == "transform":
        rec = cmd_transform(args.kind, args.family, args.p, args.m, args.x, tol)
        flat = {k: v for k, v in _plain(rec).items()}
        if args.format == "json":
            text = to_json(rec)
        else:
            cols = [(k, v) for k, v in flat.items() if not isinstance(v, dict)]
            cols += [(f"{k}_{part}", v[part]) for k, v in flat.items() if isinstance(v, dict) for part in ("re", "im")]
            render = to_csv if args.format == "csv" else to_table
            text = render([c[0] for c in cols], [[c[1] for c in cols]])
        _emit(text, args.out)
        return 0 if rec["status"] == "pass" else EXIT_FAIL

    report = cmd_verify(args.suite, args.seed, tol, args.r)
    if args.format == "json":
        text = to_json(report)
    else:
        rows = [[c["id"], json.dumps(_plain(c["params"]), sort_keys=True), c["residual"], c["status"]]
                for c in report["cases"]]
        text = (to_csv if args.format == "csv" else to_table)(["id", "params", "residual", "status"], rows)
    _emit(text, args.out)
    if args.out:
        failed = [c for c in report["cases"] if c["status"] not in ("pass", "skipped-pole")]
        print(f"{args.suite}: {len(report['cases']) - len(failed)}/{len(report['cases'])} cases pass, "
              f"worst residual {report['worst_residual']:.3g}", file=sys.stderr)
        for c in failed:
            print(f"  FAIL {c['id']} {json.dumps(_plain(c['params']), sort_keys=True)} "
                  f"residual={c['residual']:.3g}", file=sys.stderr)
    return 0 if report["pass"] else EXIT_FAIL


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return _run(args)
    except (UsageError, UnsupportedOrder, ApplicabilityError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, RangeError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ParityError as exc:
        print(f"parity error: {exc}", file=sys.stderr)
        return EXIT_PARITY
    except PoleError as exc:
        print(f"pole: {exc}", file=sys.stderr)
        return EXIT_POLE
    except LandenKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
