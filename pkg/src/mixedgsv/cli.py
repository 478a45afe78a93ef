"""Command-line interface: ``mixedgsv <command> ...``.

Every command prints one JSON document (sorted keys) and exits with

* 0 on success,
* 1 when ``selftest`` finds a failing check,
* 2 on a parse error,
* 3 on a numerical failure,
* 4 for requests outside the supported dimension.
"""
import argparse
import json
import sys
from dataclasses import dataclass, asdict
from importlib import resources

import numpy as np

from . import __version__
from .errors import (CriticalPointError, MixedGSVError, ParseError,
                     UnsupportedDimensionError)
from .expr_io import format_poly, parse, parse_field
from .frames import c_margin, four_way_dependence, oka_alpha, r_margin
from .geometry import enumerate_components, is_complex_tangent, tangency
from .homotopy_index import mixed_gsv_index
from .mixed_poly import evaluate, jet, nabla_gh, wirtinger_dz, wirtinger_dzbar
from .polar import (NotPolar, angular_field, infer_weights, is_strongly_polar,
                    radial_field)

EXIT_OK, EXIT_SELFTEST, EXIT_PARSE, EXIT_NUMERIC, EXIT_UNSUPPORTED = 0, 1, 2, 3, 4


@dataclass(frozen=True)
class RunConfig:
    epsilon: float = 0.5
    tol: float = 1e-8
    seed: int = 0
    step: float = None
    trials: int = 24
    max_steps: int = 200000
    rational_mode: bool = False

    def __post_init__(self):
        if self.epsilon <= 0 or self.tol <= 0 or self.trials <= 0 or self.max_steps <= 0:
            raise ValueError("epsilon, tol, trials and max-steps must be positive")
        if self.step is not None and self.step <= 0:
            raise ValueError("step must be positive")

    def provenance(self):
        d = asdict(self)
        d["step"] = self.step if self.step is not None else 1e-2 * self.epsilon
        d["version"] = __version__
        return d


class UsageError(MixedGSVError, ValueError):
    """Bad command-line input that is not a grammar error."""


def _cx(z):
    z = complex(z)
    return [z.real, z.imag]


def _cxv(v):
    return [_cx(x) for x in np.ravel(v)]


def parse_point(text, nvars):
    """Comma-separated complex constants such as ``0.5+1i, -2``."""
    parts = text.split(",")
    if len(parts) != nvars:
        raise UsageError(f"point has {len(parts)} coordinates, f has {nvars}")
    coords = []
    for part in parts:
        c = parse(part, nvars=1)
        if c.degree > 0:
            raise UsageError(f"point coordinate {part.strip()!r} is not a constant")
        coords.append(complex(evaluate(c, [0j])))
    return np.array(coords)


def resolve_field(text, f):
    """``radial``, ``angular`` or ``';'``-separated component expressions."""
    key = text.strip().lower()
    if key in ("radial", "angular"):
        w = infer_weights(f)
        if isinstance(w, NotPolar):
            raise UsageError(f"the {key} field needs polar weights: {w.reason}")
        return (radial_field if key == "radial" else angular_field)(w)
    return parse_field(text, nvars=f.nvars)


def _weights_json(f):
    w = infer_weights(f)
    if isinstance(w, NotPolar):
        return {"polar": False, "reason": w.reason}, None
    d = {"polar": True, **w.to_dict(), "strongly_polar": is_strongly_polar(w)}
    return d, w


def cmd_analyze(args, cfg):
    f = parse(args.expr, nvars=args.nvars, exact=cfg.rational_mode)
    weights, w = _weights_json(f)
    return {
        "canonical": format_poly(f),
        "nvars": f.nvars,
        "terms": len(f.terms),
        "degree": f.degree,
        "holomorphic": f.is_holomorphic(),
        "df": [format_poly(wirtinger_dz(f, j)) for j in range(1, f.nvars + 1)],
        "dbarf": [format_poly(wirtinger_dzbar(f, j)) for j in range(1, f.nvars + 1)],
        "weights": weights,
        "strongly_polar": bool(w is not None and is_strongly_polar(w)),
    }


def cmd_oka(args, cfg):
    f = parse(args.expr, nvars=args.nvars).to_float()
    z = parse_point(args.point, f.nvars)
    val, df, dbf = jet(f, z)
    ng, nh = nabla_gh(f, z)
    out = {"point": _cxv(z), "f": _cx(val), "df": _cxv(df), "dbarf": _cxv(dbf),
           "nabla_g": _cxv(ng), "nabla_h": _cxv(nh)}
    try:
        alpha = oka_alpha(f, z, cfg.tol)
    except CriticalPointError:
        out.update({"critical_point": True, "alpha": None, "four_way": None,
                    "real_dependent": True})
        return out
    fw = four_way_dependence(f, z, cfg.tol)
    out.update({
        "critical_point": False,
        "alpha": None if alpha is None else _cx(alpha),
        "real_dependent": bool(r_margin(ng, nh) < cfg.tol),
        "real_margin": r_margin(ng, nh),
        "complex_margin_df_dbarf": c_margin(np.conj(df), dbf),
        "four_way": list(fw),
        "oka_agreement": (alpha is not None) == bool(r_margin(ng, nh) < cfg.tol),
        "four_way_agreement": len(set(fw)) == 1,
    })
    if args.field:
        v = resolve_field(args.field, f)(z)
        out["field"] = _cxv(v)
        out["gradient_field_margin"] = c_margin(ng, v)
        out["gradient_field_dependent"] = bool(c_margin(ng, v) < cfg.tol)
    return out


def cmd_tangent(args, cfg):
    f = parse(args.expr, nvars=args.nvars).to_float()
    z = parse_point(args.point, f.nvars)
    v = resolve_field(args.field, f)(z)
    verdict = tangency(f, z, v, tol=cfg.tol, on_tol=max(cfg.tol, 1e-9))
    out = {"point": _cxv(z), "field": _cxv(v), "tangent": bool(verdict)}
    if verdict:
        out.update({"c": verdict.c, "d": verdict.d, "residual": verdict.residual,
                    "mirror_error": verdict.mirror_error,
                    "complex_tangent": is_complex_tangent(f, z, v, tol=cfg.tol,
                                                          on_tol=max(cfg.tol, 1e-9))})
    else:
        out.update({"defect_g": verdict.defect_g, "defect_h": verdict.defect_h,
                    "complex_tangent": False})
    return out


def _require_plane(f):
    if f.nvars != 2:
        raise UnsupportedDimensionError(
            f"this command needs n = 2 (got n = {f.nvars}); link tracing and the "
            "winding-based index are only implemented for plane curves")


def cmd_trace(args, cfg):
    f = parse(args.expr, nvars=args.nvars).to_float()
    _require_plane(f)
    loops = enumerate_components(f, cfg.epsilon, trials=cfg.trials, step=cfg.step,
                                 seed=cfg.seed, max_steps=cfg.max_steps)
    return {
        "components": len(loops),
        "loops": [{"closed": L.closed, "orientation_sign": L.orientation_sign,
                   "diagnostics": L.diagnostics,
                   "points": L.real_rows().tolist()} for L in loops],
    }


def cmd_index(args, cfg):
    f = parse(args.expr, nvars=args.nvars).to_float()
    _require_plane(f)
    v = resolve_field(args.field, f)
    rep = mixed_gsv_index(f, v, cfg.epsilon, trials=cfg.trials, step=cfg.step,
                          seed=cfg.seed, max_steps=cfg.max_steps)
    return rep.to_dict()


def cmd_selftest(args, cfg):
    from .selftest import run_selftest

    rows = run_selftest(tol=cfg.tol, seed=cfg.seed, epsilon=cfg.epsilon)
    width = max(len(r[0]) for r in rows)
    for name, ok, detail in rows:
        print(f"{name:<{width}}  {'PASS' if ok else 'FAIL'}  {detail}", file=sys.stderr)
    return {"checks": [{"name": n, "passed": bool(ok), "detail": d} for n, ok, d in rows],
            "all_passed": all(r[1] for r in rows)}


COMMANDS = {"analyze": cmd_analyze, "oka": cmd_oka, "tangent": cmd_tangent,
            "trace": cmd_trace, "index": cmd_index, "selftest": cmd_selftest}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--epsilon", type=float, default=0.5, help="link radius")
    common.add_argument("--tol", type=float, default=1e-8,
                        help="dependence and tangency tolerance")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--step", type=float, default=None,
                        help="tracing step (default 0.01*epsilon)")
    common.add_argument("--trials", type=int, default=24,
                        help="random starts when enumerating link components")
    common.add_argument("--max-steps", type=int, default=200000)
    common.add_argument("--rational", action="store_true",
                        help="keep coefficients exact (affects analyze output)")
    common.add_argument("--json-out", metavar="PATH", default=None,
                        help="also write the JSON report to PATH")

    parser = argparse.ArgumentParser(
        prog="mixedgsv",
        description="Mixed polynomials, Oka-type dependence tests, link tracing "
                    "and the mixed GSV index.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def with_expr(name, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("expr", help="mixed polynomial, e.g. 'z1^2*conj(z1) + z2^3'")
        p.add_argument("--nvars", type=int, default=None)
        return p

    with_expr("analyze", "canonical form, Wirtinger derivatives, polar weights")
    p = with_expr("oka", "Oka criterion and four-way dependence at a point")
    p.add_argument("--point", required=True, help="e.g. '0.5+1i,2'")
    p.add_argument("--field", default=None, help="optional field for a ∇g/v dependence test")
    p = with_expr("tangent", "tangency of a vector field at a point of V_f")
    p.add_argument("--point", required=True)
    p.add_argument("--field", default="radial",
                   help="'radial', 'angular' or ';'-separated components")
    with_expr("trace", "trace the link components (n = 2)")
    p = with_expr("index", "mixed GSV index of a tangent field (n = 2)")
    p.add_argument("--field", default="radial")
    sub.add_parser("selftest", parents=[common], help="run the built-in checks")
    return parser


def report_schema():
    """The JSON schema that every command report conforms to."""
    text = resources.files("mixedgsv").joinpath("data/report.schema.json").read_text("utf-8")
    return json.loads(text)


def _emit(report, path):
    text = json.dumps(report, sort_keys=True, indent=2, allow_nan=False)
    print(text)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(epsilon=args.epsilon, tol=args.tol, seed=args.seed, step=args.step,
                        trials=args.trials, max_steps=args.max_steps,
                        rational_mode=args.rational)
    except ValueError as err:
        parser.error(str(err))
    report = {"command": args.command, "provenance": cfg.provenance()}
    code = EXIT_OK
    try:
        report["result"] = COMMANDS[args.command](args, cfg)
        report["ok"] = True
        if args.command == "selftest" and not report["result"]["all_passed"]:
            code = EXIT_SELFTEST
            report["ok"] = False
    except ParseError as err:
        code = EXIT_PARSE
        report.update(ok=False, error={"kind": "parse", "message": err.message,
                                       "line": err.line, "column": err.column})
    except UnsupportedDimensionError as err:
        code = EXIT_UNSUPPORTED
        report.update(ok=False, error={"kind": "unsupported", "message": str(err)})
    except (MixedGSVError, ValueError) as err:
        code = EXIT_NUMERIC
        report.update(ok=False, error={"kind": "numeric", "exception": type(err).__name__,
                                       "message": str(err)})
    if not report["ok"] and "error" in report:
        print(f"mixedgsv: {report['error']['message']}", file=sys.stderr)
    _emit(report, args.json_out)
    return code


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
