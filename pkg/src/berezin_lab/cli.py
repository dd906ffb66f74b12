"""Command-line interface: ``berezin-lab <command> [options]``.

Commands: ``transform``, ``norms``, ``range``, ``certify`` and ``sweep-mu``.
Every option can also come from a JSON file (``--config``); flags given on the
command line win. ``--print-config`` shows the resolved configuration, which
fed back through ``--config`` reproduces the same output.

Exit codes: 0 ok, 2 configuration error, 3 numeric failure, 4 unsupported
model, 5 red-flag violation in ``certify``.
"""
import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, fields

import numpy as np

from . import __version__, engine
from .config import NumericConfig
from .errors import (
    BerezinError,
    ConfigError,
    DomainMismatch,
    LengthMismatch,
    OutOfDomain,
    ParamOutOfRange,
    UnsupportedModel,
)
from .geometry import classify_range
from .means import InterpolatedMean, MeanFamily, Orientation
from .operators import (
    CompositionSymbol,
    GeomShiftSymbol,
    MatrixOp,
    SymbolTransformOp,
    decode_matrix,
    encode_complex,
    op_from_spec,
    rank_one_z,
    realize,
    weighted_shift,
)
from .spaces import SpaceKind, SpaceModel, make_grid, required_truncation

CSV_HEADER = ["re_lambda", "im_lambda", "re_value", "im_value"]
COMMANDS = ("transform", "norms", "range", "certify", "sweep-mu")
OPS = ("matrix:<json>", "matrix:@<file>", "rank_one_z", "comp", "geom_shift", "shift:<json weights>", "spec:@<file>")

DEFAULTS = {
    "space": "hardy",
    "op": None,
    "zeta": None,
    "k": 0,
    "beta": None,
    "lambda": None,
    "mean": "geometric",
    "mu": "0,0.25,0.5,0.75,1",
    "p": "1",
    "orientation": "example",
    "grid": None,
    "rmax": 0.995,
    "seed": 42,
    "trials": 100,
    "claims": "all",
    "format": "json",
    "out": None,
    "trunc_tol": 1e-8,
    "classify": False,
    "threshold": None,
    "refine_rounds": 24,
    "starts": 5,
    "numeric": asdict(NumericConfig()),
}
GRID_DEFAULTS = {"range": "200x256"}
GRID_FALLBACK = "48x64"

EXIT_CONFIG, EXIT_NUMERIC, EXIT_UNSUPPORTED, EXIT_RED_FLAG = 2, 3, 4, 5


class TruncationTooShort(ConfigError):
    pass


# parsing ---------------------------------------------------------------------


def _complex(s, name):
    if isinstance(s, (list, tuple)) and len(s) == 2:
        return complex(float(s[0]), float(s[1]))
    if isinstance(s, (int, float, complex)) and not isinstance(s, bool):
        return complex(s)
    try:
        return complex(str(s).strip().replace(" ", "").replace("i", "j"))
    except ValueError:
        raise ConfigError(name, f"not a complex number: {s!r}") from None


def _floats(s, name):
    if isinstance(s, (list, tuple)):
        items = s
    else:
        items = [x for x in str(s).split(",") if x.strip()]
    try:
        out = [float(x) for x in items]
    except ValueError:
        raise ConfigError(name, f"expected a comma-separated list of numbers, got {s!r}") from None
    if not out:
        raise ConfigError(name, "empty list")
    return out


def parse_grid(s):
    try:
        r, a = str(s).lower().replace("×", "x").split("x")
        r, a = int(r), int(a)
    except ValueError:
        raise ConfigError("grid", f"expected RxA such as 48x64, got {s!r}") from None
    if r < 1 or a < 1:
        raise ConfigError("grid", "both grid counts must be positive")
    return r, a


def parse_space(s):
    """``hardy``, ``hardy:128``, ``bergman:256`` or ``finite:4``; size ``None`` means automatic."""
    kind, _, size = str(s).partition(":")
    try:
        kind = SpaceKind(kind.strip().lower())
    except ValueError:
        raise ConfigError("space", f"unknown space {s!r}; use hardy[:N], bergman[:N] or finite:n") from None
    if not size:
        if kind is SpaceKind.FINITE:
            raise ConfigError("space", "finite spaces need a dimension, e.g. finite:3")
        return kind, None
    try:
        return kind, int(size)
    except ValueError:
        raise ConfigError("space", f"size must be an integer, got {size!r}") from None


def parse_means(cfg):
    fams = [f.strip().lower() for f in str(cfg["mean"]).split(",") if f.strip()]
    if fams == ["all"]:
        fams = [f.value for f in MeanFamily]
    orients = ["example", "axiom"] if cfg["orientation"] == "both" else [cfg["orientation"]]
    mus = _floats(cfg["mu"], "mu")
    out = []
    for o in orients:
        for f in fams:
            try:
                fam, ori = MeanFamily(f), Orientation(o)
            except ValueError:
                raise ConfigError("mean", f"unknown family {f!r} or orientation {o!r}") from None
            for mu in mus:
                try:
                    out.append(InterpolatedMean(fam, mu, ori))
                except ParamOutOfRange as exc:
                    raise ConfigError("mu", str(exc)) from None
    return out


def parse_ps(cfg):
    ps = _floats(cfg["p"], "p")
    for p in ps:
        if not 1.0 <= p <= 8.0:
            raise ConfigError("p", f"p must lie in [1, 8], got {p}")
    return ps


def _read(path, name):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ConfigError(name, f"cannot read {path}: {exc.strerror}") from None


def _json(text, name):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(name, f"invalid JSON: {exc.msg}") from None


def _build(cfg, kind, N):
    """The operator on a space of size ``N`` (``None`` only for matrices and specs)."""
    op = cfg["op"]
    if op is None:
        raise ConfigError("op", f"missing; one of {', '.join(OPS)}")
    name, _, arg = str(op).partition(":")
    if name == "matrix":
        text = _read(arg[1:], "op") if arg.startswith("@") else arg
        m = decode_matrix(_json(text, "op"))
        return MatrixOp(SpaceModel.finite(m.shape[0]), m)
    if name == "spec":
        return op_from_spec(_json(_read(arg[1:], "op") if arg.startswith("@") else arg, "op"))
    if kind is SpaceKind.FINITE:
        raise ConfigError("space", f"operator {name!r} lives on hardy or bergman")
    space = SpaceModel(kind, N)
    if name == "rank_one_z":
        return rank_one_z(space)
    if name == "comp":
        if cfg["zeta"] is None:
            raise ConfigError("zeta", "comp needs --zeta")
        return SymbolTransformOp(space, CompositionSymbol(_complex(cfg["zeta"], "zeta"), int(cfg["k"])))
    if name == "geom_shift":
        if cfg["beta"] is None:
            raise ConfigError("beta", "geom_shift needs --beta")
        return SymbolTransformOp(space, GeomShiftSymbol(_complex(cfg["beta"], "beta")))
    if name == "shift":
        w = [_complex(v, "op") for v in _json(arg, "op")]
        if len(w) < N:
            w = w + [w[-1]] * (N - len(w))
        return weighted_shift(space, w)
    raise ConfigError("op", f"unknown operator {name!r}; one of {', '.join(OPS)}")


def _truncation_check(op, r, tol):
    """``(ok, required N)`` for the truncation term at radius ``r``."""
    if isinstance(op, (MatrixOp, SymbolTransformOp)) or not op.space.is_disc or op.exact:
        return True, op.space.size
    scale = 3.0 * max(op.norm_estimate, np.finfo(float).tiny)
    need = required_truncation(op.space, r, tol / scale, offset=1)
    return op.space.size >= need, need


def build_operator(cfg, r_check, vector_action=False):
    """Build the operator and enforce the truncation tolerance at ``r_check``.

    An explicit truncation that is too short is refused (with the required
    ``N`` in the message); an omitted one is chosen to meet the tolerance.
    ``vector_action`` realizes symbol operators, which may raise
    :class:`UnsupportedModel`.
    """
    kind, N = parse_space(cfg["space"])
    tol = float(cfg["trunc_tol"])
    if not tol > 0:
        raise ConfigError("trunc_tol", "must be positive")
    op = _build(cfg, kind, N if N is not None else 64)
    if vector_action:
        op = realize(op)
    if not op.space.is_disc or isinstance(op, SymbolTransformOp):
        return op
    ok, need = _truncation_check(op, r_check, tol)
    if ok:
        return op
    if N is not None or str(cfg["op"]).startswith("spec:"):
        raise TruncationTooShort(
            "space", f"truncation N={op.space.size} leaves a tail bound above {tol:g} at |lambda|={r_check:g}; "
                     f"use N >= {need}, a smaller --rmax or a looser --trunc-tol")
    op = _build(cfg, kind, need)
    return realize(op) if vector_action else op


def _lambdas(cfg, op):
    raw = cfg["lambda"]
    if raw is None:
        raise ConfigError("lambda", "missing; pass --lambda (repeatable or comma-separated)")
    vals = []
    for it in raw if isinstance(raw, list) else [raw]:
        if isinstance(it, list):  # [re, im] from a config file
            vals.append(it)
        else:
            vals.extend(x for x in str(it).split(",") if x.strip())
    if not op.space.is_disc:
        try:
            idx = [int(str(v)) for v in vals]
        except ValueError:
            raise ConfigError("lambda", "finite spaces take integer indices") from None
        for i in idx:
            if not 0 <= i < op.space.size:
                raise ConfigError("lambda", f"index {i} outside 0..{op.space.size - 1}")
        return np.array(idx)
    lam = np.array([_complex(v, "lambda") for v in vals])
    if np.any(np.abs(lam) >= 1.0):
        raise ConfigError("lambda", "points must lie in the open unit disc")
    return lam


def sweep_config(cfg, op, command):
    grid = cfg["grid"] or GRID_DEFAULTS.get(command, GRID_FALLBACK)
    r, a = parse_grid(grid)
    rmax = float(cfg["rmax"])
    if not 0.0 < rmax < 1.0:
        raise ConfigError("rmax", f"must lie in (0, 1), got {rmax}")
    if not op.space.is_disc:
        return engine.SweepConfig(make_grid(op.space))
    return engine.SweepConfig(make_grid(op.space, r, a, rmax), refine_rounds=int(cfg["refine_rounds"]),
                              starts=int(cfg["starts"]))


# output ----------------------------------------------------------------------


def _emit(text, cfg):
    if cfg["out"]:
        try:
            with open(cfg["out"], "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise ConfigError("out", f"cannot write {cfg['out']}: {exc.strerror}") from None
    else:
        sys.stdout.write(text)


def _dumps(obj):
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _csv(lams, vals):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for lam, v in zip(lams, vals):
        lam, v = complex(lam), complex(v)
        w.writerow([repr(lam.real), repr(lam.imag), repr(v.real), repr(v.imag)])
    return buf.getvalue()


def _point(lam):
    return int(lam) if isinstance(lam, (int, np.integer)) else encode_complex(complex(lam))


def _result(res):
    d = res.to_dict()
    d["witness"] = _point(res.witness) if not isinstance(res.witness, complex) else encode_complex(res.witness)
    return d


def _op_desc(op):
    d = {"label": op.label, "space": str(op.space)}
    if isinstance(op, SymbolTransformOp):
        s = op.symbol
        d.update({"zeta": encode_complex(s.zeta), "k": s.k} if isinstance(s, CompositionSymbol)
                 else {"beta": encode_complex(s.beta)})
    return d


def _require_json(cfg, command):
    if cfg["format"] != "json":
        raise ConfigError("format", f"{command} writes JSON only")


# commands --------------------------------------------------------------------


def cmd_transform(cfg):
    probe = _build(cfg, *_space_or_default(cfg))
    lam = _lambdas(cfg, probe)
    r = float(np.max(np.abs(lam))) if probe.space.is_disc else 0.0
    op = build_operator(cfg, r)
    f = engine.point_forms(op, lam)
    if cfg["format"] == "csv":
        _emit(_csv(lam, f.t), cfg)
    else:
        rows = [{"lambda": _point(l), "value": encode_complex(complex(t)), "uncertainty": float(u)}
                for l, t, u in zip(lam, f.t, f.trunc)]
        _emit(_dumps({"operator": _op_desc(op), "values": rows}), cfg)
    return 0


def _space_or_default(cfg):
    kind, N = parse_space(cfg["space"])
    return kind, (N if N is not None else 64)


def cmd_norms(cfg):
    _require_json(cfg, "norms")
    means, ps = parse_means(cfg), parse_ps(cfg)
    rmax = float(cfg["rmax"])
    op = build_operator(cfg, rmax)
    vec = build_operator(cfg, rmax, vector_action=True)
    sc = sweep_config(cfg, op, "norms")
    out = {
        "operator": _op_desc(op),
        "sweep": sc.to_dict(),
        "ber": _result(engine.ber(op, sc)),
        "ber_norm": _result(engine.ber_norm(vec, sc)),
        "c_tilde": _result(engine.c_tilde(op, sc)),
        "sigma": [],
    }
    for m in means:
        for p in ps:
            res = engine.sigma_mu_norm(vec, m, p, sc)
            out["sigma"].append(dict(m.to_dict(), p=p, **_result(res)))
    _emit(_dumps(out), cfg)
    return 0


def cmd_range(cfg):
    op = build_operator(cfg, float(cfg["rmax"]))
    if not op.space.is_disc:
        lam = np.arange(op.space.size)
        vals = engine.point_forms(op, lam).t
        verdict = None
        if cfg["classify"]:
            from .geometry import classify

            verdict = classify(vals, cfg["threshold"])
    else:
        sc = sweep_config(cfg, op, "range")
        lam = sc.grid.points()
        vals = engine.range_sample(op, sc.grid)
        verdict = classify_range(op, sc.grid, cfg["threshold"]) if cfg["classify"] else None
    if cfg["format"] == "csv":
        _emit(_csv(lam, vals), cfg)
        if verdict is not None:
            sys.stdout.write(_dumps(verdict.to_dict()))
    else:
        out = {"operator": _op_desc(op), "samples": [[_point(l), encode_complex(complex(v))] for l, v in zip(lam, vals)]}
        if verdict is not None:
            out["verdict"] = verdict.to_dict()
        _emit(_dumps(out), cfg)
    return 0


def cmd_sweep_mu(cfg):
    means, ps = parse_means(cfg), parse_ps(cfg)
    rmax = float(cfg["rmax"])
    vec = build_operator(cfg, rmax, vector_action=True)
    sc = sweep_config(cfg, vec, "sweep-mu")
    rows = []
    for m in means:
        for p in ps:
            res = engine.sigma_mu_norm(vec, m, p, sc)
            rows.append(dict(m.to_dict(), p=p, value=res.value, uncertainty=res.uncertainty))
    if cfg["format"] == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["family", "orientation", "mu", "p", "value", "uncertainty"])
        for r in rows:
            w.writerow([r["family"], r["orientation"], repr(r["mu"]), repr(r["p"]), repr(r["value"]),
                        repr(r["uncertainty"])])
        _emit(buf.getvalue(), cfg)
    else:
        _emit(_dumps({"operator": _op_desc(vec), "sweep": sc.to_dict(), "rows": rows}), cfg)
    return 0


def cmd_certify(cfg):
    from .certifier import certify_suite

    _require_json(cfg, "certify")
    trials = int(cfg["trials"])
    report = certify_suite(int(cfg["seed"]), trials, cfg["claims"], cfg=NumericConfig(**cfg["numeric"]))
    _emit(report.to_json(), cfg)
    sys.stderr.write(f"certify: {len(report.claims)} claims, {report.violations} asserted violations\n")
    return report.exit_code


HANDLERS = {"transform": cmd_transform, "norms": cmd_norms, "range": cmd_range, "certify": cmd_certify,
            "sweep-mu": cmd_sweep_mu}


# configuration ---------------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(prog="berezin-lab", description="Berezin transforms, radii and sigma_mu norms.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, metavar="command")
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--space", help="hardy[:N], bergman[:N] or finite:n (N chosen automatically if omitted)")
        p.add_argument("--op", help=" | ".join(OPS))
        p.add_argument("--zeta", help="composition symbol parameter, e.g. 0.5 or -0.5+0.7i")
        p.add_argument("--k", type=int, help="composition exponent k >= 0")
        p.add_argument("--beta", help="geometric shift ratio, |beta| < 1")
        p.add_argument("--lambda", dest="lambda_", action="append", help="point(s) or finite index; repeatable")
        p.add_argument("--mean", help="arithmetic, geometric, harmonic, a comma list or all")
        p.add_argument("--mu", help="comma-separated values in [0, 1]")
        p.add_argument("--p", help="comma-separated exponents in [1, 8]")
        p.add_argument("--orientation", choices=["example", "axiom", "both"])
        p.add_argument("--grid", help="RxA radial by angular counts")
        p.add_argument("--rmax", type=float)
        p.add_argument("--trunc-tol", dest="trunc_tol", type=float)
        p.add_argument("--refine-rounds", dest="refine_rounds", type=int)
        p.add_argument("--starts", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--trials", type=int)
        p.add_argument("--claims", help="comma-separated claim ids")
        p.add_argument("--suite", choices=["all"], help="shorthand for --claims all")
        p.add_argument("--classify", action="store_true", default=None)
        p.add_argument("--threshold", type=float)
        p.add_argument("--format", choices=["json", "csv"])
        p.add_argument("--out")
        p.add_argument("--config", help="JSON file with any of the options above")
        p.add_argument("--print-config", dest="print_config", action="store_true")
    return ap


def resolve_config(args):
    cfg = {k: (dict(v) if isinstance(v, dict) else v) for k, v in DEFAULTS.items()}
    if args.config:
        data = _json(_read(args.config, "config"), "config")
        if not isinstance(data, dict):
            raise ConfigError("config", "top level must be an object")
        for k, v in data.items():
            if k == "command":
                continue
            if k not in cfg:
                raise ConfigError(k, "unknown option")
            if k == "numeric":
                known = {f.name for f in fields(NumericConfig)}
                bad = set(v) - known if isinstance(v, dict) else {"<not an object>"}
                if bad:
                    raise ConfigError("numeric", f"unknown keys {sorted(bad)}")
                cfg["numeric"].update(v)
            else:
                cfg[k] = v
    given = vars(args)
    for k in cfg:
        src = "lambda_" if k == "lambda" else k
        if given.get(src) is not None:
            cfg[k] = given[src]
    if getattr(args, "suite", None):
        cfg["claims"] = "all"
    if cfg["format"] not in ("json", "csv"):
        raise ConfigError("format", "must be json or csv")
    if cfg["orientation"] not in ("example", "axiom", "both"):
        raise ConfigError("orientation", "must be example, axiom or both")
    try:
        NumericConfig(**cfg["numeric"])
    except TypeError as exc:
        raise ConfigError("numeric", str(exc)) from None
    return cfg


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        if args.print_config:
            sys.stdout.write(_dumps(dict(command=args.command, **cfg)))
            return 0
        return HANDLERS[args.command](cfg)
    except UnsupportedModel as exc:
        sys.stderr.write(f"error: unsupported model: {exc}\n")
        return EXIT_UNSUPPORTED
    except (ConfigError, ParamOutOfRange, DomainMismatch, OutOfDomain, LengthMismatch) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG
    except BerezinError as exc:
        sys.stderr.write(f"error: numeric failure: {type(exc).__name__}: {exc}\n")
        return EXIT_NUMERIC
    except (FloatingPointError, np.linalg.LinAlgError, OverflowError) as exc:
        sys.stderr.write(f"error: numeric failure: {exc}\n")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
