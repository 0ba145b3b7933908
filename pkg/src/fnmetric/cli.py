"""Command-line front end.

Exit codes: 0 pass, 2 bad input, 3 a scientific check failed.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import math
import re
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .errors import BadInput, FNMetricError

EXIT_OK, EXIT_INPUT, EXIT_SCIENCE = 0, 2, 3
EXPERIMENTS = ("prop32", "prop42", "seq52", "lemma61", "thm62", "thm64", "wolpert")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on its own; raising keeps the error JSON format
    def error(self, message):
        raise _UsageError(message)


# ------------------------------------------------------------ formatting

def _num(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    if x == 0:
        return "-0.0" if math.copysign(1, x) < 0 else "0.0"
    s = format(x, ".17g")
    return s if any(ch in s for ch in ".e") else s + ".0"


def dumps(obj) -> str:
    """JSON with every float at 17 significant digits and sorted keys."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return _num(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = sorted((str(k), v) for k, v in obj.items())
        return "{" + ",".join(json.dumps(k) + ":" + dumps(v) for k, v in items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _fail(err: FNMetricError | dict) -> int:
    d = err.as_dict() if isinstance(err, FNMetricError) else err
    print(dumps({"error": d}), file=sys.stderr)
    return EXIT_INPUT


def _floats(text: str, n: int | None = None) -> list[float]:
    try:
        vals = [float(p) for p in text.split(",")]
    except ValueError:
        raise BadInput(f"not a comma-separated list of numbers: {text!r}", value=text) from None
    if any(not math.isfinite(v) for v in vals):
        raise BadInput(f"non-finite entry in {text!r}", value=text)
    if n is not None and len(vals) != n:
        raise BadInput(f"expected {n} values, got {len(vals)}", value=text)
    return vals


_POW = re.compile(r"^\s*(\d+(?:\.\d*)?)\^(-?\d+)\s*$")


def _scalar(text: str) -> float:
    m = _POW.match(text)
    if m:
        return float(m.group(1)) ** int(m.group(2))
    try:
        return float(text)
    except ValueError:
        raise BadInput(f"not a number: {text!r}", value=text) from None


def parse_grid(text: str) -> tuple[float, ...]:
    """``2^-1..2^-20``, ``1e-1..1e-6`` (one point per decade or power), or
    a comma list."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        a, b = _POW.match(lo), _POW.match(hi)
        if a and b:
            if a.group(1) != b.group(1):
                raise BadInput("range ends must share a base", value=text)
            base = float(a.group(1))
            e0, e1 = int(a.group(2)), int(b.group(2))
            step = 1 if e1 >= e0 else -1
            return tuple(base ** e for e in range(e0, e1 + step, step))
        x0, x1 = _scalar(lo), _scalar(hi)
        if not (x0 > 0 and x1 > 0):
            raise BadInput("range ends must be positive", value=text)
        k0, k1 = math.log10(x0), math.log10(x1)
        if abs(k0 - round(k0)) > 1e-9 or abs(k1 - round(k1)) > 1e-9:
            raise BadInput("decade ranges need powers of ten", value=text)
        k0, k1 = round(k0), round(k1)
        step = 1 if k1 >= k0 else -1
        return tuple(10.0 ** k for k in range(k0, k1 + step, step))
    return tuple(_scalar(p) for p in text.split(","))


# ------------------------------------------------------------- manifest

@dataclass
class RunManifest:
    command: str
    config: dict
    inputs: dict = field(default_factory=dict)
    version: str = __version__
    seed: int | None = None
    timestamp: str = ""

    def digest(self) -> str:
        d = asdict(self)
        d.pop("timestamp")
        return hashlib.sha256(dumps(d).encode()).hexdigest()

    def to_json(self) -> str:
        d = asdict(self)
        d["digest"] = self.digest()
        return dumps(d) + "\n"


def _file_digest(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


# -------------------------------------------------------------- transform

def cmd_transform(args) -> int:
    from .pants import FNPoint, PantsDecomposition, elementary_move
    from .transforms import move_fn_point, sphere_move, torus_move

    if args.point or args.decomposition or args.curve:
        if not (args.point and args.decomposition and args.curve):
            raise BadInput("--point, --decomposition and --curve go together")
        try:
            P = PantsDecomposition.from_json(Path(args.decomposition).read_text())
            X = FNPoint.from_json(Path(args.point).read_text())
        except (OSError, ValueError, KeyError, TypeError) as e:
            raise BadInput(f"cannot load input: {e}") from None
        if args.curve not in P.curves:
            raise BadInput(f"unknown curve {args.curve!r}", curve=args.curve)
        P2, M = elementary_move(P, args.curve)
        Y = move_fn_point(X, P, args.curve)
        lp, tp = Y.params(M.new_curve, P2)
        out = {"curve": M.new_curve, "l_prime": lp, "tau_prime": tp, "point": Y.as_dict()}
        print(dumps(out))
        return EXIT_OK
    if args.l is None or args.tau is None:
        raise BadInput("--l and --tau are required")
    if args.torus:
        l0 = 0.0 if args.l0 is None else args.l0
        r = torus_move(l0, args.l, args.tau)
    elif args.sphere:
        if args.holes is None:
            raise BadInput("--sphere needs --holes l1,l2,l3,l4")
        r = sphere_move(*_floats(args.holes, 4), args.l, args.tau)
    else:
        raise BadInput("choose --torus, --sphere, or --point/--decomposition/--curve")
    print(dumps({"l_prime": r.l_prime, "tau_prime": r.tau_prime}))
    return EXIT_OK


# ------------------------------------------------------------ experiments

def _config(args) -> dict:
    cfg = {}
    if args.config:
        try:
            cfg = json.loads(Path(args.config).read_text())
        except (OSError, ValueError) as e:
            raise BadInput(f"cannot read config: {e}") from None
        if not isinstance(cfg, dict):
            raise BadInput("config must be a JSON object")
    for k in ("t", "L", "kind", "eps", "grid", "n", "samples", "seed", "eps0"):
        v = getattr(args, k, None)
        if v is not None:
            cfg[k] = v
    return cfg


def _sweep(cfg: dict, default_grid):
    from .asymptotics import SweepConfig

    grid = cfg.get("grid", default_grid)
    if isinstance(grid, str):
        grid = parse_grid(grid)
    holes = cfg.get("holes")
    return SweepConfig(L=float(cfg.get("L", 2.0)), t=float(cfg.get("t", 1.0)), l_grid=tuple(grid),
                       eps0=float(cfg.get("eps0", 1e-2)), seed=int(cfg.get("seed", 0)),
                       holes=None if holes is None else tuple(holes))


def run_experiment(name: str, cfg: dict):
    from . import asymptotics as A
    from .pants import SPHERE, TORUS

    if name == "prop32":
        return A.run_prop32(_sweep(cfg, A.DEFAULT_GRID)), ("l", "tau_prime_t")
    if name == "prop42":
        return A.run_prop42(_sweep(cfg, A.DEFAULT_GRID)), ("l", "tau_prime_t")
    if name == "lemma61":
        return A.run_lemma61(_sweep(cfg, A.LEMMA_GRID)), ("l", "d_tau_c1")
    t = float(cfg.get("t", 1.0))
    eps = cfg.get("eps", A.DYADIC)
    if isinstance(eps, str):
        eps = parse_grid(eps)
    if name == "seq52":
        kinds = {"torus": TORUS, "sphere": SPHERE}
        kind = cfg.get("kind", "torus")
        if kind not in kinds:
            raise BadInput(f"kind must be torus or sphere, got {kind!r}", kind=kind)
        return A.run_seq52(kinds[kind], t, eps, cfg.get("holes")), ("eps", "d_fn2")
    if name == "thm62":
        return A.run_thm62(t, eps), ("eps", "d_P_prime")
    if name == "thm64":
        return A.run_thm64(t, int(cfg.get("n", 20))), ("eps", "d_P_prime")
    if name == "wolpert":
        return A.run_wolpert(int(cfg.get("samples", 120)), int(cfg.get("seed", 0))), None
    raise BadInput(f"unknown experiment {name!r}", experiment=name, known=list(EXPERIMENTS))


def cmd_experiment(args) -> int:
    if args.name not in EXPERIMENTS:
        raise BadInput(f"unknown experiment {args.name!r}", experiment=args.name, known=list(EXPERIMENTS))
    cfg = _config(args)
    rep, plot = run_experiment(args.name, cfg)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    stem = rep.name
    (out / f"{stem}.csv").write_text(rep.to_csv())
    inputs = {"config": _file_digest(args.config)} if args.config else {}
    man = RunManifest(f"experiment {args.name}", cfg, inputs, seed=cfg.get("seed"),
                      timestamp=time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()))
    (out / f"{stem}.manifest.json").write_text(man.to_json())
    if args.svg and plot:
        rep.write_svg(out / f"{stem}.svg", *plot)
    print(dumps(rep.summary()))
    return EXIT_OK if rep.passed else EXIT_SCIENCE


# ----------------------------------------------------------------- check

def cmd_check(args) -> int:
    from .oracle_check import REL_TOL, run_battery

    if args.samples < 0:
        raise BadInput("--samples must be nonnegative", samples=args.samples)
    if args.samples == 0:
        print("warning: no samples requested, nothing checked", file=sys.stderr)
        print(dumps({"samples": 0, "passed": True}))
        return EXIT_OK
    res = run_battery(args.samples, args.seed)
    for k, v in res.max_errors.items():
        print(f"max_rel_error {k} {_num(v)}")
    for k, v in res.axioms.items():
        print(f"axiom {k} {'ok' if v else 'FAILED'}")
    if res.passed:
        print(f"PASS tolerance {_num(REL_TOL)}")
        return EXIT_OK
    if not all(e <= REL_TOL for e in res.max_errors.values()):
        k, e, case = res.worst_case()
        print(dumps({"worst": k, "rel_error": e, "input": case}), file=sys.stderr)
    else:
        print(dumps({"axioms": res.axioms}), file=sys.stderr)
    print("FAIL")
    return EXIT_SCIENCE


# ------------------------------------------------------------------ main

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fnmetric", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    t = sub.add_parser("transform", help="closed-form elementary move")
    g = t.add_mutually_exclusive_group()
    g.add_argument("--torus", action="store_true")
    g.add_argument("--sphere", action="store_true")
    t.add_argument("--l0", type=float, help="boundary length of the one-holed torus")
    t.add_argument("--holes", help="l1,l2,l3,l4 for the four-holed sphere")
    t.add_argument("--l", type=float)
    t.add_argument("--tau", type=float)
    t.add_argument("--point", help="FNPoint JSON file")
    t.add_argument("--decomposition", help="PantsDecomposition JSON file")
    t.add_argument("--curve")

    e = sub.add_parser("experiment", help="run a sweep, write CSV and manifest")
    e.add_argument("name")
    e.add_argument("--t", type=float)
    e.add_argument("--L", type=float)
    e.add_argument("--kind", choices=("torus", "sphere"))
    e.add_argument("--eps", help="e.g. 2^-1..2^-20")
    e.add_argument("--grid", help="e.g. 1e-1..1e-6")
    e.add_argument("--eps0", type=float)
    e.add_argument("--n", type=int)
    e.add_argument("--samples", type=int)
    e.add_argument("--seed", type=int)
    e.add_argument("--config", help="JSON file with the same keys")
    e.add_argument("--out", default="fnmetric-out")
    e.add_argument("--svg", action="store_true", help="also write a log-log plot")

    c = sub.add_parser("check", help="oracle and metric-axiom batteries")
    c.add_argument("--samples", type=int, default=1000)
    c.add_argument("--seed", type=int, default=0)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as e:
        return _fail({"code": "BadInput", "message": str(e)})
    if args.command is None:
        build_parser().print_help()
        return EXIT_INPUT
    cmd = {"transform": cmd_transform, "experiment": cmd_experiment, "check": cmd_check}[args.command]
    try:
        return cmd(args)
    except FNMetricError as e:
        # bad user input and invalid domains are input errors; anything the
        # math raises after validation is a scientific failure
        if e.code in ("BadInput", "BadGrid", "InvalidLength", "BadConfiguration", "NotMovable",
                      "NoTwistParameter", "DecompositionMismatch", "IncomparablePoints",
                      "FiniteOnly", "BadBasePoint", "OverlappingNeighborhoods"):
            return _fail(e)
        print(dumps({"error": e.as_dict()}), file=sys.stderr)
        return EXIT_SCIENCE


if __name__ == "__main__":
    sys.exit(main())
