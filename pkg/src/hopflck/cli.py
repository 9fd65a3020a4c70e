"""Command-line front end: catalog verification and map tooling over JSON.

Commands
--------
verify       run the full verification suite on a named catalog entry
deform       conjugate a polynomial map (linearize) or Jordan matrix
             (diagonalize) through the scaling families
jordan       numerical Jordan normal form of a matrix from a JSON file
contraction  certify the contraction property of a map from a JSON file
solve-lee    pointwise Lee-form recovery on a catalog entry's 2-form

All artifacts are JSON with complex numbers as [re, im] pairs; output is
deterministic for fixed inputs and seed (sorted keys, no timestamps).
Exit codes: 0 pass, 1 verification/computation failure, 2 configuration or
parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import expr as ex
from . import hopf
from . import maps as mp
from . import verify as vf
from .sampling import annulus_points

__all__ = ["RunConfig", "main", "build_parser"]

CONFIG_KEYS = ("entry", "points", "seed", "tol", "out", "parameters")
PARAMETER_KEYS = ("mu", "alpha", "t", "r1", "r2", "p1", "p2")
EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2


@dataclass
class RunConfig:
    """Validated invocation: command, target, sampling, and overrides."""

    command: str
    entry_or_file: str
    points: int = 1000
    seed: int = 42
    tol: float | None = None
    out: str | None = None
    parameters: dict = field(default_factory=dict)

    def __post_init__(self):
        self.points = int(self.points)
        self.seed = int(self.seed)
        if self.points < 1:
            raise ValueError("points must be >= 1, got %d" % self.points)
        if self.tol is not None:
            self.tol = float(self.tol)
            if not self.tol > 0:
                raise ValueError("tol must be positive, got %g" % self.tol)
        unknown = sorted(set(self.parameters) - set(PARAMETER_KEYS))
        if unknown:
            raise ValueError(
                "unknown parameter key(s) %s; valid keys: %s"
                % (", ".join(unknown), ", ".join(PARAMETER_KEYS)))


def _coerce_number(value):
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, complex):
        return value
    raise ValueError("expected a number or [re, im] pair, got %r" % (value,))


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as err:
        raise ValueError("cannot read %s: %s" % (path, err)) from err
    except json.JSONDecodeError as err:
        raise ValueError("cannot parse %s as JSON: %s" % (path, err)) from err


def _load_config_file(path: str) -> dict:
    obj = _load_json(path)
    if not isinstance(obj, dict):
        raise ValueError("config file %s must hold a JSON object" % path)
    unknown = sorted(set(obj) - set(CONFIG_KEYS))
    if unknown:
        raise ValueError("unknown config key(s) %s in %s; valid keys: %s"
                         % (", ".join(unknown), path, ", ".join(CONFIG_KEYS)))
    params = obj.get("parameters", {})
    if not isinstance(params, dict):
        raise ValueError("config 'parameters' must be an object")
    obj = dict(obj)
    obj["parameters"] = {k: _coerce_number(v) for k, v in params.items()}
    return obj


def _emit(payload, out_path: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2, allow_nan=False) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cli_parameters(args) -> dict:
    params = {}
    if args.mu_re is not None or args.mu_im is not None:
        params["mu"] = complex(args.mu_re or 0.0, args.mu_im or 0.0)
    if args.alpha_re is not None or args.alpha_im is not None:
        params["alpha"] = complex(args.alpha_re or 0.0, args.alpha_im or 0.0)
    if args.t is not None:
        params["t"] = args.t
    for key in ("r1", "r2", "p1", "p2"):
        val = getattr(args, key)
        if val is not None:
            params[key] = val
    return params


def _resolve_verify_config(args) -> RunConfig:
    file_conf: dict = {}
    entry = args.entry
    if args.file:
        if args.entry:
            raise ValueError("give either --entry or --file, not both")
        file_conf = _load_config_file(args.file)
        entry = file_conf.get("entry")
    if not entry:
        raise ValueError("no catalog entry named; use --entry or a config "
                         "file with an 'entry' key")
    params = dict(file_conf.get("parameters", {}))
    params.update(_cli_parameters(args))
    return RunConfig(
        command=args.command,
        entry_or_file=entry,
        points=args.points if args.points is not None
        else file_conf.get("points", 1000),
        seed=args.seed if args.seed is not None else file_conf.get("seed", 42),
        tol=args.tol if args.tol is not None else file_conf.get("tol"),
        out=args.out if args.out is not None else file_conf.get("out"),
        parameters=params,
    )


def _entry_parameters(entry) -> dict:
    return {k: v for k, v in sorted(entry.parameters.items())}


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    config = _resolve_verify_config(args)
    entry = hopf.build_entry(config.entry_or_file, config.parameters)
    suite = vf.SuiteConfig(points=config.points, seed=config.seed,
                           tol=config.tol)
    reports = vf.run_suite(entry, suite)
    ok = vf.suite_passed(reports)
    payload = {
        "command": "verify",
        "entry": entry.name,
        "parameters": vf.jsonify(_entry_parameters(entry)),
        "points": config.points,
        "seed": config.seed,
        "status": "pass" if ok else "fail",
        "reports": vf.reports_to_json(reports),
    }
    _emit(payload, config.out)
    return EXIT_PASS if ok else EXIT_FAIL


def _load_map_or_matrix(path: str):
    obj = _load_json(path)
    if not isinstance(obj, dict):
        raise ValueError("map file %s must hold a JSON object" % path)
    if "matrix" in obj:
        return None, mp.matrix_from_json(obj["matrix"])
    if "components" in obj:
        return mp.map_from_json(obj), None
    raise ValueError("map file %s needs a 'components' map or a 'matrix'"
                     % path)


def cmd_deform(args) -> int:
    g, matrix = _load_map_or_matrix(args.file)
    t = args.t if args.t is not None else 1.0
    if args.family == "linearize":
        if g is None:
            g = mp.PolyAutomorphism.from_matrix(matrix)
        fam = hopf.family_to_linear(g)
        at_t = fam.at(t)
        limit = fam.limit0()
        payload = {
            "command": "deform",
            "family": "linearize",
            "t": vf.jsonify(complex(t)),
            "map_at_t": mp.map_to_json(at_t),
            "limit0": mp.map_to_json(limit),
            "at_one_equals_input": fam.at(1.0) == g,
            "limit_equals_linear_part": np.array_equal(
                limit.linear_part(), g.linear_part()) and limit.is_linear(),
        }
    else:
        if matrix is None:
            if not g.is_linear():
                raise hopf.NotJordan(
                    "diagonalize needs a matrix (or a linear map)")
            matrix = g.linear_part()
        fam = hopf.family_to_diagonal(matrix)
        payload = {
            "command": "deform",
            "family": "diagonalize",
            "t": vf.jsonify(complex(t)),
            "matrix_at_t": mp.matrix_to_json(fam.at(t)),
            "limit0": mp.matrix_to_json(fam.limit0()),
        }
    _emit(payload, args.out)
    return EXIT_PASS


def cmd_jordan(args) -> int:
    _, matrix = _load_map_or_matrix(args.file)
    if matrix is None:
        raise ValueError("jordan needs a file with a 'matrix' key")
    try:
        dec = mp.jordan_form(matrix)
    except mp.IllConditioned as err:
        _emit({"command": "jordan", "error": str(err)}, args.out)
        print("jordan: %s" % err, file=sys.stderr)
        return EXIT_FAIL
    payload = {
        "command": "jordan",
        "blocks": [{"eigenvalue": vf.jsonify(lam), "size": size}
                   for lam, size in dec.blocks],
        "transform": mp.matrix_to_json(dec.transform),
        "reconstruction_residual": dec.reconstruction_residual,
    }
    _emit(payload, args.out)
    return EXIT_PASS


def cmd_contraction(args) -> int:
    g, matrix = _load_map_or_matrix(args.file)
    if g is None:
        g = mp.PolyAutomorphism.from_matrix(matrix)
    try:
        res = mp.contraction_test(g, radius=args.radius, eps=args.eps)
    except mp.IterationDiverged as err:
        _emit({"command": "contraction", "error": str(err),
               "diverged": True}, args.out)
        print("contraction: %s" % err, file=sys.stderr)
        return EXIT_FAIL
    payload = {
        "command": "contraction",
        "is_contraction": res.is_contraction,
        "iterations_needed": res.iterations_needed,
        "spectral_radius": res.spectral_radius,
        "num_points": res.num_points,
        "radius": res.radius,
        "eps": res.eps,
        "reason": res.reason,
    }
    _emit(payload, args.out)
    return EXIT_PASS if res.is_contraction else EXIT_FAIL


def cmd_solve_lee(args) -> int:
    config = _resolve_verify_config(args)
    entry = hopf.build_entry(config.entry_or_file, config.parameters)
    if "Omega" not in entry.forms:
        raise ValueError("entry %r has no 2-form to solve against"
                         % entry.name)
    omega = entry.forms["Omega"]
    tol = config.tol
    if tol is None:
        tol = vf.IMPLICIT_TOL if omega.has_implicit else vf.RATIONAL_TOL
    pts = annulus_points(entry.ambient_dim, config.points, config.seed)
    try:
        results = vf.solve_lee_many(omega, pts)
    except vf.DegenerateOmega as err:
        _emit({"command": "solve-lee", "entry": entry.name,
               "error": str(err)}, config.out)
        print("solve-lee: %s" % err, file=sys.stderr)
        return EXIT_FAIL
    max_residual = max((r.residual for r in results), default=0.0)
    max_reality = max((r.reality_defect for r in results), default=0.0)
    ok = max_residual < tol
    payload = {
        "command": "solve-lee",
        "entry": entry.name,
        "parameters": vf.jsonify(_entry_parameters(entry)),
        "points": config.points,
        "seed": config.seed,
        "tolerance": tol,
        "max_residual": max_residual,
        "max_reality_defect": max_reality,
        "status": "pass" if ok else "fail",
        "results": [r.to_json() for r in results],
    }
    _emit(payload, config.out)
    return EXIT_PASS if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_entry_options(sub):
    sub.add_argument("--entry", help="catalog entry name (%s)"
                     % ", ".join(hopf.ENTRY_NAMES))
    sub.add_argument("--file", help="JSON config file naming the entry")
    sub.add_argument("--points", type=int, default=None,
                     help="number of sample points (default 1000)")
    sub.add_argument("--seed", type=int, default=None,
                     help="sampling seed (default 42)")
    sub.add_argument("--tol", type=float, default=None,
                     help="residual tolerance (default per entry)")
    sub.add_argument("--out", default=None, help="write JSON here instead "
                     "of standard output")
    sub.add_argument("--mu-re", type=float, default=None)
    sub.add_argument("--mu-im", type=float, default=None)
    sub.add_argument("--alpha-re", type=float, default=None)
    sub.add_argument("--alpha-im", type=float, default=None)
    sub.add_argument("--t", type=complex, default=None)
    sub.add_argument("--r1", type=float, default=None)
    sub.add_argument("--r2", type=float, default=None)
    sub.add_argument("--p1", type=float, default=None)
    sub.add_argument("--p2", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopflck",
        description="verify locally conformally Kähler structures on Hopf "
                    "manifolds and deform their covering automorphisms")
    subs = parser.add_subparsers(dest="command", required=True)

    verify = subs.add_parser("verify", help="run the verification suite")
    _add_entry_options(verify)
    verify.set_defaults(func=cmd_verify)

    deform = subs.add_parser("deform", help="scaling-family conjugation")
    deform.add_argument("--file", required=True,
                        help="JSON map ('components') or matrix ('matrix')")
    deform.add_argument("--family", required=True,
                        choices=("linearize", "diagonalize"))
    deform.add_argument("--t", type=complex, default=None,
                        help="family parameter (default 1)")
    deform.add_argument("--out", default=None)
    deform.set_defaults(func=cmd_deform)

    jordan = subs.add_parser("jordan", help="numerical Jordan normal form")
    jordan.add_argument("--file", required=True, help="JSON matrix file")
    jordan.add_argument("--out", default=None)
    jordan.set_defaults(func=cmd_jordan)

    contraction = subs.add_parser("contraction",
                                  help="certify the contraction property")
    contraction.add_argument("--file", required=True, help="JSON map file")
    contraction.add_argument("--radius", type=float, default=1.0)
    contraction.add_argument("--eps", type=float, default=1e-6)
    contraction.add_argument("--out", default=None)
    contraction.set_defaults(func=cmd_contraction)

    lee = subs.add_parser("solve-lee", help="pointwise Lee-form recovery")
    _add_entry_options(lee)
    lee.set_defaults(func=cmd_solve_lee)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (hopf.UnknownEntry, hopf.BadParameter, hopf.NotJordan,
            ValueError) as err:
        msg = err.args[0] if err.args else str(err)
        print("error: %s" % msg, file=sys.stderr)
        return EXIT_CONFIG
    except (ex.EvaluationError, mp.IllConditioned,
            mp.IterationDiverged) as err:
        print("error: %s" % err, file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
