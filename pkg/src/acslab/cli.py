"""Command-line front end: ``acslab verify|rank|cohomology|obstruct|jets|paper``.

Exit codes: 0 success, 1 failed check, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass

from . import obstructions as ob
from .acmodel import ModelError, SchemaError, check_identification, d_squared_zero, model_from_dict
from .exterior import FormError
from .fourcomplex import ComplexError, complex_from_dict, from_left_invariant, verify_relations
from .linalg import LinearAlgebraError
from .scalar import EvaluationError, ScalarError

CONFIG_FILE = "acslab.json"


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    gridSize: int = 9
    tolerance: float = 1e-9
    seed: int = 0
    outputMode: str = "table"

    def validate(self):
        if int(self.gridSize) < 1:
            raise InputError("gridSize must be >= 1")
        if not float(self.tolerance) > 0:
            raise InputError("tolerance must be > 0")
        if self.outputMode not in ("table", "json"):
            raise InputError("outputMode must be 'table' or 'json'")
        self.gridSize = int(self.gridSize)
        self.tolerance = float(self.tolerance)
        self.seed = int(self.seed)
        return self


def load_config(args) -> RunConfig:
    """Defaults, then ./acslab.json, then ACSLAB_GRID, then explicit flags."""
    cfg = RunConfig()
    if os.path.exists(CONFIG_FILE):
        try:
            with open(CONFIG_FILE, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise InputError(f"{CONFIG_FILE}: {e}") from None
        if not isinstance(data, dict):
            raise InputError(f"{CONFIG_FILE} must hold a JSON object")
        for k, v in data.items():
            if k not in RunConfig.__dataclass_fields__:
                raise InputError(f"{CONFIG_FILE}: unknown field {k!r}")
            setattr(cfg, k, v)
    env = os.environ.get("ACSLAB_GRID")
    if env:
        try:
            cfg.gridSize = int(env)
        except ValueError:
            raise InputError(f"ACSLAB_GRID must be an integer, got {env!r}") from None
    if getattr(args, "grid", None) is not None:
        cfg.gridSize = args.grid
    if getattr(args, "tol", None) is not None:
        cfg.tolerance = args.tol
    if getattr(args, "seed", None) is not None:
        cfg.seed = args.seed
    if getattr(args, "json", False):
        cfg.outputMode = "json"
    return cfg.validate()


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def emit(obj):
    sys.stdout.write(dump_json(obj) + "\n")


# ------------------------------------------------------------------- inputs

def _shorthand(text):
    """``name`` or ``name:k=v,k=v`` for builtin models."""
    name, _, rest = text.partition(":")
    d = {"kind": "builtin", "name": name}
    for item in filter(None, rest.split(",")):
        k, eq, v = item.partition("=")
        if not eq:
            raise InputError(f"bad builtin argument {item!r}; use key=value")
        d[k.strip()] = int(v) if v.strip().lstrip("-").isdigit() else v.strip()
    return d


def read_input(path):
    """Return ("model", FramedModel) or ("complex", FourComplex)."""
    if os.path.exists(path):
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except json.JSONDecodeError as e:
            raise InputError(f"{path}: malformed JSON ({e})") from None
        except OSError as e:
            raise InputError(f"{path}: {e}") from None
        if isinstance(data, dict) and "dims" in data and "kind" not in data:
            return "complex", complex_from_dict(data)
        if not isinstance(data, dict):
            raise InputError(f"{path}: expected a JSON object")
        return "model", model_from_dict(data, os.path.dirname(os.path.abspath(path)))
    if "/" in path or path.endswith(".json"):
        raise InputError(f"{path}: no such file")
    return "model", model_from_dict(_shorthand(path))


# ----------------------------------------------------------------- commands

def cmd_verify(args, cfg):
    kind, obj = read_input(args.input)
    checks = []
    if kind == "complex":
        ok, bad = verify_relations(obj)
        checks.append(("relations", ok, None if ok else f"{bad[0]} at {bad[1]}"))
    else:
        model = obj
        try:
            model.check_background(seed=cfg.seed)
            checks.append(("background calculus", True, None))
        except ModelError as e:
            checks.append(("background calculus", False, f"{e} {e.witness or ''}".strip()))
        checks.append(("d^2 = 0 on the coframe", d_squared_zero(model), None))
        ok, detail = check_identification(model, detail=True)
        checks.append(("N = 4 mubar", ok, None if ok else str(detail)))
        if model.has_constant_coefficients():
            ok, bad = verify_relations(from_left_invariant(model))
            checks.append(("4-complex relations", ok, None if ok else f"{bad[0]} at {bad[1]}"))
    passed = all(ok for _, ok, _ in checks)
    if cfg.outputMode == "json":
        emit({"input": args.input, "pass": passed,
              "checks": [{"name": n, "pass": ok, "witness": w} for n, ok, w in checks]})
    else:
        for n, ok, w in checks:
            print(f"{n:<28} {'PASS' if ok else 'FAIL'}" + (f"  ({w})" if w else ""))
    return 0 if passed else 1


def cmd_rank(args, cfg):
    from .acmodel import min_sampled_rank
    kind, model = read_input(args.input)
    if kind != "model":
        raise InputError("rank needs a model, not a 4-complex")
    grid = args.samples if args.samples is not None else cfg.gridSize
    if grid < 1:
        raise InputError("--samples must be >= 1")
    rep = min_sampled_rank(model, grid=grid, rtol=cfg.tolerance, symbolic=args.symbolic)
    if cfg.outputMode == "json":
        out = rep.to_json()
        out["model"] = model.label
        emit(out)
    else:
        rows = [
            ("model", model.label),
            ("generic rank", rep.generic_rank),
            ("sampled min rank", rep.sampled_min_rank),
            ("sampled max rank", rep.sampled_max_rank),
            ("maximal possible", rep.max_rank),
            ("witness", "(" + ", ".join(f"{x:.6f}" for x in rep.witness) + ")"),
            ("grid", f"{rep.grid} per angle, {rep.points} points"),
            ("classification", rep.classification),
        ]
        if rep.certificate:
            rows.append(("certificate", f"minor rows {rep.certificate['rows']} "
                                        f"columns {rep.certificate['columns']}"))
        for k, v in rows:
            print(f"{k:<18} {v}")
        for note in rep.notes:
            print(f"note: {note}", file=sys.stderr)
    return 0


def _grid_text(table, bound):
    lines = ["q\\p " + " ".join(f"{p:>4}" for p in range(bound + 1))]
    for q in range(bound, -1, -1):
        lines.append(f"{q:>3} " + " ".join(f"{table.get((p, q), 0):>4}" for p in range(bound + 1)))
    return "\n".join(lines)


def cmd_cohomology(args, cfg):
    from . import fourcomplex as fc
    kind, obj = read_input(args.input)
    if kind == "model":
        if not obj.has_constant_coefficients():
            raise InputError("cohomology needs a constant-coefficient model or an explicit 4-complex")
        A = from_left_invariant(obj)
    else:
        A = obj
    theory = args.theory
    if theory.startswith("frolicher"):
        _, _, r = theory.partition(":")
        try:
            r = int(r) if r else 2
        except ValueError:
            raise InputError(f"bad page count in {theory!r}") from None
        if r < 1:
            raise InputError("frolicher needs R >= 1")
        pages = fc.frolicher(A, r)
        deg = pages[-1].degenerate_from
        if cfg.outputMode == "json":
            js = []
            for pg in pages:
                d = pg.to_json()
                d["r"] = "inf" if pg.r is None else pg.r
                js.append(d)
            emit({"theory": "frolicher", "pages": js, "degenerate_from": deg})
        else:
            for pg in pages:
                print(f"E_{'inf' if pg.r is None else pg.r}")
                print(_grid_text(pg.dims, A.bound))
            print(f"degenerates at E_{deg}")
        return 0
    funcs = {"dol": fc.h_dol, "dolbar": fc.h_dolbar, "bc": fc.h_bc, "aeppli": fc.h_aeppli,
             "derham": fc.h_derham}
    if theory not in funcs:
        raise InputError(f"unknown theory {theory!r}")
    t = funcs[theory](A)
    if cfg.outputMode == "json":
        out = t.to_json()
        if theory == "derham":
            out["betti"] = fc.betti(A)
            out["filtration"] = {str(k): v for k, v in sorted(t.filtration.items())}
        emit(out)
    elif theory == "derham":
        b = fc.betti(A)
        print("k  " + " ".join(f"{k:>4}" for k in range(len(b))))
        print("b  " + " ".join(f"{x:>4}" for x in b))
    else:
        print(f"h_{theory}")
        print(_grid_text(t.table, A.bound))
    return 0


def cmd_obstruct(args, cfg):
    which = args.which
    if which == "dim4":
        if args.b_plus is None and args.b_minus is None:
            ok = ob.mni_necessary_dim4(args.chi, args.sigma)
            rep = {"value_5chi_6sigma": ob.dim4_value(args.chi, args.sigma), "pass": ok}
        else:
            if args.b_plus is None or args.b_minus is None:
                raise InputError("give both --b-plus and --b-minus")
            try:
                inv = ob.Dim4Invariants(args.chi, args.sigma, args.b_plus, args.b_minus)
            except ob.ObstructionError as e:
                raise InputError(str(e)) from None
            admits = None if args.admits_acs is None else args.admits_acs == "yes"
            rep = ob.four_mfd_classify(inv, admits)
            ok = rep["condC"] and rep["agree"] is not False
            rep["pass"] = ok
    elif which == "dim6":
        rep = ob.mni_necessary_dim6(ob.ChernNumbers(3, c1c1c1=args.c1c1c1, c1c2=args.c1c2, c3=args.c3))
        ok = rep["pass"]
    elif which == "dim8":
        rep = ob.mni_necessary_dim8(ob.ChernNumbers(4, c1p4=args.c1p4, c1sq_c2=args.c1sq_c2,
                                                    c1c3=args.c1c3, c2sq=args.c2sq, c4=args.c4))
        ok = rep["pass"]
    elif which == "codim":
        try:
            rep = ob.degenerate_codim(args.n)
        except ob.ObstructionError as e:
            raise InputError(str(e)) from None
        ok = True
    else:
        try:
            rep = ob.jet_min_k(args.n)
        except ob.ObstructionError as e:
            raise InputError(str(e)) from None
        ok = True
    if cfg.outputMode == "json":
        emit({"check": which, **rep})
    elif which == "jets":
        print(f"n={rep['n']}: k={rep['k']}, {rep['lhs']} > {rep['rhs']} (threshold k > {rep['threshold']})")
    else:
        for k, v in rep.items():
            if isinstance(v, dict):
                for k2, v2 in v.items():
                    print(f"{k2:<20} {'PASS' if v2 else 'FAIL'}")
            else:
                print(f"{k:<20} {v}")
    return 0 if ok else 1


def cmd_paper(args, cfg):
    from .paper import run_paper
    t0 = time.time()
    items = run_paper(torus_A=args.torus_A, seed=cfg.seed, grid=cfg.gridSize)
    failed = [it for it in items if not it[1]]
    if cfg.outputMode == "json":
        emit({"items": [{"name": n, "pass": ok, "detail": d} for n, ok, d in items],
              "pass": not failed})
    else:
        for name, ok, detail in items:
            head = f"{name}: {detail}" if detail else name
            print(f"{head} — {'PASS' if ok else 'FAIL'}")
        print(f"{len(items) - len(failed)}/{len(items)} passed in {time.time() - t0:.1f}s")
    if failed:
        print("failures: " + "; ".join(n for n, _, _ in failed), file=sys.stderr)
    return 1 if failed else 0


# ------------------------------------------------------------------- parser

def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--grid", type=int, help="grid points per angle")
    p.add_argument("--tol", type=float, help="relative tolerance for numeric rank")
    p.add_argument("--seed", type=int, help="seed for randomized checks")
    return p


def _obstruct_args(p, which):
    if which == "dim4":
        p.add_argument("--chi", type=int, required=True)
        p.add_argument("--sigma", type=int, required=True)
        p.add_argument("--b-plus", type=int)
        p.add_argument("--b-minus", type=int)
        p.add_argument("--admits-acs", choices=("yes", "no"))
    elif which == "dim6":
        p.add_argument("--c1c1c1", type=int, default=0)
        p.add_argument("--c1c2", type=int, default=0)
        p.add_argument("--c3", type=int, default=0)
    elif which == "dim8":
        for name in ("c1p4", "c1sq-c2", "c1c3", "c2sq", "c4"):
            p.add_argument(f"--{name}", type=int, default=0)
    else:
        p.add_argument("--n", type=int, required=True)


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(prog="acslab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="cmd", required=True)
    p = sub.add_parser("verify", parents=[common], help="run construction and relation checks")
    p.add_argument("input", help="model or 4-complex JSON, or a builtin like torus_mni:n=3,A=2")
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("rank", parents=[common], help="rank of mubar")
    p.add_argument("input")
    p.add_argument("--samples", type=int, help="grid points per angle (overrides --grid)")
    p.add_argument("--symbolic", action=argparse.BooleanOptionalAction, default=True,
                   help="attempt the nowhere-vanishing certificate")
    p.set_defaults(func=cmd_rank)
    p = sub.add_parser("cohomology", parents=[common], help="cohomology tables")
    p.add_argument("input")
    p.add_argument("--theory", default="dol", help="dol|dolbar|bc|aeppli|derham|frolicher:R")
    p.set_defaults(func=cmd_cohomology)
    p = sub.add_parser("obstruct", parents=[common], help="topological obstruction arithmetic")
    osub = p.add_subparsers(dest="which", required=True)
    for which in ("dim4", "dim6", "dim8", "codim", "jets"):
        q = osub.add_parser(which, parents=[common])
        _obstruct_args(q, which)
        q.set_defaults(func=cmd_obstruct)
    p = sub.add_parser("jets", parents=[common], help="alias of 'obstruct jets'")
    _obstruct_args(p, "jets")
    p.set_defaults(func=cmd_obstruct, which="jets")
    p = sub.add_parser("paper", parents=[common], help="reproduce every worked example")
    p.add_argument("--torus-A", default="2", help="parameter A for the torus constructions")
    p.set_defaults(func=cmd_paper)
    return parser


INPUT_ERRORS = (InputError, SchemaError, ScalarError, FormError, ComplexError, OSError)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        cfg = load_config(args)
        return args.func(args, cfg)
    except EvaluationError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except ModelError as e:
        # construction checks (Jacobi, J^2 = -1, parameter bounds) name their witness
        w = f" (witness: {e.witness})" if getattr(e, "witness", None) is not None else ""
        print(f"check failed: {e}{w}", file=sys.stderr)
        return 1
    except LinearAlgebraError as e:
        print(f"check failed: {e}", file=sys.stderr)
        return 1
    except INPUT_ERRORS as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    except (ValueError, TypeError, KeyError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
