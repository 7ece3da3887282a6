"""Model files: JSON descriptions of FramedModels."""

from __future__ import annotations

import json
import os

from ..scalar import ScalarEnv, as_fraction, gauss_from_any
from . import builders
from .model import FramedModel, ModelError


class SchemaError(ValueError):
    pass


def _need(d, key, kind):
    if key not in d:
        raise SchemaError(f"{kind} model needs field {key!r}")
    return d[key]


def _int(x, what):
    if isinstance(x, bool) or not isinstance(x, int):
        raise SchemaError(f"{what} must be an integer")
    return x


def model_from_dict(d: dict, base_dir: str = ".") -> FramedModel:
    """Build a model from its JSON description (see README for the schema)."""
    if not isinstance(d, dict):
        raise SchemaError("model description must be a JSON object")
    kind = _need(d, "kind", "any")
    if kind == "builtin":
        name = _need(d, "name", kind)
        if name not in builders.BUILTINS:
            raise SchemaError(f"unknown builtin {name!r}; known: {sorted(builders.BUILTINS)}")
        if name == "torus_mni":
            return builders.torus_mni(_int(_need(d, "n", kind), "n"), d.get("A", "2"))
        if name == "c2_example":
            return builders.c2_example(d.get("f", "u1"))
        if name == "mapping_torus_s1s3":
            return builders.mapping_torus_s1s3(_int(_need(d, "n", kind), "n"))
        if name == "abelian_torus":
            return builders.abelian_torus(_int(_need(d, "n", kind), "n"), d.get("coframe"))
        if name == "abelian_lie":
            return builders.abelian_lie(2 * _int(_need(d, "n", kind), "n"), d.get("J"))
        if name == "kodaira_thurston":
            return builders.kodaira_thurston(d.get("J"))
        return builders.BUILTINS[name]()
    if kind == "lie_algebra":
        n = _int(_need(d, "n", kind), "n")
        J = _need(d, "J", kind)
        if not isinstance(J, list) or len(J) != 2 * n:
            raise SchemaError(f"J must be a {2 * n}x{2 * n} matrix")
        J = [[gauss_from_any(x) for x in row] for row in J]
        if "differentials" in d:
            diffs = {}
            for k, table in d["differentials"].items():
                diffs[int(k)] = {tuple(int(t) for t in key.split(",")): v for key, v in table.items()}
            return builders.lie_from_differentials(diffs, J, label=d.get("label", "lie_algebra"))
        brackets = d.get("brackets", [])
        if not isinstance(brackets, list):
            raise SchemaError("brackets must be a list of {i, j, out}")
        for b in brackets:
            if not isinstance(b, dict) or not {"i", "j", "out"} <= set(b):
                raise SchemaError("each bracket needs i, j and out")
        return builders.from_lie_algebra(brackets, J, label=d.get("label", "lie_algebra"))
    if kind == "coordinate":
        n = _int(_need(d, "n", kind), "n")
        oscs = d.get("oscillators", [])
        params = d.get("params", [])
        env = ScalarEnv(tuple(o["name"] for o in oscs), tuple(params))
        derivations = {o["name"]: o.get("derivations", {}) for o in oscs}
        torus = {o["name"]: o["torus"] for o in oscs if "torus" in o}
        rows = _need(d, "coframe", kind)
        if not isinstance(rows, list) or len(rows) != n:
            raise SchemaError(f"coframe must have {n} rows")
        coframe = [[as_fraction(str(x), env) for x in r] for r in rows]
        m = builders.coordinate_model(n, env, coframe, derivations, label=d.get("label", "coordinate"),
                                      torus_oscillators=torus)
        if params:
            values = d.get("param_values")
            if values is None or len(values) != len(params):
                raise SchemaError("param_values must give one value per parameter")
            m.param_values = tuple(complex(gauss_from_any(v)) for v in values)
        return m
    if kind == "product":
        factors = _need(d, "factors", kind)
        if not isinstance(factors, list) or len(factors) < 2:
            raise SchemaError("product needs at least two factors")
        ms = [load_model(f, base_dir) if isinstance(f, str) else model_from_dict(f, base_dir)
              for f in factors]
        out = ms[0]
        for m in ms[1:]:
            out = builders.product(out, m)
        return out
    raise SchemaError(f"unknown model kind {kind!r}")


def load_model(path: str, base_dir: str | None = None) -> FramedModel:
    if base_dir is not None and not os.path.isabs(path):
        path = os.path.join(base_dir, path)
    with open(path, encoding="utf-8") as fh:
        try:
            d = json.load(fh)
        except json.JSONDecodeError as e:
            raise SchemaError(f"{path}: malformed JSON ({e})") from None
    return model_from_dict(d, os.path.dirname(os.path.abspath(path)))
