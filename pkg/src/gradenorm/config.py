"""Experiment configuration: JSON file, defaults and ``--key=value`` overrides."""

from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .algebra import AlgebraSpec, Kind
from .norms import FAMILIES, Gram, NormSpec, WeightSpec
from .second_quantization import GammaOperator


class ConfigError(ValueError):
    """Malformed or oversize experiment configuration (exit code 2)."""


SECTIONS = ("algebra", "norm", "norms", "params", "output")
ALGEBRA_KEYS = ("kind", "d", "N", "chi", "omega", "even_count", "field")
NORM_KEYS = ("kind", "w_family", "weights", "sigma", "rho", "s", "gram",
             "gamma_diag", "gamma_matrix", "gamma_exponent")
OUTPUT_KEYS = ("dir",)

# per command: which sections are required and the parameter defaults
COMMANDS = {
    "witness": {
        "needs": ("algebra", "norm"),
        "params": {"f": None, "nilpotent": False, "tolerance": 1e-9},
    },
    "audit-weights": {
        "needs": ("norms",),
        "params": {"grid": 50, "target_gamma": None, "tolerance": 1e-12},
    },
    "sample-ratios": {
        "needs": ("algebra", "norms"),
        "params": {"count": 10_000, "seed": 0, "target_gamma": None, "tolerance": 1e-9},
    },
    "best-constant": {
        "needs": ("algebra", "norms"),
        "params": {"degree_cap": None, "tolerance": 1e-10, "max_iter": 200_000, "seed": 0,
                   "target_gamma": None, "dense_check": None, "max_dimension": 4096},
    },
    "gamma-check": {
        "needs": ("algebra", "norm"),
        "params": {"count": 1000, "seed": 0, "tolerance": 1e-10, "target_gamma": None},
    },
    "violation-search": {
        "needs": ("algebra",),
        "params": {"restarts": 8, "seed": 0, "tolerance": 1e-12},
    },
    "suite": {
        "needs": (),
        "params": {"criteria": [1, 2, 3, 4, 5, 6, 7, 8], "seed": 0},
    },
}


def _parse_value(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def apply_override(cfg: dict, key: str, value) -> None:
    """Set a dotted key, e.g. ``params.count`` or ``norm.sigma``.

    A bare key without a dot addresses the ``params`` section.
    """
    parts = key.split(".")
    if len(parts) == 1:
        parts = ["params"] + parts
    node = cfg
    for p in parts[:-1]:
        nxt = node.setdefault(p, {})
        if not isinstance(nxt, dict):
            raise ConfigError(f"override {key!r} descends into a non-object")
        node = nxt
    node[parts[-1]] = _parse_value(value) if isinstance(value, str) else value


def _reject_unknown(block: dict, allowed, where: str):
    if not isinstance(block, dict):
        raise ConfigError(f"{where} must be an object")
    extra = sorted(set(block) - set(allowed))
    if extra:
        raise ConfigError(f"unknown key(s) in {where}: {', '.join(extra)}")


def _parse_scalar(x, where):
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return complex(float(x[0]), float(x[1]))
    if isinstance(x, dict):
        return complex(float(x.get("re", 0.0)), float(x.get("im", 0.0)))
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return x
    raise ConfigError(f"{where}: expected a number, [re, im] or {{re, im}}")


def parse_algebra(block: dict) -> AlgebraSpec:
    _reject_unknown(block, ALGEBRA_KEYS, "algebra")
    for k in ("kind", "d", "N"):
        if k not in block:
            raise ConfigError(f"algebra.{k} is required")
    kw = dict(block)
    if kw.get("omega") is not None:
        om = kw["omega"]
        if not isinstance(om, list) or not all(isinstance(r, list) for r in om):
            raise ConfigError("algebra.omega must be a matrix (list of rows)")
        vals = [[_parse_scalar(x, "algebra.omega") for x in row] for row in om]
        arr = np.array(vals)
        if np.iscomplexobj(arr) and not np.any(arr.imag):
            arr = arr.real
        kw["omega"] = arr
    try:
        kw["kind"] = Kind(kw["kind"])
        return AlgebraSpec(**kw)
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"algebra: {exc}") from None


def parse_norm(block: dict, where: str = "norm", algebra: Optional[AlgebraSpec] = None) -> NormSpec:
    _reject_unknown(block, NORM_KEYS, where)
    if "kind" in block and algebra is not None and Kind(block["kind"]) is not algebra.kind:
        raise ConfigError(f"{where}.kind={block['kind']!r} does not match algebra.kind={algebra.kind.value!r}")
    fam = block.get("w_family", "factorial_inv")
    if fam not in FAMILIES:
        raise ConfigError(f"{where}.w_family must be one of {', '.join(FAMILIES)}")
    try:
        if fam == "explicit":
            if "weights" not in block:
                raise ConfigError(f"{where}.weights is required for explicit weights")
            w = WeightSpec.explicit(block["weights"])
        elif fam == "sigma_rho_s":
            w = WeightSpec.sigma_rho_s(block.get("sigma", 0.0), block.get("rho", 0.0), block.get("s", 0.0))
        else:
            stray = [k for k in ("weights", "sigma", "rho", "s") if k in block]
            if stray:
                raise ConfigError(f"{where}: {', '.join(stray)} not used by w_family={fam}")
            w = WeightSpec(fam)
        twist = None
        if "gamma_diag" in block and "gamma_matrix" in block:
            raise ConfigError(f"{where}: give gamma_diag or gamma_matrix, not both")
        if "gamma_diag" in block:
            twist = GammaOperator.diag(block["gamma_diag"])
        elif "gamma_matrix" in block:
            m = np.array([[_parse_scalar(x, f"{where}.gamma_matrix") for x in r] for r in block["gamma_matrix"]])
            twist = GammaOperator.from_matrix(m.real if not np.any(np.imag(m)) else m)
        if twist is None and "gamma_exponent" in block:
            raise ConfigError(f"{where}.gamma_exponent given without a twist operator")
        if twist is not None and algebra is not None and twist.d != algebra.d:
            raise ConfigError(f"{where}: twist acts on {twist.d} generators, algebra has {algebra.d}")
        return NormSpec(w, Gram(block.get("gram", "normalized")), twist, float(block.get("gamma_exponent", 1.0)))
    except ConfigError:
        raise
    except (ValueError, TypeError, np.linalg.LinAlgError) as exc:
        raise ConfigError(f"{where}: {exc}") from None


@dataclass
class Experiment:
    command: str
    algebra: Optional[AlgebraSpec]
    norms: Optional[tuple]  # (sigma, tau, rho) NormSpecs
    params: dict
    output_dir: str
    resolved: dict  # fully defaulted config, embedded in reports


def resolve(command: str, raw: dict, overrides=()) -> Experiment:
    """Validate ``raw`` for ``command`` and fill in defaults.

    ``overrides`` is a sequence of ``(dotted_key, value)`` applied on top of
    the file (CLI > file > defaults).
    """
    if command not in COMMANDS:
        raise ConfigError(f"unknown command {command!r}; choose from {', '.join(COMMANDS)}")
    cfg = copy.deepcopy(raw)
    if not isinstance(cfg, dict):
        raise ConfigError("config root must be an object")
    for k, v in overrides:
        apply_override(cfg, k, v)
    _reject_unknown(cfg, SECTIONS, "config")
    info = COMMANDS[command]
    params = cfg.get("params", {})
    _reject_unknown(params, info["params"], "params")
    resolved_params = {**copy.deepcopy(info["params"]), **params}
    output = cfg.get("output", {})
    _reject_unknown(output, OUTPUT_KEYS, "output")

    if "norm" in cfg and "norms" in cfg:
        raise ConfigError("give either norm or norms, not both")
    needs = info["needs"]
    allowed = set(needs) | {"params", "output"}
    if "norms" in needs or "norm" in needs:
        allowed |= {"norm", "norms"}
    if command == "violation-search":
        allowed |= {"norm"}
    extra = sorted(set(cfg) - allowed)
    if extra:
        raise ConfigError(f"section(s) not used by {command}: {', '.join(extra)}")

    algebra = None
    if "algebra" in needs:
        if "algebra" not in cfg:
            raise ConfigError("algebra section is required")
        algebra = parse_algebra(cfg["algebra"])

    norms = None
    resolved = {"command": command}
    if algebra is not None:
        resolved["algebra"] = algebra.to_json()
    if "norm" in cfg:
        n = parse_norm(cfg["norm"], "norm", algebra)
        norms = (n, n, n)
        resolved["norm"] = n.to_json()
    elif "norms" in cfg:
        block = cfg["norms"]
        _reject_unknown(block, ("sigma", "tau", "rho"), "norms")
        if "sigma" not in block:
            raise ConfigError("norms.sigma is required")
        s = parse_norm(block["sigma"], "norms.sigma", algebra)
        t = parse_norm(block["tau"], "norms.tau", algebra) if "tau" in block else s
        r = parse_norm(block["rho"], "norms.rho", algebra) if "rho" in block else s
        norms = (s, t, r)
        resolved["norms"] = {"sigma": s.to_json(), "tau": t.to_json(), "rho": r.to_json()}
    elif any(k in needs for k in ("norm", "norms")):
        raise ConfigError("a norm (or norms) section is required")

    _check_params(command, resolved_params)
    resolved["params"] = resolved_params
    out_dir = output.get("dir", ".")
    resolved["output"] = {"dir": out_dir}
    return Experiment(command, algebra, norms, resolved_params, out_dir, resolved)


def _is_int(x):
    return isinstance(x, int) and not isinstance(x, bool)


def _check_params(command, p):
    for k in ("count", "grid", "max_iter", "restarts", "max_dimension"):
        if k in p and (not _is_int(p[k]) or p[k] < 1):
            raise ConfigError(f"params.{k} must be a positive integer")
    if "seed" in p and (not _is_int(p["seed"]) or p["seed"] < 0):
        raise ConfigError("params.seed must be a non-negative integer")
    if "grid" in p and p["grid"] < 2:
        raise ConfigError("params.grid must be at least 2")
    for k in ("tolerance", "target_gamma"):
        v = p.get(k)
        if v is not None and (not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v) or v < 0):
            raise ConfigError(f"params.{k} must be a non-negative number")
    if command == "suite":
        c = p["criteria"]
        if not isinstance(c, list) or not all(_is_int(x) and 1 <= x <= 8 for x in c):
            raise ConfigError("params.criteria must be a list of criterion numbers 1..8")


def load(path: Optional[str]) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
