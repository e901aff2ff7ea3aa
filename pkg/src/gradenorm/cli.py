"""Command-line front end.

Usage::

    gradenorm <command> --config <path> [--seed n] [--out dir] [--threads k] [--key=value ...]

Exit codes: 0 all assertions pass, 1 an asserted inequality fails (the
offending pair is in the report), 2 configuration error or oversize instance.
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import json
import math
import os
import sys
import time
from importlib import metadata

import numpy as np

from . import analysis as an
from .algebra import CLASS1_KINDS, GradedElement, TruncationError, basis, generator
from .config import COMMANDS, ConfigError, Experiment, load, resolve
from .norms import degree_inner
from .second_quantization import gamma_apply, multiplicativity_residual
from .suite import _random_element, _split, run_suite

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _default_ceiling(exp: Experiment) -> tuple:
    """Default ceiling sqrt(3) max(1, delta); none for paired products."""
    s, t, r = exp.norms
    audit = an.delta_audit(s.effective_weights, t.effective_weights, r.effective_weights, P=max(exp.algebra.N, 2))
    if exp.algebra.kind not in CLASS1_KINDS:
        return None, audit
    return an.SQRT3 * max(1.0, audit.delta_min), audit


def _identical(norms) -> bool:
    a = norms[0].to_json()
    return all(n.to_json() == a for n in norms[1:])


# ----------------------------------------------------------------------------------
# commands; each returns (result dict, passed, tolerance, extra files)
# ----------------------------------------------------------------------------------

def cmd_witness(exp: Experiment, threads: int):
    spec, nspec = exp.algebra, exp.norms[0]
    tol = exp.params["tolerance"]
    f = exp.params["f"]
    if f is not None:
        try:
            f = GradedElement.from_json(spec, f)
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"params.f: {exc}") from None
    elif exp.params["nilpotent"]:
        odd = [i for i in range(1, spec.d + 1) if spec.is_odd(i)]
        if not odd:
            raise ConfigError("params.nilpotent needs an odd generator")
        f = generator(spec, odd[0])
    try:
        if f is not None and (f * f).is_zero():
            rep = an.nilpotent_witness(spec, nspec, f / nspec.norm(f))
        else:
            rep = an.theorem1_sweep(spec, nspec, f)
    except an.HypothesisError as exc:
        raise ConfigError(f"witness hypotheses: {exc}") from None
    ok = rep.ratio >= an.SQRT4_3 - tol
    res = rep.to_json()
    res["floor"] = an.SQRT4_3
    return res, ok, tol, {}


def cmd_audit(exp: Experiment, threads: int):
    s, t, r = exp.norms
    target = exp.params["target_gamma"]
    target = an.SQRT3 if target is None else target
    tol = exp.params["tolerance"]
    rep = an.delta_audit(s.effective_weights, t.effective_weights, r.effective_weights,
                         P=exp.params["grid"], target_gamma=target, tol=tol)
    return rep.to_json(), rep.passed, tol, {}


def _sample_csv(rep):
    rows = [("trial", "degree_a", "degree_b", "ratio")]
    rows.extend(rep.csv_rows())
    return rows


def cmd_sample(exp: Experiment, threads: int):
    p = exp.params
    target, audit = _default_ceiling(exp)
    if p["target_gamma"] is not None:
        target = p["target_gamma"]
    rep = an.ratio_sample(exp.algebra, *exp.norms, count=p["count"], seed=p["seed"], threads=threads)
    ok = target is None or rep.max_ratio <= target + p["tolerance"]
    res = rep.to_json()
    res.update(target_gamma=target, delta_min=audit.delta_min)
    return res, ok, p["tolerance"], {"csv": _sample_csv(rep)}


def cmd_best(exp: Experiment, threads: int):
    p = exp.params
    spec = exp.algebra
    dim = len(basis(spec, p["degree_cap"]))
    if dim > p["max_dimension"]:
        raise ConfigError(f"oversize instance: dimension {dim} > max_dimension {p['max_dimension']}")
    res = {}
    try:
        bc = an.best_constant(spec, *exp.norms, degree_cap=p["degree_cap"], tol=p["tolerance"],
                              max_iter=p["max_iter"], seed=p["seed"])
    except an.ConvergenceError as exc:
        bc = exc.result
    res.update(bc.to_json())
    ok = bc.converged
    target = p["target_gamma"]
    if target is None and _identical(exp.norms):
        target, audit = _default_ceiling(exp)
        res["delta_min"] = audit.delta_min
    res["target_gamma"] = target
    if target is not None:
        ok = ok and bc.gamma_best <= target + an.CONSTANT_TOL
    dense = p["dense_check"]
    if dense is None:
        dense = dim <= 64
    if dense:
        ref = an.best_constant_dense(spec, *exp.norms, degree_cap=p["degree_cap"])
        res["dense_svd"] = ref
        res["dense_agrees"] = abs(ref - bc.gamma_best) <= 1e-8
        ok = ok and res["dense_agrees"]
    return res, ok, p["tolerance"], {}


def cmd_gamma(exp: Experiment, threads: int):
    p = exp.params
    spec, nspec = exp.algebra, exp.norms[0]
    if spec.kind not in CLASS1_KINDS:
        raise ConfigError("gamma-check needs a class-1 algebra kind")
    if nspec.twist is None:
        raise ConfigError("gamma-check needs norm.gamma_diag or norm.gamma_matrix")
    G, r = nspec.twist, nspec.twist_exponent
    rng = np.random.default_rng(p["seed"])
    worst = 0.0
    for _ in range(p["count"]):
        da, db = _split(rng, spec.N, 2)
        worst = max(worst, multiplicativity_residual(G, _random_element(spec, rng, da),
                                                      _random_element(spec, rng, db)))
    # ||Gamma(A)^(-r) a||_n <= 2^(-n r) ||a||_n for homogeneous a, r >= 0
    inv = G.power(-r) if r > 0 else None
    bound_slack = math.inf
    if inv is not None:
        for n in range(1, spec.N + 1):
            for _ in range(max(1, p["count"] // spec.N)):
                words = [w for w in basis(spec, n) if len(w) == n]
                a = GradedElement(spec, {w: float(rng.standard_normal()) for w in words})
                lhs = math.sqrt(abs(degree_inner(gamma_apply(inv, a), gamma_apply(inv, a), nspec.gram)))
                rhs = 2.0 ** (-n * r) * math.sqrt(abs(degree_inner(a, a, nspec.gram)))
                bound_slack = min(bound_slack, (rhs - lhs) / rhs if rhs else 0.0)
    target, audit = _default_ceiling(exp)
    if p["target_gamma"] is not None:
        target = p["target_gamma"]
    rep = an.ratio_sample(spec, nspec, count=p["count"], seed=p["seed"], threads=threads)
    checks = {
        "multiplicativity": worst <= p["tolerance"],
        "inverse_power_bound": inv is None or bound_slack >= -1e-12,
        "twisted_ratio": rep.max_ratio <= target + an.CONSTANT_TOL,
    }
    res = {
        "max_residual": worst,
        "pairs": p["count"],
        "inverse_power_bound_min_slack": None if inv is None else bound_slack,
        "sample": rep.to_json(),
        "target_gamma": target,
        "delta_min": audit.delta_min,
        "checks": checks,
    }
    return res, all(checks.values()), p["tolerance"], {}


def cmd_violation(exp: Experiment, threads: int):
    p = exp.params
    nspec = exp.norms[0] if exp.norms else None
    try:
        rep = an.unweighted_violation_search(exp.algebra, nspec, restarts=p["restarts"], seed=p["seed"],
                                             tol=p["tolerance"])
    except an.NoViolationFound as exc:
        return {"found": False, "best_ratio": exc.best_ratio, "message": str(exc)}, False, p["tolerance"], {}
    res = rep.to_json()
    res["found"] = True
    return res, True, p["tolerance"], {}


def cmd_suite(exp: Experiment, threads: int):
    results = run_suite(exp.params["criteria"], seed=exp.params["seed"], threads=threads)
    for r in results:
        print(r.line())
    # runtimes live in the metadata file so the report stays reproducible
    timing = {str(r.number): round(r.seconds, 3) for r in results}
    res = {"criteria": [{k: v for k, v in r.to_json().items() if k != "seconds"} for r in results]}
    return res, all(r.passed for r in results), None, {"timing": timing}


HANDLERS = {
    "witness": cmd_witness,
    "audit-weights": cmd_audit,
    "sample-ratios": cmd_sample,
    "best-constant": cmd_best,
    "gamma-check": cmd_gamma,
    "violation-search": cmd_violation,
    "suite": cmd_suite,
}


# ----------------------------------------------------------------------------------
# plumbing
# ----------------------------------------------------------------------------------

def _json_default(x):
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, tuple):
        return list(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_json_default, allow_nan=False) + "\n"


def _version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "unknown"


def _threads(arg) -> int:
    if arg is not None:
        return arg
    env = os.environ.get("GRADENORM_THREADS")
    if env:
        try:
            k = int(env)
        except ValueError:
            raise ConfigError(f"GRADENORM_THREADS={env!r} is not an integer") from None
        if k < 1:
            raise ConfigError("GRADENORM_THREADS must be positive")
        return k
    return 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gradenorm", description="Product-norm experiments on truncated graded algebras.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--config", help="JSON experiment config")
    ap.add_argument("--seed", type=int, help="override params.seed")
    ap.add_argument("--out", help="output directory (overrides output.dir)")
    ap.add_argument("--threads", type=int, help="worker threads (fallback: GRADENORM_THREADS)")
    return ap


def _split_overrides(extra):
    out = []
    for item in extra:
        if not item.startswith("--") or "=" not in item:
            raise ConfigError(f"unrecognized argument {item!r}; overrides look like --key=value")
        k, v = item[2:].split("=", 1)
        if not k:
            raise ConfigError(f"empty override key in {item!r}")
        out.append((k, v))
    return out


def run(argv=None) -> int:
    ap = build_parser()
    args, extra = ap.parse_known_args(argv)
    t0 = time.perf_counter()
    try:
        overrides = _split_overrides(extra)
        if args.seed is not None:
            if "seed" not in COMMANDS[args.command]["params"]:
                raise ConfigError(f"{args.command} takes no seed")
            overrides.append(("params.seed", args.seed))
        if args.out is not None:
            overrides.append(("output.dir", args.out))
        threads = _threads(args.threads)
        if threads < 1:
            raise ConfigError("--threads must be positive")
        exp = resolve(args.command, load(args.config), overrides)
        result, ok, tol, extras = HANDLERS[args.command](exp, threads)
    except ConfigError as exc:
        print(f"gradenorm: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except TruncationError as exc:
        print(f"gradenorm: oversize instance: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    norms = None
    if exp.norms is not None:
        s, t, r = exp.norms
        norms = {"sigma": s.to_json(), "tau": t.to_json(), "rho": r.to_json()}
    report = {
        "op": args.command,
        "spec": exp.algebra.to_json() if exp.algebra is not None else None,
        "norms": norms,
        "result": result,
        "pass": bool(ok),
        "seed": exp.params.get("seed"),
        "tolerance": tol,
        "config": exp.resolved,
    }
    os.makedirs(exp.output_dir, exist_ok=True)
    stem = os.path.join(exp.output_dir, args.command)
    with open(stem + ".json", "w", encoding="utf-8") as fh:
        fh.write(_dump(report))
    if "csv" in extras:
        with open(stem + ".csv", "w", newline="", encoding="utf-8") as fh:
            csv.writer(fh).writerows(extras["csv"])
    meta = {
        "op": args.command,
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "runtime_seconds": round(time.perf_counter() - t0, 3),
        "threads": threads,
        "version": _version(),
        "python": sys.version.split()[0],
        "numpy": np.__version__,
    }
    if "timing" in extras:
        meta["criterion_seconds"] = extras["timing"]
    with open(stem + ".meta.json", "w", encoding="utf-8") as fh:
        fh.write(_dump(meta))
    status = "PASS" if ok else "FAIL"
    print(f"{args.command}: {status} -> {stem}.json")
    return EXIT_PASS if ok else EXIT_FAIL


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
