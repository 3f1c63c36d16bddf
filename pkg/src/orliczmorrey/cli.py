"""Command line entry point: ``orliczmorrey <command> --config <path>``.

Commands: ``check`` (condition checkers), ``norms`` (norms of configured
functions), ``apply`` (operators, grids dumped as CSV), ``verify``
(conditions first, then operator-norm ratios) and ``report`` (merge the
JSON artifacts of earlier runs into ``summary.csv``).
"""
from __future__ import annotations

import argparse
import csv
import glob
import json
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import yaml

from . import conditions as cond
from .harness import estimate_operator_norm_ratio, make_test_family
from .operators import OPERATOR_KINDS, OperatorSpec
from .sampled import (Ball, BallFamily, function_from_spec, grid_from_spec, luxemburg_norm,
                      orlicz_morrey_norm, save_csv, weak_luxemburg_norm, weight_from_spec)
from .young import from_spec as young_from_spec

COMMANDS = ("check", "norms", "apply", "verify", "report")
SUMMARY_COLUMNS = ("scenario", "condition", "verdict", "constant", "max_ratio", "stable")
DEFAULTS = {
    "lattice": {"decades": 8.0, "per_decade": 48, "extension": 4.0, "extensions": 2,
                "holds_rtol": 0.01, "diverge_factor": 10.0},
    "stability_rtol": 0.10,
    "c_max": 1e6,
}


class ConfigError(ValueError):
    """Parse or validation failure; the message names the position or field."""


@dataclass
class Scenario:
    name: str
    raw: dict
    n: int = 1
    alpha: float = 0.0
    phi: Any = None
    psi: Any = None
    w1: Any = None
    w2: Any = None
    conditions: list = field(default_factory=list)
    ratio: Optional[dict] = None
    norms: list = field(default_factory=list)
    apply: list = field(default_factory=list)


@dataclass
class RunConfig:
    scenarios: List[Scenario]
    output: str
    seed: int
    defaults: dict
    young: dict
    weights: dict
    grids: dict
    functions: dict


# -- parsing --------------------------------------------------------------

def _load_document(text: str):
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f" at line {mark.line + 1}, column {mark.column + 1}" if mark is not None else ""
        problem = getattr(exc, "problem", None) or str(exc)
        raise ConfigError(f"parse error{where}: {problem}") from None


def _merge(base: dict, extra: dict) -> dict:
    out = dict(base)
    for k, v in (extra or {}).items():
        out[k] = _merge(base[k], v) if isinstance(v, dict) and isinstance(base.get(k), dict) else v
    return out


def parse_config(text: str, seed: Optional[int] = None, output: Optional[str] = None) -> RunConfig:
    doc = _load_document(text)
    if not isinstance(doc, dict):
        raise ConfigError("config must be a mapping at the top level")
    unknown = set(doc) - {"scenarios", "output", "seed", "defaults", "young", "weights", "grids", "functions"}
    if unknown:
        raise ConfigError(f"unknown top-level field(s): {sorted(unknown)}")
    defaults = _merge(DEFAULTS, doc.get("defaults") or {})
    try:
        lattice = cond.Lattice(**defaults["lattice"])
    except TypeError as exc:
        raise ConfigError(f"defaults.lattice: {exc}") from None
    defaults["lattice_obj"] = lattice

    young = {}
    for name, spec in (doc.get("young") or {}).items():
        try:
            young[name] = young_from_spec(spec)
        except (ValueError, KeyError, TypeError) as exc:
            raise ConfigError(f"young.{name}: {exc}") from None

    def young_ref(ref, where):
        if isinstance(ref, str):
            if ref not in young:
                raise ConfigError(f"{where}: undefined Young function {ref!r}")
            return young[ref]
        try:
            return young_from_spec(ref)
        except (ValueError, KeyError, TypeError) as exc:
            raise ConfigError(f"{where}: {exc}") from None

    weights = {}
    for name, spec in (doc.get("weights") or {}).items():
        try:
            weights[name] = weight_from_spec(spec, lambda r, _n=name: young_ref(r, f"weights.{_n}"))
        except ConfigError:
            raise
        except (ValueError, KeyError, TypeError) as exc:
            raise ConfigError(f"weights.{name}: {exc}") from None

    def weight_ref(ref, where):
        if isinstance(ref, str):
            if ref not in weights:
                raise ConfigError(f"{where}: undefined weight {ref!r}")
            return weights[ref]
        try:
            return weight_from_spec(ref, lambda r: young_ref(r, where))
        except ConfigError:
            raise
        except (ValueError, KeyError, TypeError) as exc:
            raise ConfigError(f"{where}: {exc}") from None

    grids = {}
    for name, spec in (doc.get("grids") or {}).items():
        try:
            grids[name] = grid_from_spec(spec)
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"grids.{name}: {exc}") from None

    run_seed = int(doc.get("seed", 0)) if seed is None else int(seed)

    def grid_ref(ref, where):
        if isinstance(ref, str):
            if ref not in grids:
                raise ConfigError(f"{where}: undefined grid {ref!r}")
            return grids[ref]
        return grid_from_spec(ref or {})

    functions = {}
    for name, spec in (doc.get("functions") or {}).items():
        where = f"functions.{name}"
        spec = dict(spec)
        g = grid_ref(spec.pop("grid", None), where)
        if spec.get("shape") == "random":
            spec.setdefault("seed", run_seed)
        try:
            functions[name] = function_from_spec(g, spec)
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"{where}: {exc}") from None

    raw_scenarios = doc.get("scenarios")
    if not isinstance(raw_scenarios, list) or not raw_scenarios:
        raise ConfigError("scenarios: need a nonempty list")
    scenarios = []
    seen = set()
    for i, raw in enumerate(raw_scenarios):
        where = f"scenarios[{i}]"
        if not isinstance(raw, dict) or "name" not in raw:
            raise ConfigError(f"{where}: each scenario needs a name")
        name = str(raw["name"])
        if name in seen:
            raise ConfigError(f"{where}: duplicate scenario name {name!r}")
        seen.add(name)
        n = int(raw.get("n", 1))
        if n not in (1, 2):
            raise ConfigError(f"{where}.n: dimension must be 1 or 2")
        alpha = float(raw.get("alpha", 0.0))
        if not 0 <= alpha < n:
            raise ConfigError(f"{where}.alpha: alpha out of range (need 0 <= alpha < n)")
        sc = Scenario(name=name, raw=raw, n=n, alpha=alpha)
        for key in ("phi", "psi"):
            if key in raw:
                setattr(sc, key, young_ref(raw[key], f"{where}.{key}"))
        for key in ("w1", "w2"):
            if key in raw:
                setattr(sc, key, weight_ref(raw[key], f"{where}.{key}"))
        for j, c in enumerate(raw.get("conditions", []) or []):
            cid = c if isinstance(c, str) else (c or {}).get("condition")
            if cid not in cond.CONDITION_IDS:
                raise ConfigError(f"{where}.conditions[{j}]: unknown condition {cid!r}")
            needs = ("phi", "psi") if cid.startswith("cianchi") else ("phi", "psi", "w1", "w2")
            if cid == "supremal_thm41" and isinstance(c, dict) and {"u", "v1", "v2"} <= set(c):
                needs = ()
            for key in needs:
                if getattr(sc, key) is None:
                    raise ConfigError(f"{where}.conditions[{j}]: {cid} needs '{key}'")
            entry = {"condition": cid}
            if isinstance(c, dict):
                for key in ("u", "v1", "v2"):
                    if key in c:
                        entry[key] = weight_ref(c[key], f"{where}.conditions[{j}].{key}")
            sc.conditions.append(entry)
        if "ratio" in raw:
            sc.ratio = _parse_ratio(raw["ratio"], f"{where}.ratio", n, young_ref, weight_ref, functions, grids)
        for j, item in enumerate(raw.get("norms", []) or []):
            sc.norms.append(_parse_norm(item, f"{where}.norms[{j}]", young_ref, weight_ref, functions))
        for j, item in enumerate(raw.get("apply", []) or []):
            sc.apply.append(_parse_apply(item, f"{where}.apply[{j}]", functions))
        scenarios.append(sc)
    out_dir = output or str(doc.get("output", "orliczmorrey-out"))
    return RunConfig(scenarios, out_dir, run_seed, defaults, young, weights, grids, functions)


def _operator(spec, where, n, functions, grid=None):
    if not isinstance(spec, dict) or spec.get("kind") not in OPERATOR_KINDS:
        raise ConfigError(f"{where}.kind: unknown operator kind {spec.get('kind') if isinstance(spec, dict) else spec!r}")
    alpha = float(spec.get("alpha", 0.0))
    if not 0 <= alpha < n:
        raise ConfigError(f"{where}.alpha: alpha out of range (need 0 <= alpha < n)")
    radii = spec.get("radii")
    if radii is not None:
        radii = (float(radii["min"]), float(radii["max"]), float(radii.get("ratio", math.sqrt(2.0))))
    b = spec.get("b")
    if b is not None:
        if isinstance(b, str):
            if b not in functions:
                raise ConfigError(f"{where}.b: undefined function {b!r}")
            b = functions[b]
        elif grid is not None:
            b = function_from_spec(grid, b)
        else:
            b = dict(b)
    try:
        if isinstance(b, dict):
            return {"kind": spec["kind"], "alpha": alpha, "radii": radii, "b_spec": b}
        return OperatorSpec(spec["kind"], alpha, radii, b)
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from None


def _parse_ratio(raw, where, n, young_ref, weight_ref, functions, grids):
    for key in ("operator", "source", "target", "family"):
        if key not in raw:
            raise ConfigError(f"{where}: missing field '{key}'")
    fam = dict(raw["family"])
    if isinstance(fam.get("grid"), str):
        if fam["grid"] not in grids:
            raise ConfigError(f"{where}.family.grid: undefined grid {fam['grid']!r}")
        g = grids[fam["grid"]]
        fam["grid"] = {"n": g.n, "lower": g.lower.tolist(), "upper": g.upper.tolist(), "resolution": list(g.shape)}
    try:
        family = make_test_family(fam)
    except ValueError as exc:
        raise ConfigError(f"{where}.family: {exc}") from None
    op = _operator(raw["operator"], f"{where}.operator", n, functions)
    return {
        "operator": op,
        "source": (young_ref(raw["source"]["young"], f"{where}.source.young"),
                   weight_ref(raw["source"]["weight"], f"{where}.source.weight")),
        "target": (young_ref(raw["target"]["young"], f"{where}.target.young"),
                   weight_ref(raw["target"]["weight"], f"{where}.target.weight")),
        "family": family,
        "weak_target": bool(raw.get("weak_target", False)),
        "alt_resolution": raw.get("alt_resolution"),
        "balls": raw.get("balls"),
    }


def _parse_norm(item, where, young_ref, weight_ref, functions):
    kinds = ("luxemburg", "weak_luxemburg", "orlicz_morrey", "weak_orlicz_morrey")
    kind = item.get("kind", "luxemburg")
    if kind not in kinds:
        raise ConfigError(f"{where}.kind: unknown norm kind {kind!r}")
    fname = item.get("function")
    if fname not in functions:
        raise ConfigError(f"{where}.function: undefined function {fname!r}")
    out = {"kind": kind, "function": fname, "young": young_ref(item.get("young"), f"{where}.young"),
           "region": item.get("region"), "balls": item.get("balls")}
    if kind.endswith("orlicz_morrey"):
        out["weight"] = weight_ref(item.get("weight", 1.0), f"{where}.weight")
    return out


def _parse_apply(item, where, functions):
    fname = item.get("function")
    if fname not in functions:
        raise ConfigError(f"{where}.function: undefined function {fname!r}")
    f = functions[fname]
    return {"function": fname, "operator": _operator(item.get("operator"), f"{where}.operator", f.n, functions, f)}


# -- execution ------------------------------------------------------------

def _ball_family(grid, spec):
    spec = spec or {}
    return BallFamily.for_grid(grid, ratio=float(spec.get("ratio", math.sqrt(2.0))), r_min=spec.get("r_min"),
                               r_max=spec.get("r_max"), centers_per_axis=spec.get("centers_per_axis"))


def _run_conditions(sc: Scenario, cfg: RunConfig):
    lattice = cfg.defaults["lattice_obj"]
    c_max = float(cfg.defaults["c_max"])
    reports = []
    for entry in sc.conditions:
        cid = entry["condition"]
        try:
            if cid.startswith("cianchi_frmax"):
                rep = cond.check_cianchi_frmax(sc.phi, sc.psi, sc.alpha, sc.n, cid.rsplit("_", 1)[1], c_max)
            elif cid.startswith("cianchi_pot"):
                rep = cond.check_cianchi_potential(sc.phi, sc.psi, sc.alpha, sc.n, cid.rsplit("_", 1)[1], c_max)
            elif cid == "supremal_thm41":
                if "u" in entry:
                    u, v1, v2 = entry["u"], entry["v1"], entry["v2"]
                else:
                    u, v1, v2 = cond.induced_triple(sc.phi, sc.psi, sc.w1, sc.w2, sc.n)
                rep = cond.check_supremal_thm41(u, v1, v2, lattice)
            elif cid.startswith("pair_supremal"):
                rep = cond.check_pair_supremal(sc.phi, sc.psi, sc.w1, sc.w2, sc.n, cid.endswith("_log"), lattice)
            else:
                rep = cond.check_pair_integral(sc.phi, sc.psi, sc.w1, sc.w2, sc.n, cid.endswith("_log"), lattice)
        except cond.PreconditionError as exc:
            rep = cond.ConditionReport(cid, cond.NO_WITNESS, None, {"error": str(exc)})
        reports.append(rep.to_dict())
    return reports


def _run_ratio(sc: Scenario, cfg: RunConfig):
    r = sc.ratio
    op = r["operator"]
    if isinstance(op, dict):
        b = function_from_spec(r["family"].functions[0], op["b_spec"])
        op = OperatorSpec(op["kind"], op["alpha"], op["radii"], b)
    balls = _ball_family(r["family"].functions[0], r["balls"])
    stats = estimate_operator_norm_ratio(op, r["source"], r["target"], r["family"], r["weak_target"], balls,
                                         r["alt_resolution"], float(cfg.defaults["stability_rtol"]))
    return stats.to_dict()


def _run_norms(sc: Scenario, cfg: RunConfig):
    out = []
    for item in sc.norms:
        f = cfg.functions[item["function"]]
        region = item["region"]
        if region is not None:
            region = Ball(tuple(region["center"]) if isinstance(region["center"], list) else (region["center"],),
                          float(region["radius"]))
        if item["kind"] == "luxemburg":
            val = luxemburg_norm(f, item["young"], region)
        elif item["kind"] == "weak_luxemburg":
            val = weak_luxemburg_norm(f, item["young"], region)
        else:
            val = orlicz_morrey_norm(f, item["young"], item["weight"], _ball_family(f, item["balls"]),
                                     weak=item["kind"].startswith("weak"))
        out.append({"function": item["function"], "kind": item["kind"], "young": str(item["young"]), "value": val})
    return out


def _run_apply(sc: Scenario, cfg: RunConfig, out_dir: str):
    out = []
    for j, item in enumerate(sc.apply):
        f = cfg.functions[item["function"]]
        op = item["operator"]
        if isinstance(op, dict):
            op = OperatorSpec(op["kind"], op["alpha"], op["radii"], function_from_spec(f, op["b_spec"]))
        result = op.apply(f)
        fname = f"{sc.name}_{item['function']}_{op.kind}_{j}.csv"
        save_csv(result, os.path.join(out_dir, fname))
        out.append({"function": item["function"], "operator": op.kind, "alpha": op.alpha, "csv": fname,
                    "max": float(abs(result.values).max())})
    return out


def _scenario_verdict(reports, ratio_stats):
    ok = all(r["verdict"] == cond.HOLDS for r in reports) and all(s["stable"] for s in ratio_stats)
    return "holds" if ok else "fails"


def dispatch(cfg: RunConfig, command: str, only: Optional[str] = None) -> int:
    if command not in COMMANDS:
        raise ValueError(f"unknown command {command!r}")
    out_dir = cfg.output
    if command == "report":
        return _report(out_dir)
    os.makedirs(out_dir, exist_ok=True)
    scenarios = [s for s in cfg.scenarios if only is None or s.name == only]
    if only is not None and not scenarios:
        raise ConfigError(f"--scenario: undefined scenario {only!r}")
    results = []
    for sc in scenarios:
        reports = _run_conditions(sc, cfg) if command in ("check", "verify") else []
        stats = [_run_ratio(sc, cfg)] if command == "verify" and sc.ratio is not None else []
        entry = {"scenario": sc.name, "condition_reports": reports, "ratio_stats": stats}
        if command == "norms":
            entry["norms"] = _run_norms(sc, cfg)
        if command == "apply":
            entry["outputs"] = _run_apply(sc, cfg, out_dir)
        entry["verdict"] = _scenario_verdict(reports, stats)
        results.append(entry)
    doc = {"command": command, "seed": cfg.seed, "scenarios": results}
    with open(os.path.join(out_dir, f"{command}.json"), "w") as fh:
        json.dump(_clean(doc), fh, indent=2, sort_keys=True)
        fh.write("\n")
    _write_summary(out_dir, [doc])
    for entry in results:
        print(f"{entry['scenario']}: {entry['verdict']}")
    return 0 if all(e["verdict"] == "holds" for e in results) else 1


def _clean(obj):
    return cond._jsonable(obj)


def _summary_rows(doc):
    rows = []
    for entry in doc.get("scenarios", []):
        stats = entry.get("ratio_stats") or []
        max_ratio = max((s["max_ratio"] for s in stats), default="")
        stable = all(s["stable"] for s in stats) if stats else ""
        reps = entry.get("condition_reports") or []
        if not reps:
            rows.append([entry["scenario"], "", entry["verdict"], "", max_ratio, stable])
        for r in reps:
            const = r.get("constant")
            rows.append([entry["scenario"], r["condition_id"], r["verdict"], "" if const is None else const,
                         max_ratio, stable])
    return rows


def _write_summary(out_dir, docs):
    with open(os.path.join(out_dir, "summary.csv"), "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(SUMMARY_COLUMNS)
        for doc in docs:
            w.writerows(_summary_rows(doc))


def _report(out_dir: str) -> int:
    paths = sorted(glob.glob(os.path.join(out_dir, "*.json")))
    docs = []
    for p in paths:
        with open(p) as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError:
                continue
        if isinstance(doc, dict) and "scenarios" in doc:
            docs.append(doc)
    if not docs:
        print("nothing to report", file=sys.stderr)
        return 2
    _write_summary(out_dir, docs)
    verdicts = [e["verdict"] for d in docs for e in d["scenarios"]]
    print(f"merged {len(docs)} artifact(s), {len(verdicts)} scenario result(s) into summary.csv")
    return 0 if all(v == "holds" for v in verdicts) else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="orliczmorrey", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="YAML or JSON run configuration")
    parser.add_argument("--out", help="output directory (overrides the config)")
    parser.add_argument("--seed", type=int, help="seed for randomized inputs (overrides the config)")
    parser.add_argument("--scenario", help="run only this scenario")
    args = parser.parse_args(argv)
    try:
        if args.command == "report" and args.config is None:
            return _report(args.out or "orliczmorrey-out")
        if args.config is None:
            parser.error("--config is required")
        with open(args.config) as fh:
            cfg = parse_config(fh.read(), seed=args.seed, output=args.out)
        return dispatch(cfg, args.command, args.scenario)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
