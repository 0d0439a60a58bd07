"""Scenario files: parsing, execution, and report emission.

A scenario is a single JSON document naming a field configuration,
constants and quadrature overrides, a list of observation frames (all of
one dimensionality kind), and a list of tasks.  Unknown keys are
rejected everywhere.  Execution is deterministic for a fixed scenario
and package version; recorded timings are informational only.

Exit-status contract: a report passes iff every task with pass/fail
semantics (consistency, verify, vankampen-sweep, fringe, and any task
given an explicit tolerance) passes and no task errored.  Value-only
tasks are informational.
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import asdict, dataclass, field
from typing import Any

from . import dynamic1d, full3, semiclassical, static2d
from ._version import __version__
from .errors import GaugeFluxError, ScenarioError
from .fields import (DEFAULT_CONSTANTS, FieldConfig, PhysicalConstants,
                     check_consistency, load_grid_config, make_config)
from .quadrature import QuadratureSpec
from .static2d import ObservationFrame, PolarFrame, PolarPoint
from .dynamic1d import SpacetimeFrame
from .full3 import ConditionSet, Frame3, conditions_from_references

__all__ = ["Scenario", "Report", "load_scenario", "run_scenario",
           "emit_csv", "emit_json", "CSV_COLUMNS"]

_FRAME_KEYS = {
    "xy": {"kind", "p0", "p", "y_ref", "x_ref", "lambda0"},
    "xt": {"kind", "p0", "p", "t_ref", "x_ref", "lambda0"},
    "xyt": {"kind", "p0", "p", "x_ref", "y_ref", "t_ref", "lambda0"},
    "polar": {"kind", "p0", "p", "rho_ref", "phi_ref", "lambda0"},
}

_TASK_KEYS = {
    "consistency": {"op", "region", "samples", "tol", "times"},
    "lambda1": {"op"}, "lambda2": {"op"},
    "lambda3": {"op"}, "lambda4": {"op"},
    "naive": {"op", "variant"},
    "polar1": {"op"}, "polar2": {"op"},
    "full": {"op", "variant", "conditions"},
    "cancel": {"op", "tol"},
    "multiplicities": {"op"},
    "vankampen-sweep": {"op", "t_list", "plateau_tol"},
    "fringe-magnetic": {"op", "q_over_e", "B", "W", "d", "L", "lambda_dB"},
    "fringe-electric": {"op", "q_over_e", "E", "T", "d", "L", "lambda_dB", "v"},
    "verify": {"op", "solution", "step", "tol"},
}

_FRAME_KIND_FOR = {
    "lambda1": "xy", "lambda2": "xy", "cancel": None, "multiplicities": None,
    "lambda3": "xt", "lambda4": "xt", "naive": "xt",
    "polar1": "polar", "polar2": "polar",
    "full": "xyt", "vankampen-sweep": "xyt",
}

_SOLUTION_KIND = {
    "lambda1": "xy", "lambda2": "xy",
    "lambda3": "xt", "lambda4": "xt", "naive": "xt", "naive-initial": "xt",
    "full:full1": "xyt", "full:full2": "xyt", "full:full4": "xyt", "full:fin": "xyt",
}

CSV_COLUMNS = [
    "task", "branch", "kind", "x0", "y0", "t0", "x", "y", "t",
    "lambda", "dirac_part", "nonlocal_part", "gauge_fix_part",
    "multiplicity_part", "residual_x", "residual_y", "residual_t",
    "phi_ab", "x_c", "phi_semi", "phi_sum", "pass",
]


def _reject_unknown(mapping: dict, allowed: set, where: str) -> None:
    unknown = set(mapping) - allowed
    if unknown:
        raise ScenarioError(f"{where}: unknown key(s) {sorted(unknown)}; "
                            f"allowed: {sorted(allowed)}")


def _expect(mapping: dict, key: str, where: str):
    if key not in mapping:
        raise ScenarioError(f"{where}: missing required key {key!r}")
    return mapping[key]


@dataclass(frozen=True)
class Scenario:
    """Validated in-memory form of a scenario file."""

    name: str
    config: dict
    constants: dict = field(default_factory=dict)
    quadrature: dict = field(default_factory=dict)
    frames: list = field(default_factory=list)
    tasks: list = field(default_factory=list)
    output: dict = field(default_factory=lambda: {"table": True})

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "config": self.config,
            "constants": self.constants,
            "quadrature": self.quadrature,
            "frames": self.frames,
            "tasks": self.tasks,
            "output": self.output,
        }

    # -- construction helpers ------------------------------------------------

    def build_config(self) -> FieldConfig:
        if "grid_file" in self.config:
            return load_grid_config(self.config["grid_file"])
        return make_config(self.config["name"], **self.config.get("params", {}))

    def build_constants(self) -> PhysicalConstants:
        if not self.constants:
            return DEFAULT_CONSTANTS
        return PhysicalConstants(**self.constants)

    def build_spec(self) -> QuadratureSpec:
        return QuadratureSpec(**self.quadrature) if self.quadrature else QuadratureSpec()

    def frame_kind(self) -> str | None:
        kinds = {f["kind"] for f in self.frames}
        if len(kinds) > 1:
            raise ScenarioError(f"frames mix kinds {sorted(kinds)}")
        return kinds.pop() if kinds else None


def _normalize_task(task) -> dict:
    if isinstance(task, str):
        if task.startswith("full:"):
            return {"op": "full", "variant": task.split(":", 1)[1]}
        return {"op": task}
    if not isinstance(task, dict):
        raise ScenarioError(f"task must be a string or object, got {task!r}")
    return dict(task)


def parse_scenario(doc: dict, where: str = "scenario") -> Scenario:
    if not isinstance(doc, dict):
        raise ScenarioError(f"{where}: document must be a JSON object")
    _reject_unknown(doc, {"name", "config", "constants", "quadrature",
                          "frames", "tasks", "output"}, where)
    name = _expect(doc, "name", where)
    config = _expect(doc, "config", where)
    if not isinstance(config, dict) or not ({"name"} <= set(config)
                                            or "grid_file" in config):
        raise ScenarioError(f"{where}.config: need {{'name', 'params'}} or "
                            f"{{'grid_file'}}, got {config!r}")
    if "name" in config:
        _reject_unknown(config, {"name", "params"}, f"{where}.config")
    else:
        _reject_unknown(config, {"grid_file"}, f"{where}.config")
    constants = doc.get("constants", {})
    _reject_unknown(constants, {"c", "q_over_hbar_c", "flux_quantum"},
                    f"{where}.constants")
    quadrature = doc.get("quadrature", {})
    _reject_unknown(quadrature, {"rule", "order", "panels", "abs_tol", "rel_tol"},
                    f"{where}.quadrature")

    frames = []
    for i, fr in enumerate(doc.get("frames", [])):
        if not isinstance(fr, dict) or "kind" not in fr:
            raise ScenarioError(f"{where}.frames[{i}]: need an object with 'kind'")
        kind = fr["kind"]
        if kind not in _FRAME_KEYS:
            raise ScenarioError(f"{where}.frames[{i}]: unknown kind {kind!r}")
        _reject_unknown(fr, _FRAME_KEYS[kind], f"{where}.frames[{i}]")
        n = 3 if kind == "xyt" else 2
        for key in ("p0", "p"):
            pt = _expect(fr, key, f"{where}.frames[{i}]")
            if len(pt) != n:
                raise ScenarioError(
                    f"{where}.frames[{i}].{key}: kind {kind!r} needs {n} "
                    f"coordinates, got {len(pt)}")
        frames.append(dict(fr))

    tasks = []
    for i, raw in enumerate(doc.get("tasks", [])):
        task = _normalize_task(raw)
        op = task.get("op")
        if op not in _TASK_KEYS:
            raise ScenarioError(f"{where}.tasks[{i}]: unknown op {op!r}; "
                                f"known: {sorted(_TASK_KEYS)}")
        _reject_unknown(task, _TASK_KEYS[op], f"{where}.tasks[{i}] ({op})")
        tasks.append(task)

    output = doc.get("output", {"table": True})
    _reject_unknown(output, {"table", "csv", "json-report"}, f"{where}.output")

    scenario = Scenario(name=name, config=config, constants=constants,
                        quadrature=quadrature, frames=frames, tasks=tasks,
                        output=output)
    _check_dimensionality(scenario)
    return scenario


def _check_dimensionality(scenario: Scenario) -> None:
    kind = scenario.frame_kind()
    for i, task in enumerate(scenario.tasks):
        op = task["op"]
        need = _FRAME_KIND_FOR.get(op)
        if op == "verify":
            need = _SOLUTION_KIND.get(task.get("solution", ""))
            if need is None:
                raise ScenarioError(
                    f"tasks[{i}]: verify needs 'solution' in "
                    f"{sorted(_SOLUTION_KIND)}")
        if op in ("cancel", "multiplicities"):
            if kind not in ("xy", "xt"):
                raise ScenarioError(f"tasks[{i}]: {op} needs 'xy' or 'xt' frames")
            continue
        if need is not None:
            if kind is None:
                raise ScenarioError(f"tasks[{i}]: {op} needs frames of kind {need!r}")
            if kind != need:
                raise ScenarioError(
                    f"tasks[{i}]: {op} needs frames of kind {need!r}, "
                    f"scenario has {kind!r}")


def load_scenario(path) -> Scenario:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ScenarioError(
                f"{path}: JSON parse error at line {exc.lineno}, "
                f"column {exc.colno}: {exc.msg}") from exc
    return parse_scenario(doc, where=str(path))


# -- frame builders ------------------------------------------------------------


def _build_frame(fr: dict):
    kind = fr["kind"]
    lam0 = float(fr.get("lambda0", 0.0))
    if kind == "xy":
        return ObservationFrame(p0=tuple(fr["p0"]), p=tuple(fr["p"]),
                                y_ref=fr.get("y_ref"), x_ref=fr.get("x_ref"),
                                lambda0=lam0)
    if kind == "xt":
        return SpacetimeFrame(p0=tuple(fr["p0"]), p=tuple(fr["p"]),
                              t_ref=fr.get("t_ref"), x_ref=fr.get("x_ref"),
                              lambda0=lam0)
    if kind == "xyt":
        return Frame3(p0=tuple(fr["p0"]), p=tuple(fr["p"]),
                      x_ref=fr.get("x_ref"), y_ref=fr.get("y_ref"),
                      t_ref=fr.get("t_ref"), lambda0=lam0)
    if kind == "polar":
        return PolarFrame(p0=PolarPoint(*fr["p0"]), p=PolarPoint(*fr["p"]),
                          rho_ref=fr.get("rho_ref"), phi_ref=fr.get("phi_ref"),
                          lambda0=lam0)
    raise ScenarioError(f"unknown frame kind {kind!r}")


def _frame_coords(fr: dict) -> dict:
    kind = fr["kind"]
    p0, p = fr["p0"], fr["p"]
    if kind == "xy" or kind == "polar":
        return {"kind": kind, "x0": p0[0], "y0": p0[1], "x": p[0], "y": p[1]}
    if kind == "xt":
        return {"kind": kind, "x0": p0[0], "t0": p0[1], "x": p[0], "t": p[1]}
    return {"kind": kind, "x0": p0[0], "y0": p0[1], "t0": p0[2],
            "x": p[0], "y": p[1], "t": p[2]}


def _solution_row(fr: dict, sol) -> dict:
    row = _frame_coords(fr)
    row.update({
        "branch": sol.branch,
        "lambda": sol.lambda_value,
        "dirac_part": sol.dirac_part,
        "nonlocal_part": sol.nonlocal_part,
        "gauge_fix_part": sol.gauge_fix_part,
        "multiplicity_part": sol.multiplicity_part,
    })
    return row


# -- task execution -------------------------------------------------------------


def _solver_for(name: str):
    table = {
        "lambda1": static2d.lambda1_static,
        "lambda2": static2d.lambda2_static,
        "lambda3": dynamic1d.lambda3_dynamic,
        "lambda4": dynamic1d.lambda4_dynamic,
    }
    return table[name]


def _run_verify(task, config, frames, spec, constants):
    solution = task["solution"]
    step = float(task.get("step", 1e-4))
    tol = float(task.get("tol", 1e-6))
    rows = []
    all_pass = True
    for fr in frames:
        frame = _build_frame(fr)
        if solution in ("lambda1", "lambda2"):
            rep = static2d.verify_gradient(config, frame, _solver_for(solution),
                                           step, tol, spec)
        elif solution in ("lambda3", "lambda4"):
            rep = dynamic1d.verify_xt_system(config, frame, _solver_for(solution),
                                             step, tol, spec, constants)
        elif solution in ("naive", "naive-initial"):
            variant = "observation" if solution == "naive" else "initial"
            rep = dynamic1d.verify_xt_system(
                config, frame, dynamic1d.lambda_naive, step, tol, spec, constants,
                variant=variant)
        else:  # full:<variant>
            variant = solution.split(":", 1)[1]
            rep = full3.verify_full_system(config, frame, variant, step, tol,
                                           None, spec, constants)
        row = _frame_coords(fr)
        row["branch"] = solution
        for axis in ("x", "y", "t"):
            if axis in rep.residuals:
                row[f"residual_{axis}"] = rep.residuals[axis]
        row["pass"] = rep.passed
        all_pass &= rep.passed
        rows.append(row)
    return rows, all_pass


def _run_task(task: dict, scenario: Scenario, config, spec, constants):
    """Returns (rows, passed) where passed may be None for value-only tasks."""
    op = task["op"]
    frames = scenario.frames

    if op == "consistency":
        region = tuple(task["region"])
        rep = check_consistency(config, region,
                                samples=int(task.get("samples", 10)),
                                tol=float(task.get("tol", 1e-6)),
                                times=tuple(task.get("times", (0.0,))),
                                constants=constants)
        row = {"branch": "consistency", "residual_x": rep.max_curl_residual,
               "residual_t": rep.max_electric_residual, "pass": rep.passed}
        return [row], rep.passed

    if op in ("lambda1", "lambda2", "lambda3", "lambda4"):
        solver = _solver_for(op)
        rows = []
        for fr in frames:
            frame = _build_frame(fr)
            kwargs = {} if op in ("lambda1", "lambda2") else {"constants": constants}
            sol = solver(config, frame, spec, **kwargs)
            rows.append(_solution_row(fr, sol))
        return rows, None

    if op == "naive":
        rows = []
        for fr in frames:
            sol = dynamic1d.lambda_naive(config, _build_frame(fr), spec,
                                         constants=constants,
                                         variant=task.get("variant", "observation"))
            rows.append(_solution_row(fr, sol))
        return rows, None

    if op in ("polar1", "polar2"):
        branch = 1 if op == "polar1" else 2
        rows = []
        for fr in frames:
            sol = static2d.lambda_polar(config, _build_frame(fr), branch, spec)
            rows.append(_solution_row(fr, sol))
        return rows, None

    if op == "full":
        variant = task.get("variant", "fin")
        rows = []
        for fr in frames:
            frame = _build_frame(fr)
            conds = (conditions_from_references(config, frame, spec)
                     if task.get("conditions", "zero") == "reference"
                     else ConditionSet.zeros())
            sol = full3.lambda_full(config, frame, variant, conds, spec,
                                    constants=constants)
            rows.append(_solution_row(fr, sol))
        return rows, None

    if op == "cancel":
        tol = task.get("tol")
        rows = []
        all_pass = True
        for fr in frames:
            frame = _build_frame(fr)
            if fr["kind"] == "xy":
                diff = static2d.cancellation_check(config, frame, spec)
            else:
                diff = dynamic1d.cancellation_check_xt(config, frame, spec,
                                                       constants=constants)
            row = _frame_coords(fr)
            row["branch"] = "cancel"
            row["lambda"] = diff
            if tol is not None:
                row["pass"] = abs(diff) <= float(tol)
                all_pass &= row["pass"]
            rows.append(row)
        return rows, (all_pass if tol is not None else None)

    if op == "multiplicities":
        rows = []
        for fr in frames:
            frame = _build_frame(fr)
            row = _frame_coords(fr)
            row["branch"] = "multiplicities"
            if fr["kind"] == "xy":
                ledger = static2d.ab_multiplicities(config, frame)
                row["extras"] = {"f_y0": ledger.f_y0, "h_hat_x0": ledger.h_hat_x0}
            else:
                em = dynamic1d.electric_ab_multiplicities(config, frame)
                row["extras"] = {"tau_t0": em.tau_t0, "chi_x0": em.chi_x0}
            rows.append(row)
        return rows, None

    if op == "vankampen-sweep":
        t_list = [float(v) for v in task["t_list"]]
        plateau_tol = float(task.get("plateau_tol", 1e-6))
        rows = []
        all_pass = True
        for fr in frames:
            x0, y0, t0 = fr["p0"]
            flux0 = config.flux_value(t0) if config.flux_value else 0.0
            for tv in t_list:
                shifted = dict(fr)
                shifted["p"] = [fr["p"][0], fr["p"][1], tv]
                frame = _build_frame(shifted)
                delta = full3.van_kampen_delta(config, frame, spec,
                                               constants=constants)
                row = _frame_coords(shifted)
                row["branch"] = "vankampen"
                row["lambda"] = delta
                row["pass"] = abs(delta - flux0) <= plateau_tol * max(abs(flux0), 1e-30)
                all_pass &= row["pass"]
                rows.append(row)
        return rows, all_pass

    if op in ("fringe-magnetic", "fringe-electric"):
        params = {k: float(v) for k, v in task.items() if k != "op"}
        if op == "fringe-magnetic":
            result = semiclassical.magnetic_fringe(
                semiclassical.FringeSetupMagnetic(constants=constants, **params))
        else:
            result = semiclassical.electric_fringe(
                semiclassical.FringeSetupElectric(constants=constants, **params))
        ok = abs(result.sum) <= 1e-12 * max(abs(result.phi_ab), 1.0)
        row = {"branch": op, "phi_ab": result.phi_ab, "x_c": result.x_c,
               "phi_semi": result.phi_semi, "phi_sum": result.sum, "pass": ok}
        return [row], ok

    if op == "verify":
        return _run_verify(task, config, frames, spec, constants)

    raise ScenarioError(f"unhandled op {op!r}")


@dataclass(frozen=True)
class Report:
    """Per-task records plus the overall pass flag."""

    scenario: str
    version: str
    records: list
    passed: bool

    def to_dict(self) -> dict:
        return asdict(self)


def run_scenario(source) -> Report:
    """Execute a scenario (path or parsed Scenario) and collect the report."""
    scenario = source if isinstance(source, Scenario) else load_scenario(source)
    config = scenario.build_config()
    constants = scenario.build_constants()
    spec = scenario.build_spec()

    records = []
    overall = True
    for task in scenario.tasks:
        started = time.perf_counter()
        try:
            rows, passed = _run_task(task, scenario, config, spec, constants)
            error = None
        except GaugeFluxError as exc:
            rows, passed, error = [], False, f"{type(exc).__name__}: {exc}"
        records.append({
            "task": task,
            "rows": rows,
            "passed": passed,
            "error": error,
            "elapsed_s": time.perf_counter() - started,
        })
        if passed is False:
            overall = False
    return Report(scenario=scenario.name, version=__version__,
                  records=records, passed=overall)


# -- emission -------------------------------------------------------------------


def _task_label(task: dict) -> str:
    op = task["op"]
    if op == "full":
        return f"full:{task.get('variant', 'fin')}"
    if op == "verify":
        return f"verify:{task['solution']}"
    if op == "naive" and task.get("variant", "observation") != "observation":
        return "naive-initial"
    return op


def emit_csv(report: Report, path) -> None:
    """One row per (task, frame) with the stable column schema."""
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, extrasaction="ignore")
        writer.writeheader()
        for record in report.records:
            label = _task_label(record["task"])
            for row in record["rows"]:
                out = {"task": label}
                out.update({k: row.get(k, "") for k in CSV_COLUMNS if k != "task"})
                if isinstance(out.get("pass"), bool):
                    out["pass"] = "true" if out["pass"] else "false"
                writer.writerow(out)


def emit_json(report: Report, path) -> None:
    with open(path, "w") as fh:
        json.dump(report.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def format_table(report: Report) -> str:
    """Human-readable per-task summary."""
    lines = [f"scenario: {report.scenario} (gaugeflux {report.version})"]
    for record in report.records:
        label = _task_label(record["task"])
        status = {True: "pass", False: "FAIL", None: "done"}[record["passed"]]
        lines.append(f"[{status}] {label}  ({record['elapsed_s']:.3f}s)")
        if record["error"]:
            lines.append(f"    error: {record['error']}")
        for row in record["rows"]:
            parts = []
            for key in ("x0", "y0", "t0", "x", "y", "t"):
                if key in row:
                    parts.append(f"{key}={row[key]:g}")
            for key in ("lambda", "dirac_part", "nonlocal_part", "gauge_fix_part",
                        "multiplicity_part", "residual_x", "residual_y",
                        "residual_t", "phi_ab", "x_c", "phi_semi", "phi_sum"):
                if key in row and row[key] != "":
                    parts.append(f"{key}={row[key]:.9g}")
            if "extras" in row:
                parts.extend(f"{k}={v:.9g}" for k, v in row["extras"].items())
            if "pass" in row:
                parts.append("pass" if row["pass"] else "FAIL")
            lines.append("    " + "  ".join(parts))
    lines.append(f"result: {'PASS' if report.passed else 'FAIL'}")
    return "\n".join(lines)
