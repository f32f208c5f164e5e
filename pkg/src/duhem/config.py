"""Run configuration: strict TOML schema with hard validation.

One TOML document drives every CLI command. Unknown keys anywhere are hard
errors (typos must not silently disable verification), the seed is
mandatory so there is no wall-clock nondeterminism, and all referenced
names (checks, processes, faults) must resolve at load time.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import ConfigError
from .faults import HEAT_FAULTS, MODEL_FAULTS, apply_heat_fault, apply_model_fault
from .kinematics import MaterialState
from .linalg import Mat3, Vec3
from .materials import FourierHeatModel, PiezoTensor, QuadraticCoupledModel
from .processes import (
    AffineProcess,
    MatrixPath,
    ScalarPath,
    VectorPath,
    default_grid,
    default_processes,
    rotation_path,
)
from .verification import ALL_CHECKS

__all__ = ["RunConfig", "load_config"]


@dataclass
class RunConfig:
    """Validated, fully resolved run configuration."""

    seed: int
    model: QuadraticCoupledModel
    heat: FourierHeatModel
    model_fault: str | None
    heat_fault: str | None
    processes: dict
    verify_processes: list
    times: list
    points: list
    checks: list
    samples: int
    rotations: int
    tolerances: dict = field(default_factory=dict)
    state: MaterialState | None = None
    report_path: str = "duhem-report.jsonl"
    log_path: str = "duhem-log.csv"


def _check_keys(table: dict, allowed, path: str):
    for key in table:
        if key not in allowed:
            raise ConfigError(f"[{path}] unknown key {key!r}")


def _require(table: dict, key: str, path: str):
    if key not in table:
        raise ConfigError(f"[{path}] missing required key {key!r}")
    return table[key]


def _as_float(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"[{path}] expected a number, got {value!r}")
    return float(value)


def _as_int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"[{path}] expected an integer, got {value!r}")
    return value


def _as_str(value, path: str) -> str:
    if not isinstance(value, str):
        raise ConfigError(f"[{path}] expected a string, got {value!r}")
    return value


def _as_table(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise ConfigError(f"[{path}] expected a table")
    return value


def _vec(value, path: str) -> Vec3:
    if not isinstance(value, list) or len(value) != 3:
        raise ConfigError(f"[{path}] expected a 3-element array")
    return Vec3(*(_as_float(v, path) for v in value))


def _mat(value, path: str) -> Mat3:
    if not isinstance(value, list) or len(value) != 3 or any(
        not isinstance(row, list) or len(row) != 3 for row in value
    ):
        raise ConfigError(f"[{path}] expected a 3x3 array of arrays")
    return Mat3.from_rows(tuple(tuple(_as_float(v, path) for v in row) for row in value))


def _piezo(value, path: str) -> PiezoTensor:
    if not isinstance(value, list) or len(value) != 3:
        raise ConfigError(f"[{path}] expected a 3x3x3 nested array")
    try:
        return PiezoTensor.from_nested(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"[{path}] {exc}") from None


# ---- path parsing -----------------------------------------------------------


def _scalar_path(value, path: str) -> ScalarPath:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return ScalarPath.constant(float(value))
    table = _as_table(value, path)
    _check_keys(table, {"poly", "amp", "omega", "phase"}, path)
    poly = _require(table, "poly", path)
    if not isinstance(poly, list) or not 1 <= len(poly) <= 4:
        raise ConfigError(f"[{path}] poly must be an array of 1 to 4 coefficients")
    return ScalarPath(
        poly=tuple(_as_float(c, f"{path}.poly") for c in poly),
        amp=_as_float(table.get("amp", 0.0), f"{path}.amp"),
        omega=_as_float(table.get("omega", 0.0), f"{path}.omega"),
        phase=_as_float(table.get("phase", 0.0), f"{path}.phase"),
    )


def _broadcast(value, n: int, path: str) -> list:
    """Phase/amp entries may be a scalar (broadcast) or one value per
    component."""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return [float(value)] * n
    if isinstance(value, list):
        flat = []
        for item in value:
            if isinstance(item, list):
                flat.extend(_as_float(v, path) for v in item)
            else:
                flat.append(_as_float(item, path))
        if len(flat) != n:
            raise ConfigError(f"[{path}] expected {n} components, got {len(flat)}")
        return flat
    raise ConfigError(f"[{path}] expected a number or array")


def _component_paths(table: dict, n: int, path: str):
    poly = _require(table, "poly", path)
    if not isinstance(poly, list) or not 1 <= len(poly) <= 4:
        raise ConfigError(f"[{path}] poly must be an array of 1 to 4 coefficient sets")
    coeff_sets = [_broadcast(cset, n, f"{path}.poly[{k}]") for k, cset in enumerate(poly)]
    amp = _broadcast(table.get("amp", 0.0), n, f"{path}.amp")
    omega = _as_float(table.get("omega", 0.0), f"{path}.omega")
    phase = _broadcast(table.get("phase", 0.0), n, f"{path}.phase")
    paths = []
    for i in range(n):
        paths.append(
            ScalarPath(
                poly=tuple(cset[i] for cset in coeff_sets),
                amp=amp[i],
                omega=omega,
                phase=phase[i],
            )
        )
    return tuple(paths)


def _vector_path(value, path: str) -> VectorPath:
    if isinstance(value, list):
        return VectorPath.constant(_vec(value, path))
    table = _as_table(value, path)
    _check_keys(table, {"poly", "amp", "omega", "phase"}, path)
    return VectorPath(_component_paths(table, 3, path))


def _matrix_path(value, path: str) -> MatrixPath:
    if isinstance(value, list):
        return MatrixPath.constant(_mat(value, path))
    table = _as_table(value, path)
    if "rotation" in table:
        _check_keys(table, {"rotation"}, path)
        rot = _as_table(table["rotation"], f"{path}.rotation")
        _check_keys(rot, {"axis", "omega"}, f"{path}.rotation")
        return rotation_path(
            _vec(_require(rot, "axis", f"{path}.rotation"), f"{path}.rotation.axis"),
            _as_float(_require(rot, "omega", f"{path}.rotation"), f"{path}.rotation.omega"),
        )
    _check_keys(table, {"poly", "amp", "omega", "phase"}, path)
    return MatrixPath(_component_paths(table, 9, path))


def _process(name: str, table: dict, path: str) -> AffineProcess:
    _check_keys(table, {"A", "alpha", "a", "b", "beta", "anchor", "theta_min"}, path)
    return AffineProcess(
        name=name,
        a_mat=_matrix_path(_require(table, "A", path), f"{path}.A"),
        alpha=_scalar_path(_require(table, "alpha", path), f"{path}.alpha"),
        a_vec=_vector_path(table.get("a", [0.0, 0.0, 0.0]), f"{path}.a"),
        b_vec=_vector_path(table.get("b", [0.0, 0.0, 0.0]), f"{path}.b"),
        beta=_scalar_path(table.get("beta", 0.0), f"{path}.beta"),
        anchor=_vec(table.get("anchor", [0.0, 0.0, 0.0]), f"{path}.anchor"),
        theta_min=_as_float(table.get("theta_min", 1e-6), f"{path}.theta_min"),
    )


# ---- section loaders ----------------------------------------------------------


def _load_model(table: dict):
    path = "model"
    allowed = {"lambda", "mu", "c", "theta0", "beta", "rho_ref", "chi", "pyro", "piezo", "fault"}
    _check_keys(table, allowed, path)
    fault = table.get("fault")
    if fault is not None:
        fault = _as_str(fault, f"{path}.fault")
        if fault not in MODEL_FAULTS:
            raise ConfigError(
                f"[{path}] unknown fault {fault!r}; known: {', '.join(sorted(MODEL_FAULTS))}"
            )
    try:
        model = QuadraticCoupledModel(
            lam=_as_float(_require(table, "lambda", path), f"{path}.lambda"),
            mu=_as_float(_require(table, "mu", path), f"{path}.mu"),
            c=_as_float(_require(table, "c", path), f"{path}.c"),
            theta0=_as_float(_require(table, "theta0", path), f"{path}.theta0"),
            beta=_as_float(_require(table, "beta", path), f"{path}.beta"),
            chi=_mat(_require(table, "chi", path), f"{path}.chi"),
            pyro=_vec(_require(table, "pyro", path), f"{path}.pyro"),
            piezo=_piezo(_require(table, "piezo", path), f"{path}.piezo"),
            rho_ref=_as_float(_require(table, "rho_ref", path), f"{path}.rho_ref"),
        )
    except ValueError as exc:
        raise ConfigError(f"[{path}] {exc}") from None
    if fault is not None:
        model = apply_model_fault(model, fault)
    return model, fault


def _load_heat(table: dict, theta0: float):
    path = "heat"
    _check_keys(table, {"kappa", "scaling", "k0", "theta_ref", "fault"}, path)
    fault = table.get("fault")
    if fault is not None:
        fault = _as_str(fault, f"{path}.fault")
        if fault not in HEAT_FAULTS:
            raise ConfigError(
                f"[{path}] unknown fault {fault!r}; known: {', '.join(sorted(HEAT_FAULTS))}"
            )
    try:
        heat = FourierHeatModel(
            kappa=_mat(_require(table, "kappa", path), f"{path}.kappa"),
            scaling=_as_str(table.get("scaling", "constant"), f"{path}.scaling"),
            k0=_as_float(table.get("k0", 1.0), f"{path}.k0"),
            theta_ref=_as_float(table.get("theta_ref", theta0), f"{path}.theta_ref"),
        )
    except ValueError as exc:
        raise ConfigError(f"[{path}] {exc}") from None
    if fault is not None:
        heat = apply_heat_fault(heat, fault)
    return heat, fault


def _load_state(table: dict, model) -> MaterialState:
    path = "state"
    _check_keys(table, {"F", "theta", "em", "g"}, path)
    try:
        return MaterialState(
            F=_mat(table.get("F", [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]), f"{path}.F"),
            theta=_as_float(table.get("theta", model.theta0), f"{path}.theta"),
            em=_vec(table.get("em", [0.0, 0.0, 0.0]), f"{path}.em"),
            g=_vec(table.get("g", [0.0, 0.0, 0.0]), f"{path}.g"),
        )
    except ValueError as exc:
        raise ConfigError(f"[{path}] {exc}") from None


def load_config(path: str) -> RunConfig:
    """Parse and validate a TOML run configuration."""
    try:
        with open(path, "rb") as fh:
            doc = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed TOML in {path!r}: {exc}") from None

    top_allowed = {"seed", "model", "heat", "state", "grid", "verify", "processes", "output"}
    _check_keys(doc, top_allowed, "top level")

    if "seed" not in doc:
        raise ConfigError("missing required key 'seed' (runs must be reproducible)")
    seed = _as_int(doc["seed"], "seed")

    model, model_fault = _load_model(_as_table(_require(doc, "model", "top level"), "model"))
    heat, heat_fault = _load_heat(
        _as_table(_require(doc, "heat", "top level"), "heat"), model.theta0
    )

    state = _load_state(_as_table(doc.get("state", {}), "state"), model)

    # Grid.
    times_default, points_default = default_grid()
    grid = _as_table(doc.get("grid", {}), "grid")
    _check_keys(grid, {"times", "points"}, "grid")
    if "times" in grid:
        raw = grid["times"]
        if not isinstance(raw, list) or not raw:
            raise ConfigError("[grid.times] expected a nonempty array")
        times = [_as_float(t, "grid.times") for t in raw]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ConfigError("[grid.times] must be strictly ascending")
    else:
        times = times_default
    if "points" in grid:
        raw = grid["points"]
        if not isinstance(raw, list) or not raw:
            raise ConfigError("[grid.points] expected a nonempty array")
        points = [_vec(p, "grid.points") for p in raw]
    else:
        points = points_default

    # Processes: built-ins plus user-defined ones.
    processes = default_processes(model.theta0)
    user_procs = _as_table(doc.get("processes", {}), "processes")
    for name, table in user_procs.items():
        if name in processes:
            raise ConfigError(f"[processes.{name}] shadows a built-in process")
        processes[name] = _process(name, _as_table(table, f"processes.{name}"), f"processes.{name}")

    # Verification options.
    verify = _as_table(doc.get("verify", {}), "verify")
    _check_keys(verify, {"checks", "samples", "rotations", "processes", "tolerances"}, "verify")
    if "checks" in verify:
        raw = verify["checks"]
        if not isinstance(raw, list):
            raise ConfigError("[verify.checks] expected an array of check names")
        if not raw:
            raise ConfigError("[verify.checks] empty check selection")
        checks = [_as_str(c, "verify.checks") for c in raw]
        unknown = [c for c in checks if c not in ALL_CHECKS]
        if unknown:
            raise ConfigError(
                f"[verify.checks] unknown checks: {', '.join(unknown)}; "
                f"known: {', '.join(ALL_CHECKS)}"
            )
    else:
        checks = list(ALL_CHECKS)
    samples = _as_int(verify.get("samples", 10000), "verify.samples")
    rotations = _as_int(verify.get("rotations", 1000), "verify.rotations")
    if samples <= 0 or rotations <= 0:
        raise ConfigError("[verify] samples and rotations must be positive")
    if "processes" in verify:
        raw = verify["processes"]
        if not isinstance(raw, list) or not raw:
            raise ConfigError("[verify.processes] expected a nonempty array of process names")
        selected = [_as_str(p, "verify.processes") for p in raw]
        unknown = [p for p in selected if p not in processes]
        if unknown:
            raise ConfigError(
                f"[verify.processes] unknown processes: {', '.join(unknown)}; "
                f"known: {', '.join(sorted(processes))}"
            )
        verify_processes = selected
    else:
        verify_processes = sorted(processes)
    tolerances = {}
    for name, value in _as_table(verify.get("tolerances", {}), "verify.tolerances").items():
        if name not in ALL_CHECKS:
            raise ConfigError(f"[verify.tolerances] unknown check {name!r}")
        tolerances[name] = _as_float(value, f"verify.tolerances.{name}")

    output = _as_table(doc.get("output", {}), "output")
    _check_keys(output, {"report", "log"}, "output")
    report_path = _as_str(output.get("report", "duhem-report.jsonl"), "output.report")
    log_path = _as_str(output.get("log", "duhem-log.csv"), "output.log")

    return RunConfig(
        seed=seed,
        model=model,
        heat=heat,
        model_fault=model_fault,
        heat_fault=heat_fault,
        processes=processes,
        verify_processes=verify_processes,
        times=times,
        points=points,
        checks=checks,
        samples=samples,
        rotations=rotations,
        tolerances=tolerances,
        state=state,
        report_path=report_path,
        log_path=log_path,
    )
