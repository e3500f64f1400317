"""Named verification scenarios, seeded property sweeps, and omega-trace export.

Each scenario runs one hidden-variable construction against the exact qubit
oracle and produces a :class:`ScenarioReport`: inputs echoed, hidden-variable
numbers, quantum numbers, the worst absolute error, explicit disagreement
witnesses, and a pass flag.  Reports are deterministic for a fixed config and
seed (``runtime_ms`` is the only field that varies between runs).

Config files are flat ``key = value`` text; vectors are three whitespace
separated floats.  Recognized keys: ``scenario``, ``state``, ``n``, ``m``,
``c``, ``lambda``, ``seed``, ``trials``, ``grid_points``.  Lines starting
with ``#`` (or blank) are ignored.
"""

from __future__ import annotations

import json
import math
import time
import warnings
from dataclasses import dataclass, field
from itertools import permutations
from pathlib import Path
from typing import Callable, Mapping

import numpy as np

from . import branching
from .bell import (
    ConflictWitness,
    bell_value,
    bell_value_operator,
    classical_conditional,
    nonuniqueness_witness,
    route_operator_product,
    route_state_update,
    sum_conflict_witness,
)
from .branching import BranchHistory, branch, integrate_in_order, joint_function
from .errors import ConfigError, HvlabError, ScenarioError, ValidationError
from .qubit import (
    PureState,
    chain_probability,
    conditional_expectation,
    cosine_between,
    expectation,
    projector,
    sandwich,
)
from .stepfn import OMEGA_MAX, OMEGA_MIN, StepFunction, complement, constant

SCENARIO_NAMES = (
    "measure_reproduction",
    "sandwich",
    "route_agreement",
    "nonuniqueness",
    "classical_rule",
    "sum_conflict",
    "branching_chain",
    "idempotence",
    "sweep",
)

DEFAULT_TOLERANCE = 1e-12
DEFAULT_GRID_POINTS = 2001
DEFAULT_SWEEP_TRIALS = 1000
NORMALIZE_WARN_ABOVE = 1e-9
NORMALIZE_LIMIT = 1e-6

_REQUIRED_KEYS: dict[str, tuple[str, ...]] = {
    "measure_reproduction": ("state", "m"),
    "sandwich": ("n", "m"),
    "route_agreement": ("state", "n", "m"),
    "nonuniqueness": ("state", "n", "m"),
    "classical_rule": ("state", "n", "m"),
    "sum_conflict": ("state", "n", "m", "lambda"),
    "branching_chain": ("state", "n", "m"),
    "idempotence": ("state", "n"),
    "sweep": (),
}

_SCALAR_KEYS = ("lambda", "seed", "trials", "grid_points")
_VECTOR_KEYS = ("state", "n", "m", "c")

__all__ = [
    "SCENARIO_NAMES",
    "DEFAULT_TOLERANCE",
    "DEFAULT_GRID_POINTS",
    "ScenarioConfig",
    "ScenarioReport",
    "load_config",
    "run_scenario",
    "run_sweep",
    "emit_trace",
]


@dataclass(frozen=True)
class ScenarioConfig:
    """Inputs of one named scenario (parsed from a config file or built in code)."""

    scenario: str
    state: np.ndarray | None = None
    axes: Mapping[str, np.ndarray] = field(default_factory=dict)
    lam: float | None = None
    seed: int | None = None
    trials: int | None = None
    grid_points: int = DEFAULT_GRID_POINTS
    normalize_all_levels: bool = False
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        if self.scenario not in SCENARIO_NAMES:
            raise ConfigError(
                f"unknown scenario {self.scenario!r}; expected one of {', '.join(SCENARIO_NAMES)}"
            )
        object.__setattr__(self, "axes", dict(self.axes))
        if self.grid_points < 2:
            raise ConfigError("grid_points must be at least 2")
        if self.tolerance <= 0:
            raise ConfigError("tolerance must be positive")
        missing = [
            key
            for key in _REQUIRED_KEYS[self.scenario]
            if (key == "state" and self.state is None)
            or (key == "lambda" and self.lam is None)
            or (key in ("n", "m", "c") and key not in self.axes)
        ]
        if missing:
            raise ConfigError(
                f"scenario {self.scenario!r} is missing required keys: {', '.join(missing)}"
            )

    def axis(self, name: str) -> np.ndarray:
        return self.axes[name]


def _normalize_config_vector(key: str, raw: np.ndarray) -> np.ndarray:
    norm = float(np.sqrt(raw @ raw))
    deviation = abs(norm - 1.0)
    if deviation > NORMALIZE_LIMIT:
        raise ConfigError(
            f"vector {key!r} has norm {norm!r}; beyond the auto-normalization limit {NORMALIZE_LIMIT}"
        )
    if deviation > NORMALIZE_WARN_ABOVE:
        warnings.warn(
            f"vector {key!r} has norm {norm!r}; normalizing", stacklevel=3
        )
        raw = raw / norm
    raw = np.asarray(raw, dtype=float)
    raw.flags.writeable = False
    return raw


def load_config(path) -> ScenarioConfig:
    """Parse a flat ``key = value`` scenario config file."""
    text = Path(path).read_text(encoding="utf-8")
    entries: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, _, value = stripped.partition("=")
        key = key.strip()
        value = value.strip()
        if key in entries:
            raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
        if key != "scenario" and key not in _SCALAR_KEYS and key not in _VECTOR_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        entries[key] = value

    if "scenario" not in entries:
        raise ConfigError(f"{path}: missing required key 'scenario'")

    def parse_vector(key: str) -> np.ndarray:
        parts = entries[key].split()
        if len(parts) != 3:
            raise ConfigError(f"{path}: vector {key!r} needs three components, got {entries[key]!r}")
        try:
            raw = np.array([float(p) for p in parts])
        except ValueError as exc:
            raise ConfigError(f"{path}: vector {key!r} has a non-numeric component") from exc
        return _normalize_config_vector(key, raw)

    state = parse_vector("state") if "state" in entries else None
    axes = {key: parse_vector(key) for key in ("n", "m", "c") if key in entries}

    def parse_int(key: str) -> int | None:
        if key not in entries:
            return None
        try:
            return int(entries[key])
        except ValueError as exc:
            raise ConfigError(f"{path}: {key!r} must be an integer") from exc

    lam = None
    if "lambda" in entries:
        try:
            lam = float(entries["lambda"])
        except ValueError as exc:
            raise ConfigError(f"{path}: 'lambda' must be a real number") from exc

    grid_points = parse_int("grid_points")
    return ScenarioConfig(
        scenario=entries["scenario"],
        state=state,
        axes=axes,
        lam=lam,
        seed=parse_int("seed"),
        trials=parse_int("trials"),
        grid_points=grid_points if grid_points is not None else DEFAULT_GRID_POINTS,
    )


@dataclass
class ScenarioReport:
    """Structured outcome of one scenario run."""

    scenario: str
    inputs: dict
    hv_values: dict
    qm_values: dict
    max_abs_error: float
    witnesses: list[dict]
    passed: bool
    notes: list[str]
    details: dict
    runtime_ms: float

    def to_dict(self) -> dict:
        # fixed field order; 'pass' is the documented JSON key
        return {
            "scenario": self.scenario,
            "inputs": self.inputs,
            "hv_values": self.hv_values,
            "qm_values": self.qm_values,
            "max_abs_error": self.max_abs_error,
            "witnesses": self.witnesses,
            "pass": self.passed,
            "notes": self.notes,
            "details": self.details,
            "runtime_ms": self.runtime_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _witness_dicts(witness: ConflictWitness) -> list[dict]:
    return [
        {
            "omega_left": s.omega_left,
            "omega_right": s.omega_right,
            "lhs": s.lhs_value,
            "rhs": s.rhs_value,
        }
        for s in witness.samples
    ]


def _inputs_echo(config: ScenarioConfig) -> dict:
    return {
        "state": None if config.state is None else [float(v) for v in config.state],
        "axes": {name: [float(v) for v in vec] for name, vec in sorted(config.axes.items())},
        "lambda": config.lam,
        "seed": config.seed,
        "trials": config.trials,
        "grid_points": config.grid_points,
        "normalize_all_levels": config.normalize_all_levels,
        "tolerance": config.tolerance,
    }


# ---------------------------------------------------------------------------
# scenario executors: each returns (hv, qm, max_abs_error, witnesses, passed,
# notes, traces) plus an optional trailing details dict; traces maps a role
# name to a StepFunction for CSV export
# ---------------------------------------------------------------------------


def _run_measure_reproduction(config: ScenarioConfig):
    psi = PureState(config.state)
    assignment = bell_value(psi, config.axis("m"))
    hv = {"measure": assignment.integral()}
    qm = {"expectation": expectation(psi, assignment.observable)}
    err = abs(hv["measure"] - qm["expectation"])
    traces = {"value_map": assignment.values}
    return hv, qm, err, [], err <= config.tolerance, [], traces


def _run_sandwich(config: ScenarioConfig):
    n = config.axis("n")
    m = config.axis("m")
    product = sandwich(projector(n), projector(m))
    coefficient = 2.0 * product.a
    expected = 0.5 * (1.0 + cosine_between(n, m))
    axis_deviation = float(np.max(np.abs(product.b - coefficient * 0.5 * n)))
    err = max(abs(coefficient - expected), axis_deviation)
    hv: dict = {}
    qm = {"coefficient": coefficient, "expected_coefficient": expected}
    notes = ["quantum-side identity check; no hidden-variable map involved"]
    return hv, qm, err, [], err <= config.tolerance, notes, {}


def _run_route_agreement(config: ScenarioConfig):
    psi = PureState(config.state)
    n = config.axis("n")
    m = config.axis("m")
    via_state = route_state_update(n, m)
    via_product = route_operator_product(psi, n, m)
    qm_value = conditional_expectation(psi, projector(m), projector(n))
    hv = {
        "route_state_update": via_state.integral(),
        "route_operator_product": via_product.integral(),
    }
    qm = {"conditional_expectation": qm_value}
    err = max(abs(v - qm_value) for v in hv.values())
    traces = {
        "route_a": via_state.values,
        "route_b": via_product.values,
        "difference": via_state.values - via_product.values,
    }
    return hv, qm, err, [], err <= config.tolerance, [], traces


def _run_nonuniqueness(config: ScenarioConfig):
    psi = PureState(config.state)
    n = config.axis("n")
    m = config.axis("m")
    via_state = route_state_update(n, m)
    via_product = route_operator_product(psi, n, m)
    witness = nonuniqueness_witness(psi, n, m)
    qm_value = conditional_expectation(psi, projector(m), projector(n))
    hv = {
        "route_state_update": via_state.integral(),
        "route_operator_product": via_product.integral(),
        "disagreement_measure": witness.measure,
    }
    qm = {"conditional_expectation": qm_value}
    err = max(
        abs(hv["route_state_update"] - qm_value),
        abs(hv["route_operator_product"] - qm_value),
    )
    notes = []
    if witness.measure == 0.0:
        notes.append("degenerate agreement: the two routes coincide identically")
    else:
        notes.append(
            "the two routes agree on averages but disagree pointwise on a set of "
            f"measure {witness.measure!r}"
        )
    traces = {
        "route_a": via_state.values,
        "route_b": via_product.values,
        "difference": via_state.values - via_product.values,
    }
    return hv, qm, err, _witness_dicts(witness), err <= config.tolerance, notes, traces


def _run_classical_rule(config: ScenarioConfig):
    psi = PureState(config.state)
    n = config.axis("n")
    m = config.axis("m")
    classical = classical_conditional(psi, m, n)
    qm_value = conditional_expectation(psi, projector(m), projector(n))
    violation = abs(classical - qm_value)
    cross = np.cross(n, m)
    collinear = float(np.sqrt(cross @ cross)) <= 1e-9
    hv = {"classical_conditional": classical, "violation": violation}
    qm = {"conditional_expectation": qm_value}
    observed = bell_value(psi, m).values
    condition = bell_value(psi, n).values
    traces = {
        "indicator_observed": observed,
        "indicator_condition": condition,
        "intersection": observed * condition,
    }
    if collinear:
        notes = ["commuting axes: classical conditioning must match the quantum value"]
        if violation > config.tolerance and cosine_between(n, psi.bloch) == 0.0:
            notes.append(
                "state is exactly orthogonal to the axes: under the sign(0) = +1 "
                "convention the opposite-axis maps coincide instead of complementing, "
                "so the identity fails on this measure-zero input locus"
            )
        err = violation
        passed = violation <= config.tolerance
    else:
        notes = [
            "non-commuting axes: the intersection rule conditions both indicators on the "
            "same original state, so a violation of the quantum conditional value is expected"
        ]
        if violation > config.tolerance:
            notes.append(f"violation observed: |classical - quantum| = {violation!r}")
        else:
            notes.append("no violation at this particular geometry")
        err = 0.0
        passed = True
    return hv, qm, err, [], passed, notes, traces


def _run_sum_conflict(config: ScenarioConfig):
    psi = PureState(config.state)
    n = config.axis("n")
    m = config.axis("m")
    lam = config.lam
    witness = sum_conflict_witness(psi, n, m, lam)
    mixture = lam * projector(n) + (1.0 - lam) * projector(m)
    lhs = bell_value_operator(psi, mixture).values
    map_n = bell_value(psi, n).values
    map_m = bell_value(psi, m).values
    rhs = lam * map_n + (1.0 - lam) * map_m
    qm_value = expectation(psi, mixture)
    hv = {
        "mixture_map_integral": lhs.integrate(),
        "mixture_of_maps_integral": rhs.integrate(),
        "disagreement_measure": witness.measure,
    }
    qm = {"mixture_expectation": qm_value}
    err = max(
        abs(hv["mixture_map_integral"] - qm_value),
        abs(hv["mixture_of_maps_integral"] - qm_value),
    )
    both_zero = complement(map_n) * complement(map_m)
    both_one = map_n * map_m
    missing_zero = (both_zero * complement(witness.omega_region)).integrate()
    missing_one = (both_one * complement(witness.omega_region)).integrate()
    covered = missing_zero == 0.0 and missing_one == 0.0
    notes = [
        f"both-projectors-zero region has measure {both_zero.integrate()!r}",
        f"both-projectors-one region has measure {both_one.integrate()!r}",
    ]
    if not covered:
        notes.append("witness fails to cover a region it must contain")
    passed = err <= config.tolerance and covered
    traces = {"mixture_map": lhs, "mixture_of_maps": rhs, "difference": lhs - rhs}
    return hv, qm, err, _witness_dicts(witness), passed, notes, traces


def _run_branching_chain(config: ScenarioConfig):
    psi = PureState(config.state)
    axes = [config.axis("n"), config.axis("m")]
    if "c" in config.axes:
        axes.append(config.axis("c"))
    history = BranchHistory(psi)
    for axis in axes:
        history, _ = branch(history, axis)
    k = history.depth
    order_values = {
        order: integrate_in_order(history, order, config.normalize_all_levels)
        for order in permutations(range(1, k + 1))
    }
    values = list(order_values.values())
    spread = max(values) - min(values)
    joint_integral = joint_function(history, config.normalize_all_levels).integrate()
    if config.normalize_all_levels:
        qm_value = 1.0
        qm = {"normalized_total": qm_value}
    else:
        sequence = [projector(a) for a in axes]
        qm_value = chain_probability(psi, sequence) / chain_probability(psi, sequence[:-1])
        qm = {"final_outcome_conditional": qm_value}
    hv = {
        "joint_integral": joint_integral,
        "order_spread": spread,
    }
    err = max(spread, max(abs(v - qm_value) for v in values), abs(joint_integral - qm_value))
    traces = {
        f"level_{node.level}": node.level_function for node in history.nodes
    }
    notes = [f"levels: {k}; integration orders checked: {len(order_values)}"]
    details = {"branch_tree": branching.branch_records(history)}
    return hv, qm, err, [], err <= config.tolerance, notes, traces, details


def _run_idempotence(config: ScenarioConfig):
    psi = PureState(config.state)
    axis = config.axis("n")
    branching.repeated_measurement_check(psi, axis)  # raises on orthogonal input
    # first measurement, then three repetitions of the same axis
    history, _ = branch(BranchHistory(psi), axis)
    functions = [history.nodes[0].level_function]
    for _ in range(3):
        history, _ = branch(history, axis)
        functions.append(history.nodes[-1].level_function)
    unit = constant(1.0)
    deviations = [
        max(abs(v - 1.0) for v in fn.values) for fn in functions[1:]
    ]
    exactly_one = all(fn == unit for fn in functions[1:])
    hv = {
        "level_2_max_deviation": deviations[0],
        "levels_3_4_max_deviation": max(deviations[1:]),
    }
    qm = {"repeated_outcome_probability": 1.0}
    err = max(deviations)
    notes = []
    if exactly_one:
        notes.append("levels 2..4 are identically the constant 1")
    else:
        notes.append("a repeated level deviates from the constant 1")
    traces = {f"level_{i + 1}": fn for i, fn in enumerate(functions)}
    return hv, qm, err, [], exactly_one and err == 0.0, notes, traces


def _run_sweep_scenario(config: ScenarioConfig):
    seed = config.seed if config.seed is not None else 0
    trials = config.trials if config.trials is not None else DEFAULT_SWEEP_TRIALS
    summary = run_sweep(seed, trials, tolerance=config.tolerance)
    skip = ("pass", "failures", "trials", "seed", "max_abs_error")
    hv = {key: summary[key] for key in summary if key not in skip}
    notes = [f"seed={seed} trials={trials}"] + summary["failures"]
    return hv, {}, summary["max_abs_error"], [], summary["pass"], notes, {}


_EXECUTORS: dict[str, Callable] = {
    "measure_reproduction": _run_measure_reproduction,
    "sandwich": _run_sandwich,
    "route_agreement": _run_route_agreement,
    "nonuniqueness": _run_nonuniqueness,
    "classical_rule": _run_classical_rule,
    "sum_conflict": _run_sum_conflict,
    "branching_chain": _run_branching_chain,
    "idempotence": _run_idempotence,
    "sweep": _run_sweep_scenario,
}


def _execute(config: ScenarioConfig):
    executor = _EXECUTORS[config.scenario]
    try:
        result = executor(config)
    except HvlabError as exc:
        raise ScenarioError(f"scenario {config.scenario!r}: {exc}") from exc
    if len(result) == 7:
        result = (*result, {})
    return result


def run_scenario(config: ScenarioConfig) -> ScenarioReport:
    """Execute one named scenario and return its report."""
    start = time.perf_counter()
    hv, qm, err, witnesses, passed, notes, _traces, details = _execute(config)
    runtime_ms = (time.perf_counter() - start) * 1000.0
    return ScenarioReport(
        scenario=config.scenario,
        inputs=_inputs_echo(config),
        hv_values=hv,
        qm_values=qm,
        max_abs_error=err,
        witnesses=witnesses,
        passed=passed,
        notes=notes,
        details=details,
        runtime_ms=runtime_ms,
    )


def scenario_traces(config: ScenarioConfig) -> dict[str, StepFunction]:
    """The omega-trace functions a scenario produces (may be empty)."""
    return _execute(config)[6]


# ---------------------------------------------------------------------------
# randomized property sweeps
# ---------------------------------------------------------------------------


def _random_unit(rng: np.random.Generator) -> np.ndarray:
    while True:
        v = rng.normal(size=3)
        norm = math.sqrt(float(v @ v))
        if norm > 1e-6:
            u = v / norm
            u.flags.writeable = False
            return u


def run_sweep(seed: int, trials: int, tolerance: float = DEFAULT_TOLERANCE) -> dict:
    """Seeded randomized sweep over the package's core invariants.

    Samples unit vectors from a fixed-seed generator, checks measure
    reproduction, route agreement on averages, genericity of pointwise route
    disagreement, order-independent integration, idempotence, branch
    completeness and outcome-tree conservation, and reports counts, worst-case
    errors, and any failing inputs verbatim.
    """
    if trials < 1:
        raise ValidationError("trials must be at least 1")
    rng = np.random.default_rng(seed)
    failures: list[str] = []

    max_measure_error = 0.0
    for _ in range(trials):
        s, m = _random_unit(rng), _random_unit(rng)
        psi = PureState(s)
        got = bell_value(psi, m).integral()
        want = expectation(psi, projector(m))
        err = abs(got - want)
        if err > max_measure_error:
            max_measure_error = err
        if err > tolerance:
            failures.append(f"measure_reproduction s={s.tolist()} m={m.tolist()} error={err!r}")

    max_route_error = 0.0
    disagreeing = 0
    route_trials = 0
    while route_trials < trials:
        s, n, m = _random_unit(rng), _random_unit(rng), _random_unit(rng)
        if 1.0 + float(np.dot(n, s)) <= 1e-6:
            continue
        route_trials += 1
        psi = PureState(s)
        want = 0.5 * (1.0 + cosine_between(n, m))
        a = route_state_update(n, m).integral()
        b = route_operator_product(psi, n, m).integral()
        err = max(abs(a - want), abs(b - want))
        if err > max_route_error:
            max_route_error = err
        if err > tolerance:
            failures.append(f"route_agreement s={s.tolist()} n={n.tolist()} m={m.tolist()} error={err!r}")
        if (
            abs(cosine_between(n, m)) < 1.0 - 1e-6
            and abs(cosine_between(n, s)) < 1.0 - 1e-6
            and nonuniqueness_witness(psi, n, m).measure > 0.0
        ):
            disagreeing += 1

    order_trials = min(trials, 1000)
    max_order_spread = 0.0
    max_completeness_error = 0.0
    for _ in range(order_trials):
        s = _random_unit(rng)
        history = BranchHistory(PureState(s))
        depth = int(rng.integers(2, 4))
        dead = False
        for _ in range(depth):
            axis = _random_unit(rng)
            selected, comp = branch(history, axis)
            comp_total = selected.nodes[-1].normalizer + comp.nodes[-1].normalizer
            max_completeness_error = max(max_completeness_error, abs(comp_total - 1.0))
            if selected.zero_probability:
                dead = True
                break
            history = selected
        if dead:
            continue
        values = [
            integrate_in_order(history, order)
            for order in permutations(range(1, history.depth + 1))
        ]
        spread = max(values) - min(values)
        if spread > max_order_spread:
            max_order_spread = spread
        if spread > tolerance:
            failures.append(f"order_independence s={s.tolist()} spread={spread!r}")

    idempotence_failures = 0
    for _ in range(order_trials):
        s, axis = _random_unit(rng), _random_unit(rng)
        if 1.0 + float(np.dot(s, axis)) <= 1e-6:
            continue
        assignment = branching.repeated_measurement_check(PureState(s), axis)
        if assignment.values != constant(1.0):
            idempotence_failures += 1
            failures.append(f"idempotence s={s.tolist()} axis={axis.tolist()}")

    tree_trials = min(trials, 100)
    max_tree_error = 0.0
    for _ in range(tree_trials):
        s = _random_unit(rng)
        depth = int(rng.integers(1, 5))
        axes = [_random_unit(rng) for _ in range(depth)]
        table = branching.outcome_probabilities(PureState(s), axes)
        err = abs(sum(table.values()) - 1.0)
        if err > max_tree_error:
            max_tree_error = err
        if err > tolerance:
            failures.append(f"tree_conservation s={s.tolist()} depth={depth} error={err!r}")

    disagreement_fraction = disagreeing / route_trials if route_trials else 1.0
    if disagreement_fraction < 0.99:
        failures.append(
            f"nonuniqueness fraction {disagreement_fraction!r} below the 99% genericity bound"
        )

    max_abs_error = max(
        max_measure_error, max_route_error, max_order_spread, max_completeness_error, max_tree_error
    )
    return {
        "seed": seed,
        "trials": trials,
        "max_measure_error": max_measure_error,
        "max_route_error": max_route_error,
        "nonuniqueness_fraction": disagreement_fraction,
        "max_order_spread": max_order_spread,
        "idempotence_failures": idempotence_failures,
        "max_completeness_error": max_completeness_error,
        "max_tree_error": max_tree_error,
        "max_abs_error": max_abs_error,
        "failures": failures,
        "pass": not failures and idempotence_failures == 0 and max_abs_error <= tolerance,
    }


# ---------------------------------------------------------------------------
# omega-grid traces
# ---------------------------------------------------------------------------


def emit_trace(config: ScenarioConfig, out_dir) -> list[Path]:
    """Write one ``omega,value`` CSV per step function the scenario produces.

    Sampling points are a uniform grid of ``grid_points`` plus every exact
    breakpoint, so no step edge is missed; values carry 17 significant digits
    and re-integrate (breakpoint-aware) to the reported integrals.  Returns
    the written paths; an empty list means the scenario has no traces.
    """
    traces = scenario_traces(config)
    out = Path(out_dir)
    if not traces:
        return []
    out.mkdir(parents=True, exist_ok=True)
    written = []
    grid = np.linspace(OMEGA_MIN, OMEGA_MAX, config.grid_points)
    for role, fn in traces.items():
        omegas = np.union1d(grid, np.asarray(fn.breakpoints, dtype=float))
        values = fn(omegas)
        path = out / f"{config.scenario}__{role}.csv"
        with path.open("w", encoding="utf-8") as stream:
            stream.write("omega,value\n")
            for omega, value in zip(omegas, values):
                stream.write(f"{omega:.17g},{value:.17g}\n")
        written.append(path)
    return written
