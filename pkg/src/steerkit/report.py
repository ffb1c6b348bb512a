"""Scenario runner and report documents.

Each scenario executes the library end-to-end and produces a
ReportDocument that serializes losslessly to the ``steerkit-report/1``
JSON schema or to a line-oriented ``key: value`` text form.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .assemblage import conditional_states, no_signalling_check, purity_profile
from .linalg import DEFAULT_TOL, Tolerances
from .measurements import (
    MeasurementSetting,
    angle_projectors,
    bloch_projectors,
    computational_basis,
    fourier_mub_basis,
)
from .states import ghz_state, nopa_truncated, qudit_schmidt_state, separable_state, theta_state
from .steering import (
    default_candidates,
    ghz_lhv_bruteforce,
    ghz_operator_expectations,
    lhs_feasibility_lp,
    lhs_reconstruct,
    pure_state_paradox,
    separable_lhs_model,
)

SCHEMA_VERSION = "steerkit-report/1"

SCENARIOS = (
    "paradox-qubit",
    "paradox-qudit",
    "paradox-nopa",
    "separable-lhs",
    "feasibility",
    "ghz",
    "sweep",
)

EXIT_OK = 0
EXIT_PRECONDITION = 1
EXIT_NUMERICAL = 2


@dataclass
class RunConfig:
    """One scenario invocation. Unused fields stay at their defaults."""

    scenario: str
    theta: float = np.pi / 4
    d: int = 2
    r: float = 1.0
    k: int = 2
    settings: str = ""
    lambdas: str = ""
    beta_angle: float = np.pi / 4
    alphas: str = "0.3,1.1"
    param: str = ""
    values: str = ""
    linspace: str = ""
    output: str = ""
    format: str = "json"
    tolerances: Tolerances = field(default_factory=lambda: DEFAULT_TOL)

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ValueError(f"unknown scenario {self.scenario!r}; choose from {SCENARIOS}")
        if self.format not in ("json", "text"):
            raise ValueError(f"format must be 'json' or 'text', got {self.format!r}")

    def echo(self) -> dict:
        doc = asdict(self)
        doc["tolerances"] = asdict(self.tolerances)
        return doc


@dataclass
class ReportDocument:
    """Machine-readable record of one scenario run."""

    schema: str
    scenario: str
    config: dict
    result: dict
    checks: dict
    duration_s: float

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    @staticmethod
    def from_json(text: str) -> "ReportDocument":
        doc = json.loads(text)
        return ReportDocument(
            schema=doc["schema"],
            scenario=doc["scenario"],
            config=doc["config"],
            result=doc["result"],
            checks=doc["checks"],
            duration_s=doc["duration_s"],
        )

    def to_text(self) -> str:
        lines = []

        def emit(prefix, value):
            if isinstance(value, dict):
                for k, v in value.items():
                    emit(f"{prefix}.{k}" if prefix else str(k), v)
            elif isinstance(value, list):
                lines.append(f"{prefix}: {json.dumps(value)}")
            else:
                lines.append(f"{prefix}: {value}")

        emit("schema", self.schema)
        emit("scenario", self.scenario)
        emit("config", self.config)
        emit("result", self.result)
        emit("checks", self.checks)
        emit("duration_s", self.duration_s)
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_text()


def parse_qubit_settings(spec: str):
    """Parse a comma-separated qubit settings spec.

    Tokens: ``z``, ``x``, ``y``, ``angle:A`` (radians), or
    ``bloch:nx:ny:nz``.
    """
    axes = {"z": (0.0, 0.0, 1.0), "x": (1.0, 0.0, 0.0), "y": (0.0, 1.0, 0.0)}
    out = []
    for token in spec.split(","):
        token = token.strip()
        if not token:
            continue
        low = token.lower()
        if low in axes:
            out.append(bloch_projectors(axes[low]))
        elif low.startswith("angle:"):
            out.append(angle_projectors(float(token.split(":", 1)[1])))
        elif low.startswith("bloch:"):
            parts = [float(x) for x in token.split(":")[1:]]
            if len(parts) != 3:
                raise ValueError(f"bloch token needs 3 components: {token!r}")
            out.append(bloch_projectors(parts))
        else:
            raise ValueError(f"unknown setting token {token!r}")
    if not out:
        raise ValueError(f"no settings parsed from {spec!r}")
    return out


def parse_qudit_settings(spec: str, d: int):
    """Parse a comma-separated qudit settings spec: ``Z`` and/or ``X``."""
    out = []
    for token in spec.split(","):
        token = token.strip().upper()
        if not token:
            continue
        if token == "Z":
            out.append(computational_basis(d))
        elif token == "X":
            out.append(fourier_mub_basis(d))
        else:
            raise ValueError(f"unknown qudit setting token {token!r}")
    if not out:
        raise ValueError(f"no settings parsed from {spec!r}")
    return out


def _assemblage_checks(asm, tol: Tolerances) -> dict:
    prof = purity_profile(asm, tol)
    return {
        "no_signalling_deviation": no_signalling_check(asm),
        "all_rank_one": prof.all_rank_one,
        "max_purity_residual": max(
            (r.residual_mass for r in prof.reports if not r.vacuous), default=0.0
        ),
    }


def _certificate_exit(cert, tol: Tolerances) -> int:
    if not cert.applicable:
        return EXIT_PRECONDITION
    ok = (
        abs(cert.lhs_trace_sum - cert.k) <= tol.lp
        and abs(cert.quantum_trace_sum - 1.0) <= tol.lp
    )
    return EXIT_OK if ok else EXIT_NUMERICAL


def _run_paradox(psi, settings, cfg: RunConfig):
    tol = cfg.tolerances
    cert = pure_state_paradox(psi, settings, tol)
    checks = {}
    if cert.applicable:
        asm = conditional_states(psi.density_matrix(), settings, (psi.dA, psi.dB), tol)
        checks = _assemblage_checks(asm, tol)
    return cert.to_json(), checks, _certificate_exit(cert, tol)


def run(cfg: RunConfig):
    """Execute one scenario. Returns (ReportDocument, exit code)."""
    t0 = time.perf_counter()
    tol = cfg.tolerances
    code = EXIT_OK

    if cfg.scenario == "paradox-qubit":
        settings = parse_qubit_settings(cfg.settings or "z,x")
        result, checks, code = _run_paradox(theta_state(cfg.theta), settings, cfg)

    elif cfg.scenario == "paradox-qudit":
        if cfg.lambdas:
            lam = np.array([float(x) for x in cfg.lambdas.split(",")])
            lam = lam / np.linalg.norm(lam)
        else:
            lam = np.full(cfg.d, 1 / np.sqrt(cfg.d))
        psi = qudit_schmidt_state(lam)
        settings = parse_qudit_settings(cfg.settings or "Z,X", psi.dA)
        result, checks, code = _run_paradox(psi, settings, cfg)

    elif cfg.scenario == "paradox-nopa":
        psi, tail = nopa_truncated(cfg.r, cfg.d)
        settings = parse_qudit_settings(cfg.settings or "Z,X", cfg.d)
        result, checks, code = _run_paradox(psi, settings, cfg)
        result["truncation_weight"] = tail

    elif cfg.scenario == "separable-lhs":
        beta = np.array([np.cos(cfg.beta_angle), np.sin(cfg.beta_angle)])
        alphas = [float(x) for x in cfg.alphas.split(",")]
        settings = [angle_projectors(al) for al in alphas]
        psi = separable_state(beta)
        model = separable_lhs_model(psi, settings, tol)
        asm = conditional_states(psi.density_matrix(), settings, (2, 2), tol)
        rec = lhs_reconstruct(model, settings, tol)
        dev = max(
            float(np.max(np.abs(rec.state(n, a) - asm.state(n, a))))
            for (n, a) in asm.states
        )
        result = {"model": model.to_json(), "reconstruction_deviation": dev}
        checks = _assemblage_checks(asm, tol)
        code = EXIT_OK if dev <= tol.lp else EXIT_NUMERICAL

    elif cfg.scenario == "feasibility":
        settings = parse_qubit_settings(cfg.settings or "z,x")
        psi = theta_state(cfg.theta)
        asm = conditional_states(psi.density_matrix(), settings, (2, 2), tol)
        outcome = lhs_feasibility_lp(asm, default_candidates(asm, tol), tol)
        result = outcome.to_json()
        checks = _assemblage_checks(asm, tol)

    elif cfg.scenario == "ghz":
        exp = ghz_operator_expectations(ghz_state())
        count, witness = ghz_lhv_bruteforce()
        result = {
            "expectations": list(exp.values),
            "eigenstate_residuals": list(exp.eigenstate_residuals),
            "satisfying_assignments": count,
            "witness_product": witness,
        }
        checks = {"max_eigenstate_residual": max(exp.eigenstate_residuals)}
        expected = [1.0, -1.0, -1.0, -1.0]
        ok = (
            all(abs(v - e) <= tol.eig for v, e in zip(exp.values, expected))
            and count == 0
        )
        code = EXIT_OK if ok else EXIT_NUMERICAL

    elif cfg.scenario == "sweep":
        return _run_sweep(cfg, t0)

    else:  # pragma: no cover - guarded by RunConfig
        raise ValueError(f"unknown scenario {cfg.scenario!r}")

    doc = ReportDocument(
        schema=SCHEMA_VERSION,
        scenario=cfg.scenario,
        config=cfg.echo(),
        result=result,
        checks=checks,
        duration_s=time.perf_counter() - t0,
    )
    return doc, code


def _grid_values(cfg: RunConfig):
    if cfg.values:
        return [float(x) for x in cfg.values.split(",")]
    if cfg.linspace:
        lo, hi, num = cfg.linspace.split(":")
        return list(np.linspace(float(lo), float(hi), int(num)))
    raise ValueError("sweep needs --values or --linspace")


def _sweep_point_config(cfg: RunConfig, value: float) -> RunConfig:
    base = {
        "theta": ("paradox-qubit", {"theta": value}),
        "d": ("paradox-qudit", {"d": int(round(value))}),
        "r": ("paradox-nopa", {"r": value, "d": cfg.d}),
        "k": ("paradox-qubit", {"theta": cfg.theta, "k": int(round(value))}),
    }
    if cfg.param not in base:
        raise ValueError(f"sweep param must be one of {sorted(base)}, got {cfg.param!r}")
    scenario, overrides = base[cfg.param]
    point = RunConfig(scenario=scenario, format=cfg.format, tolerances=cfg.tolerances)
    for key, val in overrides.items():
        setattr(point, key, val)
    if cfg.param == "k":
        # Distinct Bloch settings in the x-z plane, k of them.
        kk = int(round(value))
        angles = [i * np.pi / (2 * kk) for i in range(kk)]
        point.settings = ",".join(f"bloch:{np.sin(2*al):.12g}:0:{np.cos(2*al):.12g}" for al in angles)
    elif cfg.param == "theta":
        point.settings = cfg.settings or "z,x"
    return point


def _run_sweep(cfg: RunConfig, t0: float):
    values = _grid_values(cfg)
    if not values:
        raise ValueError("sweep grid is empty")
    reports = []
    worst = EXIT_OK
    magnitudes = []
    ns_devs = []
    for value in values:
        point = _sweep_point_config(cfg, value)
        doc, code = run(point)
        worst = max(worst, code)
        reports.append(asdict(doc))
        mag = doc.result.get("contradiction_magnitude")
        if mag is not None:
            magnitudes.append(mag)
        dev = doc.checks.get("no_signalling_deviation")
        if dev is not None:
            ns_devs.append(dev)
    summary = {
        "points": len(values),
        "min_contradiction_magnitude": min(magnitudes) if magnitudes else None,
        "max_contradiction_magnitude": max(magnitudes) if magnitudes else None,
        "max_no_signalling_deviation": max(ns_devs) if ns_devs else None,
    }
    doc = ReportDocument(
        schema=SCHEMA_VERSION,
        scenario="sweep",
        config=cfg.echo(),
        result={"reports": reports, "summary": summary},
        checks={"worst_exit_code": worst},
        duration_s=time.perf_counter() - t0,
    )
    return doc, worst
