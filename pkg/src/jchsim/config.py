"""Experiment configuration: pydantic models plus semantic validation.

The models check types only; range and consistency rules live in
``validate`` so that a malformed-but-typed config can be inspected and
reported field by field instead of failing at parse time.
"""
from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict

EXPERIMENTS = ("lambda", "variance", "order-parameter", "benchmark-uv",
               "gate-scaling")
PROTOCOLS = ("statevector", "csp", "vacuum")


class CavityParamsConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    omega: float = 1.0
    g: float = 0.1
    J: float = 0.1


class LatticeConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    L: int = 2
    photon_qubits_per_cavity: int = 2


class PlanConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n_time_steps: int = 20
    n_trotter: int = 1
    total_time_over_T: float = 1.0
    term_order: Literal["grouped", "lex"] = "grouped"


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    experiment: Literal["lambda", "variance", "order-parameter",
                        "benchmark-uv", "gate-scaling"]
    params: CavityParamsConfig = CavityParamsConfig()
    lattice: LatticeConfig = LatticeConfig()
    plan: PlanConfig = PlanConfig()
    detunings: list[float] = [1e-5, 1e5]  # Delta/g values
    protocol: Literal["statevector", "csp", "vacuum"] = "statevector"
    exact_oracle: bool = False
    shots: int = 1024
    n_runs: int = 1
    seed: int = 7
    noise_p: float = 0.0
    jobs: int = 0  # 0 = one worker per detuning, capped by cpu count
    scaling_l_min: int = 2
    scaling_l_max: int = 10
    output: Optional[str] = None


def validate(config: ExperimentConfig) -> list[str]:
    """Semantic diagnostics; empty list iff the config is runnable."""
    diags = []
    if config.params.omega <= 0:
        diags.append("params.omega: must be positive")
    if config.params.g < 0:
        diags.append("params.g: must be nonnegative")
    if config.params.J < 0:
        diags.append("params.J: must be nonnegative")
    if config.lattice.L < 1:
        diags.append("lattice.L: must be >= 1")
    if config.lattice.photon_qubits_per_cavity != 2:
        diags.append("lattice.photon_qubits_per_cavity: only 2 is supported")
    if config.plan.n_time_steps < 1:
        diags.append("plan.n_time_steps: must be >= 1")
    if config.plan.n_trotter < 1:
        diags.append("plan.n_trotter: must be >= 1")
    if config.plan.total_time_over_T <= 0:
        diags.append("plan.total_time_over_T: must be positive")
    if not config.detunings:
        diags.append("detunings: must not be empty")
    if any(d <= 0 for d in config.detunings):
        diags.append("detunings: every Delta/g value must be positive")
    if config.protocol != "statevector" and config.shots < 1:
        diags.append("shots: must be >= 1 when protocol is not statevector")
    if config.n_runs < 1:
        diags.append("n_runs: must be >= 1")
    if not 0 <= config.noise_p <= 1:
        diags.append("noise_p: must lie in [0, 1]")
    if config.noise_p > 0 and config.protocol == "statevector":
        diags.append("noise_p: stochastic noise requires a shot-based protocol")
    if config.jobs < 0:
        diags.append("jobs: must be >= 0")
    if config.experiment == "gate-scaling":
        if config.scaling_l_min < 1:
            diags.append("scaling_l_min: must be >= 1")
        if config.scaling_l_max < config.scaling_l_min:
            diags.append("scaling_l_max: must be >= scaling_l_min")
    if config.experiment in ("lambda",) and config.lattice.L != 2:
        # the overlap experiments are wired for the two-cavity study
        if config.lattice.L < 1:
            diags.append("lattice.L: must be >= 1")
    if config.params.J == 0 and config.experiment in ("lambda", "variance",
                                                      "order-parameter",
                                                      "gate-scaling"):
        diags.append("params.J: must be positive (T = 1/J sets the time scale)")
    return diags
