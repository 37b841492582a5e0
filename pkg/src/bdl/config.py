"""Experiment configuration: JSON parsing, validation, defaults.

Complex numbers in config files are either plain numbers or two-element
``[re, im]`` arrays.  Every tolerance has a default; the seed fully
determines all random draws of a run.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError
from .models import PeriodicChainSpec, TwistSpec

DEFAULT_TOLERANCES: dict[str, float] = {
    "det_m_zero": 1e-8,
    "lse_residual": 1e-8,
    "transfer_action": 1e-9,
    "omega_two_paths": 1e-10,
    "w_det": 1e-10,
    "w_closed_form": 1e-9,
    "w_row_onshell": 1e-9,
    "w_row_offshell_min": 1e-3,
    "w_ray": 1e-8,
    "solution_ray": 1e-8,
    "izergin_oracle": 1e-8,
    "gaudin_spread": 1e-7,
    "gaudin_fd": 1e-6,
    "scalar_product_oracle": 1e-8,
    "maba_oracle": 1e-7,
    "appendix_a": 1e-9,
    "appendix_b": 1e-9,
    "asymptotic_slope": 0.35,
    "onshell_residual": 1e-10,
}

MODEL_TYPES = ("periodic-xxx", "maba-xxx", "degenerate-ytr")


def _as_complex(value, where: str) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2 \
            and all(isinstance(x, (int, float)) for x in value):
        return complex(value[0], value[1])
    raise ConfigError(f"{where}: expected a number or [re, im] pair, got {value!r}")


@dataclass
class ModelConfig:
    type: str
    spec: PeriodicChainSpec | None = None
    twist: TwistSpec | None = None
    degenerate_n: int = 2
    degenerate_c: complex = 1.0


@dataclass
class ExperimentConfig:
    model: ModelConfig
    suite: list[str]
    sizes: list[int]
    draws: int
    seed: int
    tolerances: dict[str, float]
    output_path: str | None
    output_format: str
    raw: dict = field(default_factory=dict)

    def tol(self, name: str) -> float:
        return self.tolerances[name]


def _parse_model(raw: dict) -> ModelConfig:
    if not isinstance(raw, dict):
        raise ConfigError("model block must be an object")
    mtype = raw.get("type")
    if mtype not in MODEL_TYPES:
        raise ConfigError(f"model.type must be one of {MODEL_TYPES}, got {mtype!r}")
    if mtype == "degenerate-ytr":
        n = raw.get("n", 2)
        if not isinstance(n, int) or n < 0:
            raise ConfigError("degenerate model: n must be a non-negative integer")
        c = _as_complex(raw.get("c", 1.0), "model.c")
        if c == 0:
            raise ConfigError("model.c must be nonzero")
        return ModelConfig(type=mtype, degenerate_n=n, degenerate_c=c)

    for key in ("N", "c", "theta", "spins"):
        if key not in raw:
            raise ConfigError(f"model block is missing {key!r}")
    theta = [_as_complex(t, "model.theta") for t in raw["theta"]]
    spins = raw["spins"]
    if not isinstance(spins, list) or not all(isinstance(s, (int, float)) for s in spins):
        raise ConfigError("model.spins must be a list of numbers")
    try:
        spec = PeriodicChainSpec(n_sites=raw["N"], c=_as_complex(raw["c"], "model.c"),
                                 theta=theta, spins=spins)
    except Exception as exc:
        raise ConfigError(f"invalid chain data: {exc}") from exc

    twist = None
    if mtype == "maba-xxx":
        tw = raw.get("twist")
        if not isinstance(tw, dict):
            raise ConfigError("maba model needs a twist block")
        try:
            twist = TwistSpec(
                kappa=_as_complex(tw["kappa"], "twist.kappa"),
                kappa_tilde=_as_complex(tw["kappa_tilde"], "twist.kappa_tilde"),
                kappa_plus=_as_complex(tw["kappa_plus"], "twist.kappa_plus"),
                kappa_minus=_as_complex(tw["kappa_minus"], "twist.kappa_minus"),
                rho1=_as_complex(tw["rho1"], "twist.rho1"),
            )
        except KeyError as exc:
            raise ConfigError(f"twist block is missing {exc.args[0]!r}") from exc
        except Exception as exc:
            raise ConfigError(f"invalid twist data: {exc}") from exc
    return ModelConfig(type=mtype, spec=spec, twist=twist)


def parse_config(raw: dict) -> ExperimentConfig:
    """Validate a configuration dictionary; raises ConfigError on any defect."""
    from .checks import applicable_checks, registry  # local import to avoid a cycle

    if not isinstance(raw, dict):
        raise ConfigError("configuration must be a JSON object")
    model = _parse_model(raw.get("model", {}))

    suite_raw = raw.get("suite", "all")
    allowed = applicable_checks(model.type)
    if suite_raw == "all":
        suite = list(allowed)
    else:
        if not isinstance(suite_raw, list) or not all(isinstance(s, str) for s in suite_raw):
            raise ConfigError("suite must be \"all\" or a list of check names")
        for name in suite_raw:
            if name not in registry():
                raise ConfigError(f"unknown check {name!r}")
            if name not in allowed:
                raise ConfigError(f"check {name!r} does not apply to model type {model.type!r}")
        suite = list(suite_raw)

    sizes_raw = raw.get("sizes", {})
    if not isinstance(sizes_raw, dict):
        raise ConfigError("sizes must be an object")
    sizes = sizes_raw.get("n", [1])
    if not isinstance(sizes, list) or not all(isinstance(x, int) and x >= 0 for x in sizes):
        raise ConfigError("sizes.n must be a list of non-negative integers")

    draws = raw.get("draws", 3)
    if not isinstance(draws, int) or draws < 1:
        raise ConfigError("draws must be a positive integer")

    seed = raw.get("seed", 0)
    if not isinstance(seed, int):
        raise ConfigError("seed must be an integer")

    tolerances = dict(DEFAULT_TOLERANCES)
    for key, val in (raw.get("tolerances") or {}).items():
        if key not in DEFAULT_TOLERANCES:
            raise ConfigError(f"unknown tolerance {key!r}")
        if not isinstance(val, (int, float)) or val <= 0:
            raise ConfigError(f"tolerance {key!r} must be a positive number")
        tolerances[key] = float(val)

    output = raw.get("output") or {}
    if not isinstance(output, dict):
        raise ConfigError("output must be an object")
    output_path = output.get("path")
    if output_path is not None and not isinstance(output_path, str):
        raise ConfigError("output.path must be a string")
    output_format = output.get("format", "json")
    if output_format not in ("json", "csv"):
        raise ConfigError("output.format must be 'json' or 'csv'")

    return ExperimentConfig(model=model, suite=suite, sizes=sizes, draws=draws,
                            seed=seed, tolerances=tolerances,
                            output_path=output_path, output_format=output_format,
                            raw=raw)


def load_config(path: str | Path) -> ExperimentConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    return parse_config(raw)
