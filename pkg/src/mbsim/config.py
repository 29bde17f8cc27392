"""JSON run configuration with Table-of-parameters defaults.

A single flat JSON document configures a whole campaign; unspecified keys
fall back to the default measurement scenario (26 GHz carrier, 20 MHz,
3 dBm, 5 m, -174 dBm/Hz, 9 dB noise figure, K sweep 1..16, +-60 deg user
angles, user rotation 4 deg, 1000 realizations, 100 estimations).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .channel import LinkBudget
from .experiment import FRONTENDS, PRECODER_TAGS, ScenarioConfig

_DEFAULTS = {
    "users": list(range(1, 17)),
    "theta_bs_range_deg": 60.0,
    "theta_k_deg": 4.0,
    "realizations": 1000,
    "estimations": 100,
    "seed": 1,
    "frontends": ["butler", "patch"],
    "precoders": ["analog", "mr", "zf", "rzf"],
    "carrier_hz": 26e9,
    "bandwidth_hz": 20e6,
    "tx_power_dbm": 3.0,
    "distance_m": 5.0,
    "noise_density_dbmhz": -174.0,
    "noise_figure_db": 9.0,
    "hardware_loss_db": 0.0,
    "tau_ratio": 1.0,
    "estimation_noise_scale": 1.0,
    "fixed_rx_gain_dbi": None,
    "total_power_constraint": False,
    "mode": "synthesize",
    "trace": None,
}


@dataclass(frozen=True)
class ExperimentPlan:
    """Resolved campaign configuration: scenario matrix plus shared settings."""

    users: tuple
    frontends: tuple
    precoders: tuple
    budget: LinkBudget
    theta_bs_range_deg: float
    theta_k_deg: float
    realizations: int
    estimations: int
    seed: int
    tau_ratio: float
    estimation_noise_scale: float
    fixed_rx_gain_dbi: float | None
    total_power_constraint: bool
    mode: str
    trace_path: str | None
    raw: dict = field(default_factory=dict)

    def scenarios(self, trace=None):
        """One ScenarioConfig per (user count, frontend)."""
        for k in self.users:
            for fe in self.frontends:
                yield ScenarioConfig(
                    num_users=k,
                    theta_bs_range_deg=self.theta_bs_range_deg,
                    theta_k_deg=self.theta_k_deg,
                    realizations=self.realizations,
                    estimations=self.estimations,
                    seed=self.seed,
                    tx_frontend=fe,
                    precoders=self.precoders,
                    budget=self.budget,
                    tau_ratio=self.tau_ratio,
                    mode=self.mode,
                    estimation_noise_scale=self.estimation_noise_scale,
                    fixed_rx_gain_dbi=self.fixed_rx_gain_dbi,
                    total_power_constraint=self.total_power_constraint,
                    trace=trace,
                )


def _require_range(name, value, lo, hi):
    if not lo <= value <= hi:
        raise ValueError(f"config key {name!r}: value {value} outside [{lo}, {hi}]")


def resolve_config(doc: dict) -> ExperimentPlan:
    """Validate a flat config dict and fill defaults."""
    unknown = set(doc) - set(_DEFAULTS)
    if unknown:
        raise ValueError(f"unknown config key: {sorted(unknown)[0]!r}")
    cfg = dict(_DEFAULTS)
    cfg.update({k: v for k, v in doc.items() if v is not None or k in ("fixed_rx_gain_dbi", "trace")})

    users = cfg["users"]
    if isinstance(users, int):
        users = [users]
    users = [int(k) for k in users]
    for k in users:
        _require_range("users", k, 1, 16)

    frontends = list(cfg["frontends"])
    for fe in frontends:
        if fe not in FRONTENDS:
            raise ValueError(f"config key 'frontends': unknown frontend {fe!r}")
    precoders = list(cfg["precoders"])
    for p in precoders:
        if p not in PRECODER_TAGS:
            raise ValueError(f"config key 'precoders': unknown precoder {p!r}")

    _require_range("realizations", int(cfg["realizations"]), 1, 10**9)
    _require_range("estimations", int(cfg["estimations"]), 1, 10**9)
    _require_range("theta_bs_range_deg", float(cfg["theta_bs_range_deg"]), 0.0, 90.0)
    _require_range("theta_k_deg", float(cfg["theta_k_deg"]), -90.0, 90.0)
    _require_range("tau_ratio", float(cfg["tau_ratio"]), 1e-12, 1.0)
    if cfg["mode"] not in ("synthesize", "replay"):
        raise ValueError(f"config key 'mode': must be synthesize or replay, got {cfg['mode']!r}")

    budget = LinkBudget(
        tx_power_dbm=float(cfg["tx_power_dbm"]),
        carrier_hz=float(cfg["carrier_hz"]),
        bandwidth_hz=float(cfg["bandwidth_hz"]),
        noise_density_dbmhz=float(cfg["noise_density_dbmhz"]),
        noise_figure_db=float(cfg["noise_figure_db"]),
        distance_m=float(cfg["distance_m"]),
        hardware_loss_db=float(cfg["hardware_loss_db"]),
    )
    resolved = dict(cfg)
    resolved["users"] = users
    return ExperimentPlan(
        users=tuple(users),
        frontends=tuple(frontends),
        precoders=tuple(precoders),
        budget=budget,
        theta_bs_range_deg=float(cfg["theta_bs_range_deg"]),
        theta_k_deg=float(cfg["theta_k_deg"]),
        realizations=int(cfg["realizations"]),
        estimations=int(cfg["estimations"]),
        seed=int(cfg["seed"]),
        tau_ratio=float(cfg["tau_ratio"]),
        estimation_noise_scale=float(cfg["estimation_noise_scale"]),
        fixed_rx_gain_dbi=(None if cfg["fixed_rx_gain_dbi"] is None
                           else float(cfg["fixed_rx_gain_dbi"])),
        total_power_constraint=bool(cfg["total_power_constraint"]),
        mode=str(cfg["mode"]),
        trace_path=cfg["trace"],
        raw=resolved,
    )


def parse_config(path) -> ExperimentPlan:
    """Load and validate a JSON config file."""
    with open(path) as f:
        doc = json.load(f)
    if not isinstance(doc, dict):
        raise ValueError(f"{path}: config must be a JSON object")
    return resolve_config(doc)
