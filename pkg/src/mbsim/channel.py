"""Deterministic LoS beam-port channel and channel-estimation noise.

The channel between two 16-port front ends at a single carrier is the rank-1
outer product of the receive- and transmit-side complex beam responses scaled
by the free-space path loss and hardware losses. The user selects the receive
beam with the highest power, which reduces the 16x16 matrix to a 16-element
effective channel vector.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arraymodel import FrontEnd, response_matrix
from .errors import DegenerateChannelError

SPEED_OF_LIGHT = 299_792_458.0


def db_to_linear(db: float) -> float:
    return 10.0 ** (np.asarray(db, dtype=float) / 10.0)


@dataclass(frozen=True)
class LinkBudget:
    """Link-budget parameters; powers in dBm, loss in dB."""

    tx_power_dbm: float = 3.0
    carrier_hz: float = 26e9
    bandwidth_hz: float = 20e6
    noise_density_dbmhz: float = -174.0
    noise_figure_db: float = 9.0
    distance_m: float = 5.0
    hardware_loss_db: float = 0.0

    def __post_init__(self):
        if self.distance_m <= 0:
            raise ValueError(f"distance must be > 0 m, got {self.distance_m}")
        if self.bandwidth_hz <= 0:
            raise ValueError(f"bandwidth must be > 0 Hz, got {self.bandwidth_hz}")
        if self.carrier_hz <= 0:
            raise ValueError(f"carrier must be > 0 Hz, got {self.carrier_hz}")
        if not np.isfinite(self.noise_power_dbm):
            raise ValueError("derived noise power is not finite")

    @property
    def wavelength_m(self) -> float:
        return SPEED_OF_LIGHT / self.carrier_hz

    @property
    def tx_power_mw(self) -> float:
        return float(db_to_linear(self.tx_power_dbm))

    @property
    def noise_power_dbm(self) -> float:
        return self.noise_density_dbmhz + 10.0 * np.log10(self.bandwidth_hz) + self.noise_figure_db

    @property
    def hardware_loss_linear(self) -> float:
        """Linear power gain (<= 1 for positive loss)."""
        return float(db_to_linear(-self.hardware_loss_db))


def path_loss(budget: LinkBudget) -> float:
    """Free-space power gain (lambda / 4 pi d)^2, linear."""
    return float((budget.wavelength_m / (4.0 * np.pi * budget.distance_m)) ** 2)


def noise_power(budget: LinkBudget) -> float:
    """Receiver noise power N0*B*F in linear mW."""
    return float(db_to_linear(budget.noise_power_dbm))


@dataclass(frozen=True)
class UserPlacement:
    """One user's geometry relative to the base station."""

    theta_bs_deg: float  # user azimuth seen from the BS array
    theta_k_deg: float  # BS azimuth seen from the user array (user rotation)
    budget: LinkBudget


def synth_channel(tx: FrontEnd, rx: FrontEnd, place: UserPlacement) -> np.ndarray:
    """Rank-1 beam-port channel, shape (rx ports, tx ports).

    Entry (n, m) = rx response of port n toward the BS times tx response of
    port m toward the user, scaled by sqrt(path loss * hardware loss).
    """
    resp_tx = response_matrix(tx, place.theta_bs_deg)
    resp_rx = response_matrix(rx, place.theta_k_deg)
    scale = np.sqrt(path_loss(place.budget) * place.budget.hardware_loss_linear)
    return scale * np.outer(resp_rx, resp_tx)


def select_beam(H: np.ndarray) -> np.ndarray:
    """One-hot receive-beam selector at the row with the highest total power.

    Ties break toward the lowest port index.
    """
    row_power = np.sum(np.abs(H) ** 2, axis=1)
    if not np.any(row_power > 0):
        raise DegenerateChannelError("all-zero channel matrix, no beam to select")
    w = np.zeros(H.shape[0], dtype=int)
    w[int(np.argmax(row_power))] = 1
    return w


def effective_channel(H: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Selected row of the channel matrix as a column vector (tx-port dimension)."""
    return (w @ H).astype(complex)


def selected_port(w: np.ndarray) -> int:
    """1-based port index of a one-hot selector."""
    return int(np.argmax(w)) + 1


def estimation_noise_std(budget: LinkBudget, num_ports: int, scale: float = 1.0) -> float:
    """Per-entry complex std of the channel-estimation error.

    Total error power is scale * N / p_tx, split equally over the ports.
    """
    var_total = scale * noise_power(budget) / budget.tx_power_mw
    return float(np.sqrt(var_total / num_ports))


def estimate_channel(h: np.ndarray, budget: LinkBudget, rng: np.random.Generator,
                     scale: float = 1.0) -> np.ndarray:
    """Noisy channel estimate h + e with circularly-symmetric Gaussian error."""
    std = estimation_noise_std(budget, h.shape[-1], scale)
    e = rng.standard_normal(h.shape) + 1j * rng.standard_normal(h.shape)
    return h + std / np.sqrt(2.0) * e
