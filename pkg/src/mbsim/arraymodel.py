"""Transmit/receive front-end models.

Covers the uniform linear array geometry, per-element azimuth patterns, the
16x16 multi-beam phase-shift network and the resulting per-port complex beam
responses. All angles are azimuth in degrees, 0 deg = broadside, positive
toward increasing element index.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, minimize_scalar

# (peak power gain dBi, azimuth half-power beamwidth deg) per element type.
# The cosine-power exponent of each pattern is fitted to the HPBW; isotropic
# elements are flat so no beamwidth applies.
ELEMENT_DEFAULTS = {
    "isotropic": (0.0, None),
    "quasi_yagi": (4.0, 160.0),
    "patch": (6.0, 55.0),
}


def _cosine_exponent(hpbw_deg: float) -> float:
    """Exponent q such that cos(theta)**q drops to 1/2 at half the beamwidth."""
    half = np.radians(hpbw_deg / 2.0)
    return float(np.log(0.5) / np.log(np.cos(half)))


@dataclass(frozen=True, eq=False)
class UlaConfig:
    """Uniform linear array geometry plus element pattern."""

    num_elements: int = 16
    spacing_wavelengths: float = 0.5
    element_pattern: str = "quasi_yagi"
    element_peak_gain_dbi: float | None = None
    element_hpbw_deg: float | None = None

    def __post_init__(self):
        if self.num_elements < 1:
            raise ValueError(f"num_elements must be >= 1, got {self.num_elements}")
        if self.spacing_wavelengths <= 0:
            raise ValueError(f"spacing must be > 0, got {self.spacing_wavelengths}")
        if self.element_pattern not in ELEMENT_DEFAULTS:
            raise ValueError(f"unknown element pattern {self.element_pattern!r}")
        gain, hpbw = ELEMENT_DEFAULTS[self.element_pattern]
        if self.element_peak_gain_dbi is None:
            object.__setattr__(self, "element_peak_gain_dbi", gain)
        if self.element_hpbw_deg is None:
            object.__setattr__(self, "element_hpbw_deg", hpbw)
        if not np.isfinite(self.element_peak_gain_dbi):
            raise ValueError("element_peak_gain_dbi must be finite")

    def element_power_gain(self, theta_deg):
        """Linear power gain of one element toward azimuth theta (vectorized)."""
        theta = np.radians(np.asarray(theta_deg, dtype=float))
        g_peak = 10.0 ** (self.element_peak_gain_dbi / 10.0)
        if self.element_pattern == "isotropic":
            return np.full_like(theta, g_peak)
        q = _cosine_exponent(self.element_hpbw_deg)
        return g_peak * np.clip(np.cos(theta), 0.0, None) ** q


@dataclass(frozen=True, eq=False)
class ButlerNetwork:
    """Phase-shift network mapping beam-port excitations to element excitations.

    The stored transfer is power-normalized so that
    transfer @ transfer^H = (1/n) * I; each row and column has norm 1/sqrt(n).
    """

    transfer: np.ndarray

    @property
    def num_ports(self) -> int:
        return self.transfer.shape[1]

    def port_excitation(self, port: int) -> np.ndarray:
        """Unit-norm element excitation for unit input power at a beam port (1-based)."""
        if not 1 <= port <= self.num_ports:
            raise ValueError(f"port must be in 1..{self.num_ports}, got {port}")
        col = self.transfer[:, port - 1]
        return col / np.linalg.norm(col)


def butler_network(n: int) -> ButlerNetwork:
    """Ideal DFT-equivalent multi-beam network with n beam ports and n elements.

    Port k (1-based) applies the progressive phase that points its beam at
    sin(theta) = (2k - n - 1) / n for half-wavelength spacing.
    """
    if n < 1 or (n & (n - 1)) != 0:
        raise ValueError(f"port count must be a power of two, got {n}")
    m = np.arange(n)[:, None]  # element index
    k = np.arange(1, n + 1)[None, :]  # beam port
    transfer = np.exp(-2j * np.pi * m * (2 * k - n - 1) / (2 * n)) / n
    return ButlerNetwork(transfer=transfer)


def identity_network(n: int) -> ButlerNetwork:
    """Pass-through network: each digital port feeds one element directly."""
    return ButlerNetwork(transfer=np.eye(n, dtype=complex) / np.sqrt(n))


@dataclass(frozen=True, eq=False)
class FrontEnd:
    """One side of the link: array geometry plus its feed network."""

    kind: str  # "multi_beam_butler" or "patch_direct"
    ula: UlaConfig
    network: ButlerNetwork

    @property
    def num_ports(self) -> int:
        return self.network.num_ports


def multi_beam_frontend(num_elements: int = 16, **ula_kwargs) -> FrontEnd:
    ula = UlaConfig(num_elements=num_elements, **ula_kwargs)
    return FrontEnd("multi_beam_butler", ula, butler_network(num_elements))


def patch_frontend(num_elements: int = 16, **ula_kwargs) -> FrontEnd:
    ula_kwargs.setdefault("element_pattern", "patch")
    ula = UlaConfig(num_elements=num_elements, **ula_kwargs)
    return FrontEnd("patch_direct", ula, identity_network(num_elements))


def _check_angle(theta_deg) -> np.ndarray:
    theta = np.asarray(theta_deg, dtype=float)
    if np.any(theta < -90.0) or np.any(theta > 90.0):
        raise ValueError("azimuth must lie in [-90, 90] degrees")
    return theta


def steering_vector(ula: UlaConfig, theta_deg: float) -> np.ndarray:
    """Per-element plane-wave phases toward azimuth theta; unit-magnitude entries."""
    theta = _check_angle(theta_deg)
    m = np.arange(ula.num_elements)
    phase = 2.0 * np.pi * ula.spacing_wavelengths * np.sin(np.radians(theta))
    return np.exp(1j * np.multiply.outer(phase, m)) if np.ndim(theta) else np.exp(1j * phase * m)


def beam_port_response(front: FrontEnd, port: int, theta_deg) -> complex | np.ndarray:
    """Complex far-field response of one beam port toward azimuth theta.

    Magnitude squared is the port's power gain (dBi when log-scaled), the
    argument is the port's phase. Unit input power excites the port.
    """
    theta = _check_angle(theta_deg)
    exc = front.network.port_excitation(port)
    amp = np.sqrt(front.ula.element_power_gain(theta))
    a = steering_vector(front.ula, theta)
    return amp * (a @ exc)


def response_matrix(front: FrontEnd, theta_deg: float) -> np.ndarray:
    """Complex responses of all ports toward one azimuth, shape (num_ports,)."""
    theta = _check_angle(theta_deg)
    exc = front.network.transfer / np.linalg.norm(front.network.transfer, axis=0)
    amp = np.sqrt(front.ula.element_power_gain(theta))
    return amp * (steering_vector(front.ula, theta) @ exc)


def pattern_table(front: FrontEnd, theta_grid) -> np.ndarray:
    """Dense complex response table, shape (len(grid), num_ports)."""
    grid = np.asarray(theta_grid, dtype=float)
    if grid.size == 0:
        raise ValueError("theta grid must be non-empty")
    if np.any(np.diff(grid) < 0):
        raise ValueError("theta grid must be sorted ascending")
    _check_angle(grid)
    exc = front.network.transfer / np.linalg.norm(front.network.transfer, axis=0)
    amp = np.sqrt(front.ula.element_power_gain(grid))[:, None]
    return amp * (steering_vector(front.ula, grid) @ exc)


def _power_derivative(front: FrontEnd, port: int, theta_deg: float) -> float:
    """Analytic d/dtheta of the port's power pattern (per radian)."""
    theta = np.radians(theta_deg)
    ula = front.ula
    exc = front.network.port_excitation(port)
    m = np.arange(ula.num_elements)
    c = 2.0 * np.pi * ula.spacing_wavelengths
    a = np.exp(1j * c * m * np.sin(theta))
    s = a @ exc
    ds = (1j * c * np.cos(theta) * m * a) @ exc
    g = float(ula.element_power_gain(theta_deg))
    if ula.element_pattern == "isotropic":
        dg = 0.0
    else:
        q = _cosine_exponent(ula.element_hpbw_deg)
        dg = -q * np.tan(theta) * g
    return float(dg * np.abs(s) ** 2 + g * 2.0 * np.real(np.conj(s) * ds))


def beam_peak_angle(front: FrontEnd, port: int) -> float:
    """Azimuth (deg) maximizing |beam_port_response| for one port.

    Refines the coarse grid maximum by root-finding the analytic power
    derivative, which locates the peak to machine precision.
    """
    grid = np.linspace(-90.0, 90.0, 3601)
    power = np.abs(pattern_table(front, grid)[:, port - 1]) ** 2
    i = int(np.argmax(power))
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, grid.size - 1)]
    dlo = _power_derivative(front, port, lo)
    dhi = _power_derivative(front, port, hi)
    if dlo > 0 > dhi:
        return float(brentq(lambda t: _power_derivative(front, port, t), lo, hi,
                            xtol=1e-13, rtol=1e-15))
    # flat or boundary peak: fall back to bounded search
    res = minimize_scalar(
        lambda t: -np.abs(beam_port_response(front, port, t)) ** 2,
        bounds=(lo, hi), method="bounded", options={"xatol": 1e-10})
    return float(res.x)


def beam_hpbw(front: FrontEnd, port: int) -> float:
    """Half-power beamwidth (deg) of one port's main lobe."""
    peak = beam_peak_angle(front, port)
    p_peak = np.abs(beam_port_response(front, port, peak)) ** 2

    def rel(t):
        return np.abs(beam_port_response(front, port, t)) ** 2 / p_peak - 0.5

    step = 0.05
    hi = peak
    while hi < 90.0 and rel(min(hi + step, 90.0)) > 0:
        hi += step
    lo = peak
    while lo > -90.0 and rel(max(lo - step, -90.0)) > 0:
        lo -= step
    upper = brentq(rel, peak, min(hi + step, 90.0)) if hi < 90.0 else 90.0
    lower = brentq(rel, max(lo - step, -90.0), peak) if lo > -90.0 else -90.0
    return float(upper - lower)


def write_pattern_csv(path, front: FrontEnd, theta_grid) -> None:
    """Export the pattern table as CSV: theta_deg,port,gain_dbi,phase_rad."""
    grid = np.asarray(theta_grid, dtype=float)
    table = pattern_table(front, grid)
    power = np.abs(table) ** 2
    gain_dbi = 10.0 * np.log10(np.maximum(power, 1e-300))
    phase = np.angle(table)
    with open(path, "w", newline="\n") as f:
        f.write("theta_deg,port,gain_dbi,phase_rad\n")
        for i, theta in enumerate(grid):
            for p in range(table.shape[1]):
                f.write(f"{theta:.6g},{p + 1},{gain_dbi[i, p]:.6g},{phase[i, p]:.6g}\n")
