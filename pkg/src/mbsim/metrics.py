"""Downlink SINR, spectral efficiency and distribution statistics.

SINR for user k applies the precoder (computed from channel estimates) to the
TRUE effective channel: p |h_k^H f_k|^2 over interference plus noise. The
precoder is derived from the same-convention estimates, so zero forcing with
perfect CSI cancels the interference terms exactly.
"""

from __future__ import annotations

import numpy as np


def downlink_sinr(eff_channels: np.ndarray, precoder: np.ndarray,
                  tx_power_mw: float, noise_power_mw: float) -> np.ndarray:
    """Per-user linear SINR.

    eff_channels: true effective channels, shape (..., K, M).
    precoder: unit-norm columns, shape (..., M, K).
    """
    h = np.asarray(eff_channels, dtype=complex)
    f = np.asarray(precoder, dtype=complex)
    gains = np.abs(np.conj(h) @ f) ** 2  # (..., K, K): row k, col i = |h_k^H f_i|^2
    signal = np.diagonal(gains, axis1=-2, axis2=-1)
    interference = gains.sum(axis=-1) - signal
    return tx_power_mw * signal / (tx_power_mw * interference + noise_power_mw)


def sinr_dl(H_list, selectors, precoder, k: int, tx_power_mw: float,
            noise_power_mw: float) -> float:
    """SINR of user k from full channel matrices and one-hot selectors."""
    h = np.stack([w @ H for H, w in zip(H_list, selectors)])
    return float(downlink_sinr(h, precoder, tx_power_mw, noise_power_mw)[k])


def se_user(sinr, tau_ratio: float = 1.0):
    """Individual spectral efficiency tau * log2(1 + SINR), bps/Hz."""
    sinr = np.asarray(sinr, dtype=float)
    if np.any(sinr < 0):
        raise ValueError("SINR must be >= 0")
    if not 0 < tau_ratio <= 1:
        raise ValueError(f"tau ratio must be in (0, 1], got {tau_ratio}")
    return tau_ratio * np.log2(1.0 + sinr)


def se_sum(per_user) -> float:
    """Summed spectral efficiency per cell, bps/Hz/cell."""
    per_user = np.asarray(per_user, dtype=float)
    if per_user.size == 0:
        raise ValueError("per-user SE list must be non-empty")
    return float(np.sum(per_user))


def distribution_stats(samples) -> dict:
    """Median, quartiles (linear interpolation between order statistics) and mean."""
    x = np.asarray(samples, dtype=float)
    if x.size == 0:
        raise ValueError("sample list must be non-empty")
    q1, med, q3 = np.quantile(x, [0.25, 0.5, 0.75])
    return {
        "median": float(med),
        "lower_quartile": float(q1),
        "upper_quartile": float(q3),
        "mean": float(np.mean(x)),
    }
