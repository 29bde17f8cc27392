"""Digital baseband precoders: maximum-ratio, zero-forcing, regularized
zero-forcing and the analog one-beam baseline.

All functions accept a channel-estimate matrix of shape (..., M, K) with K
user columns over M ports (leading axes are batched) and return a precoder of
the same shape with unit-norm columns.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateChannelError, SingularChannelError

CONDITION_LIMIT = 1e12


def _check_columns(H: np.ndarray) -> np.ndarray:
    H = np.asarray(H, dtype=complex)
    if H.ndim < 2:
        raise ValueError("channel estimate matrix must have shape (..., M, K)")
    norms = np.linalg.norm(H, axis=-2)
    if np.any(norms == 0):
        raise DegenerateChannelError("channel estimate contains an all-zero user column")
    return H


def _normalize_columns(W: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(W, axis=-2, keepdims=True)
    if np.any(norms == 0):
        raise DegenerateChannelError("precoder produced a zero column")
    return W / norms


def precode_mr(H: np.ndarray) -> np.ndarray:
    """Maximum ratio: each column is the user's estimate, normalized."""
    return _normalize_columns(_check_columns(H))


def precode_zf(H: np.ndarray) -> np.ndarray:
    """Zero forcing: H (H^H H)^-1 with unit-norm columns; nulls cross-user terms."""
    H = _check_columns(H)
    cond = np.linalg.cond(H)
    worst = float(np.max(cond))
    if not np.isfinite(worst) or worst >= CONDITION_LIMIT:
        raise SingularChannelError(
            f"channel estimates are rank deficient (condition number {worst:.3e} "
            f">= {CONDITION_LIMIT:.0e})")
    # pinv(H)^H = H (H^H H)^-1 for full column rank, via SVD for stability
    W = np.conj(np.swapaxes(np.linalg.pinv(H), -1, -2))
    return _normalize_columns(W)


def precode_rzf(H: np.ndarray, noise_power_mw: float, tx_power_mw: float) -> np.ndarray:
    """Regularized zero forcing: H (H^H H + (sigma^2/p) I)^-1, unit-norm columns."""
    if noise_power_mw < 0:
        raise ValueError("noise power must be >= 0")
    if tx_power_mw <= 0:
        raise ValueError("transmit power must be > 0")
    H = _check_columns(H)
    if noise_power_mw == 0:
        return precode_zf(H)
    k = H.shape[-1]
    gram = np.swapaxes(np.conj(H), -1, -2) @ H
    reg = (noise_power_mw / tx_power_mw) * np.eye(k)
    # W = H G^-1 computed as (G^-1 H^H)^H with G Hermitian positive definite
    W = np.conj(np.swapaxes(np.linalg.solve(gram + reg, np.swapaxes(np.conj(H), -1, -2)), -1, -2))
    return _normalize_columns(W)


def precode_analog(H: np.ndarray) -> np.ndarray:
    """One-hot beam selection per user at the strongest estimated port.

    Ties break toward the lowest port index.
    """
    H = _check_columns(H)
    best = np.argmax(np.abs(H), axis=-2)
    W = np.zeros_like(H)
    np.put_along_axis(W, best[..., None, :], 1.0, axis=-2)
    return W


PRECODERS = {
    "analog": lambda H, noise_mw, p_mw: precode_analog(H),
    "mr": lambda H, noise_mw, p_mw: precode_mr(H),
    "zf": lambda H, noise_mw, p_mw: precode_zf(H),
    "rzf": precode_rzf,
}
