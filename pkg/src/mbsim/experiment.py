"""Monte Carlo orchestration: scenario sampling, estimation averaging,
precoder evaluation and aggregation, for synthesized channels and replayed
measurement traces.

Every realization derives its own counter-based random streams from
(seed, realization index, purpose), so results are independent of the degree
of parallelism.
"""

from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import channel as ch
from . import metrics
from .arraymodel import FrontEnd, multi_beam_frontend, patch_frontend, response_matrix
from .errors import InsufficientTraceError, SingularChannelError, TraceFormatError
from .precoding import PRECODERS

FRONTENDS = ("butler", "patch")
PRECODER_TAGS = ("analog", "mr", "zf", "rzf")

# Stream purposes; keep stable so recorded seeds stay reproducible.
_STREAM_ANGLES = 0
_STREAM_NOISE = 1


def substream(seed: int, *key: int) -> np.random.Generator:
    """Counter-based generator keyed by (seed, *key)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence((seed,) + key)))


def build_frontend(tag: str, **ula_kwargs) -> FrontEnd:
    if tag == "butler":
        return multi_beam_frontend(**ula_kwargs)
    if tag == "patch":
        return patch_frontend(**ula_kwargs)
    raise ValueError(f"unknown frontend {tag!r}")


@dataclass(frozen=True)
class ScenarioConfig:
    """One Monte Carlo scenario: fixed user count, frontend and precoder set."""

    num_users: int = 1
    theta_bs_range_deg: float = 60.0
    theta_k_deg: float = 4.0
    realizations: int = 1000
    estimations: int = 100
    seed: int = 1
    tx_frontend: str = "butler"
    precoders: tuple = PRECODER_TAGS
    budget: ch.LinkBudget = field(default_factory=ch.LinkBudget)
    tau_ratio: float = 1.0
    mode: str = "synthesize"
    estimation_noise_scale: float = 1.0
    fixed_rx_gain_dbi: float | None = None
    total_power_constraint: bool = False
    angle_pool: tuple | None = None  # restrict synthesized angles to this set
    trace: "ChannelTrace | None" = None

    def __post_init__(self):
        if not 1 <= self.num_users <= 16:
            raise ValueError(f"num_users must be in 1..16, got {self.num_users}")
        if self.realizations < 1:
            raise ValueError(f"realizations must be >= 1, got {self.realizations}")
        if self.estimations < 1:
            raise ValueError(f"estimations must be >= 1, got {self.estimations}")
        if self.tx_frontend not in FRONTENDS:
            raise ValueError(f"tx_frontend must be one of {FRONTENDS}, got {self.tx_frontend!r}")
        if self.mode not in ("synthesize", "replay"):
            raise ValueError(f"mode must be synthesize or replay, got {self.mode!r}")
        unknown = set(self.precoders) - set(PRECODER_TAGS)
        if unknown:
            raise ValueError(f"unknown precoder tags: {sorted(unknown)}")
        if not 0 < self.tau_ratio <= 1:
            raise ValueError(f"tau_ratio must be in (0, 1], got {self.tau_ratio}")
        if self.mode == "replay" and self.trace is None:
            raise ValueError("replay mode requires a trace")


@dataclass(frozen=True, eq=False)
class ChannelTrace:
    """Recorded per-angle effective-channel vectors.

    vectors has shape (num angles, estimations per angle, ports).
    """

    angles_deg: np.ndarray
    vectors: np.ndarray

    def __post_init__(self):
        if self.vectors.ndim != 3 or self.vectors.shape[0] != self.angles_deg.size:
            raise TraceFormatError("trace vectors must have shape (angles, estimations, ports)")
        if self.vectors.shape[1] < 1:
            raise TraceFormatError("every trace angle needs at least one estimation")

    @property
    def num_angles(self) -> int:
        return int(self.angles_deg.size)


@dataclass(frozen=True, eq=False)
class RealizationResult:
    """Per-precoder outcome of one Monte Carlo realization."""

    realization: int
    num_users: int
    frontend: str
    precoder: str
    theta_bs_deg: np.ndarray  # (K,)
    per_user_se: np.ndarray  # (K,) mean SE over estimation rounds
    sum_se: float


def _true_channels(cfg: ScenarioConfig, tx: FrontEnd, rx: FrontEnd,
                   angles: np.ndarray) -> np.ndarray:
    """True effective channels for all users, shape (K, ports)."""
    rows = []
    for theta in angles:
        place = ch.UserPlacement(float(theta), cfg.theta_k_deg, cfg.budget)
        H = ch.synth_channel(tx, rx, place)
        w = ch.select_beam(H)
        h = ch.effective_channel(H, w)
        if cfg.fixed_rx_gain_dbi is not None:
            sel = np.argmax(w)
            g_sel = np.abs(response_matrix(rx, cfg.theta_k_deg)[sel]) ** 2
            h = h * np.sqrt(ch.db_to_linear(cfg.fixed_rx_gain_dbi) / g_sel)
        rows.append(h)
    return np.stack(rows)


def _sample_angles(cfg: ScenarioConfig, rng: np.random.Generator):
    """User angles for one realization; replay returns (angles, pool indices)."""
    if cfg.mode == "replay":
        n = cfg.trace.num_angles
        if cfg.num_users > n:
            raise InsufficientTraceError(
                f"trace has {n} distinct angles, need {cfg.num_users}")
        idx = rng.choice(n, size=cfg.num_users, replace=False)
        return cfg.trace.angles_deg[idx], idx
    if cfg.angle_pool is not None:
        pool = np.asarray(cfg.angle_pool, dtype=float)
        idx = rng.choice(pool.size, size=cfg.num_users, replace=False)
        return pool[idx], idx
    r = cfg.theta_bs_range_deg
    return rng.uniform(-r, r, size=cfg.num_users), None


def run_realization(cfg: ScenarioConfig, index: int,
                    tx: FrontEnd | None = None, rx: FrontEnd | None = None) -> dict:
    """Run one realization; returns {precoder tag: RealizationResult}.

    Deterministic given (cfg.seed, index). A precoder that hits a singular
    channel maps to the SingularChannelError instance instead of a result.
    """
    tx = tx or build_frontend(cfg.tx_frontend)
    rx = rx or build_frontend("butler")
    k = cfg.num_users
    n_est = cfg.estimations

    angles, idx = _sample_angles(cfg, substream(cfg.seed, index, _STREAM_ANGLES))

    if cfg.mode == "replay":
        # Recorded vectors are the true channel; cycle the recorded estimations
        # across rounds.
        rec = cfg.trace.vectors[idx]  # (K, n_rec, ports)
        rounds = np.arange(n_est) % rec.shape[1]
        h_true = np.transpose(rec[:, rounds, :], (1, 0, 2))  # (n_est, K, ports)
    else:
        h_true = _true_channels(cfg, tx, rx, angles)  # (K, ports)

    ports = tx.num_ports
    std = ch.estimation_noise_std(cfg.budget, ports, cfg.estimation_noise_scale)
    noise = np.empty((n_est, k, ports), dtype=complex)
    for u in range(k):
        g = substream(cfg.seed, index, _STREAM_NOISE, u)
        e = g.standard_normal((n_est, ports)) + 1j * g.standard_normal((n_est, ports))
        noise[:, u, :] = std / np.sqrt(2.0) * e
    h_hat = h_true + noise  # broadcasts over rounds in synthesize mode

    # Precoders take the (ports, K) layout.
    H_hat = np.swapaxes(h_hat, -1, -2)  # (n_est, ports, K)
    p_mw = cfg.budget.tx_power_mw / (k if cfg.total_power_constraint else 1)
    sigma_dl = ch.noise_power(cfg.budget)

    out = {}
    for tag in cfg.precoders:
        try:
            F = PRECODERS[tag](H_hat, sigma_dl, p_mw)
        except SingularChannelError as err:
            out[tag] = err
            continue
        sinr = metrics.downlink_sinr(h_true, F, p_mw, sigma_dl)  # (n_est, K)
        se = metrics.se_user(sinr, cfg.tau_ratio)
        per_user = se.mean(axis=0)
        out[tag] = RealizationResult(
            realization=index,
            num_users=k,
            frontend=cfg.tx_frontend,
            precoder=tag,
            theta_bs_deg=np.asarray(angles, dtype=float),
            per_user_se=per_user,
            sum_se=metrics.se_sum(per_user),
        )
    return out


@dataclass
class CampaignReport:
    """Flat realization records plus per-(K, frontend, precoder) aggregates."""

    results: list
    aggregates: list
    skipped: int
    attempted: int

    @property
    def skip_rate(self) -> float:
        return self.skipped / max(self.attempted, 1)


def run_campaign(configs, threads: int = 1) -> CampaignReport:
    """Run every scenario; aggregation order is fixed regardless of threading."""
    configs = list(configs)
    if not configs:
        raise ValueError("campaign needs at least one scenario")
    results = []
    skipped = 0
    attempted = 0
    for cfg in configs:
        tx = build_frontend(cfg.tx_frontend)
        rx = build_frontend("butler")
        indices = range(cfg.realizations)
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                per_real = list(pool.map(
                    lambda i: run_realization(cfg, i, tx=tx, rx=rx), indices))
        else:
            per_real = [run_realization(cfg, i, tx=tx, rx=rx) for i in indices]
        for res in per_real:
            for tag in cfg.precoders:
                attempted += 1
                if isinstance(res[tag], SingularChannelError):
                    skipped += 1
                else:
                    results.append(res[tag])

    aggregates = []
    seen = []
    for cfg in configs:
        for tag in cfg.precoders:
            key = (cfg.num_users, cfg.tx_frontend, tag)
            if key in seen:
                continue
            seen.append(key)
            group = [r for r in results
                     if (r.num_users, r.frontend, r.precoder) == key]
            if not group:
                continue
            se_samples = np.concatenate([r.per_user_se for r in group])
            stats = metrics.distribution_stats(se_samples)
            aggregates.append({
                "K": key[0],
                "frontend": key[1],
                "precoder": key[2],
                "se_median": stats["median"],
                "se_q1": stats["lower_quartile"],
                "se_q3": stats["upper_quartile"],
                "sum_se_mean": float(np.mean([r.sum_se for r in group])),
            })
    return CampaignReport(results=results, aggregates=aggregates,
                          skipped=skipped, attempted=attempted)


# --- trace file I/O --------------------------------------------------------

TRACE_HEADER = ["angle_deg", "estimation_idx", "port", "re", "im"]


def load_trace(path, num_ports: int = 16) -> ChannelTrace:
    """Load a trace CSV: angle_deg,estimation_idx,port,re,im per complex entry."""
    entries = {}
    with open(path, newline="") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise TraceFormatError(f"{path}: empty trace file") from None
        if [h.strip() for h in header] != TRACE_HEADER:
            raise TraceFormatError(
                f"{path}: line 1: expected header {','.join(TRACE_HEADER)}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 5:
                raise TraceFormatError(f"{path}: line {lineno}: expected 5 fields, got {len(row)}")
            try:
                angle = float(row[0])
                est = int(row[1])
                port = int(row[2])
                value = complex(float(row[3]), float(row[4]))
            except ValueError as err:
                raise TraceFormatError(f"{path}: line {lineno}: {err}") from None
            if not 1 <= port <= num_ports:
                raise TraceFormatError(
                    f"{path}: line {lineno}: port {port} outside 1..{num_ports}")
            entries.setdefault(angle, {}).setdefault(est, {})[port] = value
    if not entries:
        raise TraceFormatError(f"{path}: trace contains no data rows")

    angles = sorted(entries)
    n_est = None
    for angle in angles:
        ests = entries[angle]
        if n_est is None:
            n_est = len(ests)
        elif len(ests) != n_est:
            raise TraceFormatError(
                f"{path}: angle {angle} has {len(ests)} estimations, expected {n_est}")
        for est, ports in ests.items():
            if len(ports) != num_ports:
                raise TraceFormatError(
                    f"{path}: angle {angle} estimation {est} has {len(ports)} ports, "
                    f"expected {num_ports}")
    vectors = np.empty((len(angles), n_est, num_ports), dtype=complex)
    for i, angle in enumerate(angles):
        for j, est in enumerate(sorted(entries[angle])):
            for p in range(num_ports):
                vectors[i, j, p] = entries[angle][est][p + 1]
    return ChannelTrace(angles_deg=np.asarray(angles, dtype=float), vectors=vectors)


def write_trace(path, trace: ChannelTrace) -> None:
    with open(path, "w", newline="\n") as f:
        f.write(",".join(TRACE_HEADER) + "\n")
        for i, angle in enumerate(trace.angles_deg):
            for j in range(trace.vectors.shape[1]):
                for p in range(trace.vectors.shape[2]):
                    v = trace.vectors[i, j, p]
                    f.write(f"{float(angle)!r},{j},{p + 1},"
                            f"{float(v.real)!r},{float(v.imag)!r}\n")


def synthesize_trace(cfg: ScenarioConfig, num_angles: int = 150,
                     estimations_per_angle: int = 3, seed: int | None = None,
                     recorded_noise_scale: float = 0.0) -> ChannelTrace:
    """Build a synthetic reference trace from the channel model.

    Angles are drawn uniformly from the scenario's range; each recorded
    estimation is the exact effective channel unless recorded_noise_scale > 0.
    """
    seed = cfg.seed if seed is None else seed
    rng = substream(seed, 3)
    angles = np.sort(rng.uniform(-cfg.theta_bs_range_deg, cfg.theta_bs_range_deg, num_angles))
    tx = build_frontend(cfg.tx_frontend)
    rx = build_frontend("butler")
    h = _true_channels(cfg, tx, rx, angles)  # (num_angles, ports)
    vectors = np.repeat(h[:, None, :], estimations_per_angle, axis=1)
    if recorded_noise_scale > 0:
        std = ch.estimation_noise_std(cfg.budget, h.shape[1], recorded_noise_scale)
        e = rng.standard_normal(vectors.shape) + 1j * rng.standard_normal(vectors.shape)
        vectors = vectors + std / np.sqrt(2.0) * e
    return ChannelTrace(angles_deg=angles, vectors=vectors)
