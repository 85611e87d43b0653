"""Multipath channel generation and hierarchical beam-training simulation.

The channel is a sum of L rank-one steering outer products with complex
Gaussian path gains (Saleh-Valenzuela form).  Beam training descends a
pair of hierarchical codebooks using noisy power measurements only; a
trial succeeds when the selected bottom-layer pair coincides with the
noiseless exhaustive optimum over bottom-layer pairs.
"""

from dataclasses import dataclass

import numpy as np

from .codebook import HierarchicalCodebook, floor_log

__all__ = [
    "Channel",
    "draw_channel",
    "measure",
    "hierarchical_search",
    "exhaustive_best_pair",
    "TrainingConfig",
    "success_rate",
]


@dataclass
class Channel:
    """Multipath MIMO channel with stored per-path parameters."""

    matrix: np.ndarray  # (n_r, n_t)
    gains: np.ndarray  # (L,) complex
    aod: np.ndarray  # (L,) departure directions in [-1, 1]
    aoa: np.ndarray  # (L,) arrival directions in [-1, 1]

    @property
    def n_r(self):
        return self.matrix.shape[0]

    @property
    def n_t(self):
        return self.matrix.shape[1]

    @property
    def paths(self):
        return self.gains.size


def _channel_matrix(n_t, n_r, gains, aod, aoa):
    l = gains.size
    # sqrt(n) factors of the steering vectors cancel against the leading scale
    ar = np.exp(1j * np.pi * np.outer(np.arange(n_r), aoa))
    at = np.exp(1j * np.pi * np.outer(np.arange(n_t), aod))
    return (ar * gains) @ at.conj().T / np.sqrt(l)


def draw_channel(n_t, n_r, l, seed=None, rng=None, gains=None, aod=None, aoa=None):
    """Draw a random multipath channel.

    Path gains are standard circular complex Gaussian; departure/arrival
    directions are uniform on [-1, 1].  Any of gains/aod/aoa may be pinned
    for testing.  Pass either a seed or an existing generator.
    """
    if l < 1:
        raise ValueError(f"path count must be positive, got {l}")
    if rng is None:
        rng = np.random.default_rng(seed)
    if gains is None:
        gains = (rng.standard_normal(l) + 1j * rng.standard_normal(l)) / np.sqrt(2)
    gains = np.asarray(gains, dtype=complex)
    aod = rng.uniform(-1, 1, l) if aod is None else np.asarray(aod, dtype=float)
    aoa = rng.uniform(-1, 1, l) if aoa is None else np.asarray(aoa, dtype=float)
    return Channel(_channel_matrix(n_t, n_r, gains, aod, aoa), gains, aod, aoa)


def _snr_params(snr_db):
    """(transmit power, noise std) with unit noise variance as the knob."""
    if snr_db == np.inf:
        return 1.0, 0.0
    if snr_db == -np.inf:
        return 0.0, 1.0
    return 10.0 ** (snr_db / 10.0), 1.0


def measure(v, w, ch, snr_db, rng):
    """One noisy received-power measurement |y|^2 for a beam pair.

    y = sqrt(P) w^H H v + w^H eta with eta circular Gaussian of unit
    per-entry variance; P is set by snr_db.  snr_db of +/-inf selects the
    noiseless and pure-noise limits.
    """
    p, sigma = _snr_params(snr_db)
    w = np.asarray(w, dtype=complex)
    eta = (
        (rng.standard_normal(ch.n_r) + 1j * rng.standard_normal(ch.n_r))
        * sigma
        / np.sqrt(2)
    )
    y = np.sqrt(p) * (w.conj() @ ch.matrix @ np.asarray(v, dtype=complex))
    y += w.conj() @ eta
    return float(np.abs(y) ** 2)


def _check_dims(tx_cb, rx_cb, ch):
    if tx_cb.n != ch.n_t or rx_cb.n != ch.n_r:
        raise ValueError(
            f"codebook sizes ({tx_cb.n}, {rx_cb.n}) do not match channel "
            f"({ch.n_t}, {ch.n_r})"
        )
    if tx_cb.m != rx_cb.m:
        raise ValueError("tx and rx codebooks must share the hierarchical factor")


def hierarchical_search(tx_cb, rx_cb, ch, snr_db, rng, use_practical=False):
    """Layer-by-layer descent using measured powers only.

    The first floor(log_M N_r) layers test all M x M child pairs jointly;
    the remaining transmit layers test M transmit children with the
    receive beam fixed at its selected bottom codeword.  The measurement
    total equals training_test_count(N_t, N_r, M).

    Returns (tx_index, rx_index, measurements) with 0-based bottom-layer
    indices.
    """
    _check_dims(tx_cb, rx_cb, ch)
    m = tx_cb.m
    s_t = floor_log(ch.n_t, m)
    s_r = floor_log(ch.n_r, m)
    ti = ri = 0  # selected entry (0-based) at the current layer
    count = 0
    for s in range(1, s_t + 1):
        tx_children = range(m * ti, m * ti + m)
        if s <= s_r:
            best = None
            for a in tx_children:
                va = tx_cb.layers[s - 1][a].codeword(use_practical)
                for bidx in range(m * ri, m * ri + m):
                    wb = rx_cb.layers[s - 1][bidx].codeword(use_practical)
                    power = measure(va, wb, ch, snr_db, rng)
                    count += 1
                    if best is None or power > best[0]:
                        best = (power, a, bidx)
            _, ti, ri = best
        else:
            w = rx_cb.layers[s_r - 1][ri].codeword(use_practical)
            best = None
            for a in tx_children:
                va = tx_cb.layers[s - 1][a].codeword(use_practical)
                power = measure(va, w, ch, snr_db, rng)
                count += 1
                if best is None or power > best[0]:
                    best = (power, a)
            _, ti = best
    return ti, ri, count


def exhaustive_best_pair(tx_cb, rx_cb, ch, use_practical=False):
    """Noiseless argmax of |w^H H v| over all bottom-layer pairs (0-based)."""
    _check_dims(tx_cb, rx_cb, ch)
    m = tx_cb.m
    tx_bottom = tx_cb.layers[floor_log(ch.n_t, m) - 1]
    rx_bottom = rx_cb.layers[floor_log(ch.n_r, m) - 1]
    v = np.column_stack([e.codeword(use_practical) for e in tx_bottom])
    w = np.column_stack([e.codeword(use_practical) for e in rx_bottom])
    scores = np.abs(w.conj().T @ ch.matrix @ v)  # (rx, tx)
    ri, ti = np.unravel_index(np.argmax(scores), scores.shape)
    return int(ti), int(ri)


@dataclass
class TrainingConfig:
    """Monte-Carlo beam-training campaign parameters."""

    tx_codebook: HierarchicalCodebook
    rx_codebook: HierarchicalCodebook
    snr_db: float
    trials: int
    seed: int = 0
    paths: int = 1
    use_practical: bool = False
    gains: np.ndarray = None  # optional pinned path gains (test hook)
    aod: np.ndarray = None  # optional pinned departure directions
    aoa: np.ndarray = None  # optional pinned arrival directions

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be positive, got {self.trials}")


def success_rate(cfg):
    """Run a Monte-Carlo beam-training campaign.

    Each trial draws a fresh channel and noise stream from a per-trial
    split of the master seed, runs the hierarchical search, and compares
    the result with the noiseless exhaustive optimum.  Returns a dict with
    rate, ci95 (normal-approximation 95% half width), successes, trials,
    and optionally the per-trial records.
    """
    n_t = cfg.tx_codebook.n
    n_r = cfg.rx_codebook.n
    streams = np.random.SeedSequence(cfg.seed).spawn(cfg.trials)
    successes = 0
    records = []
    for t in range(cfg.trials):
        ch_ss, noise_ss = streams[t].spawn(2)
        ch = draw_channel(
            n_t,
            n_r,
            cfg.paths,
            rng=np.random.default_rng(ch_ss),
            gains=cfg.gains,
            aod=cfg.aod,
            aoa=cfg.aoa,
        )
        noise_rng = np.random.default_rng(noise_ss)
        ti, ri, n_meas = hierarchical_search(
            cfg.tx_codebook, cfg.rx_codebook, ch, cfg.snr_db, noise_rng,
            cfg.use_practical,
        )
        bt, br = exhaustive_best_pair(
            cfg.tx_codebook, cfg.rx_codebook, ch, cfg.use_practical
        )
        ok = (ti, ri) == (bt, br)
        successes += ok
        records.append(
            {
                "trial": t,
                "selected": [ti, ri],
                "best": [bt, br],
                "success": bool(ok),
                "measurements": n_meas,
            }
        )
    rate = successes / cfg.trials
    ci95 = 1.96 * np.sqrt(rate * (1.0 - rate) / cfg.trials)
    return {
        "rate": rate,
        "ci95": float(ci95),
        "successes": successes,
        "trials": cfg.trials,
        "records": records,
    }
