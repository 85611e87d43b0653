import numpy as np
import pytest

from beamkit import (
    TrainingConfig,
    build_codebook,
    draw_channel,
    exhaustive_best_pair,
    hierarchical_search,
    measure,
    success_rate,
    training_test_count,
)


def test_channel_matrix_closed_form():
    # single pinned path: H = gain * a_r a_t^H * sqrt(Nt*Nr/L) in unit-norm
    # steering terms, i.e. plain exponential outer product / sqrt(L)
    gain = 0.7 - 0.2j
    ch = draw_channel(4, 3, 1, seed=0, gains=[gain], aod=[0.25], aoa=[-0.5])
    ar = np.exp(1j * np.pi * np.arange(3) * -0.5)
    at = np.exp(1j * np.pi * np.arange(4) * 0.25)
    np.testing.assert_allclose(ch.matrix, gain * np.outer(ar, at.conj()), atol=1e-12)
    assert ch.n_t == 4 and ch.n_r == 3 and ch.paths == 1


def test_channel_multipath_superposition():
    ch2 = draw_channel(4, 3, 2, seed=1, gains=[1.0, 1.0], aod=[0.1, -0.3],
                       aoa=[0.2, 0.6])
    a = draw_channel(4, 3, 1, seed=1, gains=[1.0], aod=[0.1], aoa=[0.2])
    b = draw_channel(4, 3, 1, seed=1, gains=[1.0], aod=[-0.3], aoa=[0.6])
    np.testing.assert_allclose(
        ch2.matrix, (a.matrix + b.matrix) / np.sqrt(2.0), atol=1e-12
    )


def test_draw_channel_validates():
    with pytest.raises(ValueError):
        draw_channel(4, 4, 0)


def test_measure_noiseless():
    ch = draw_channel(4, 4, 1, seed=0, gains=[1.0], aod=[0.0], aoa=[0.0])
    v = np.ones(4, dtype=complex) / 2
    w = np.ones(4, dtype=complex) / 2
    rng = np.random.default_rng(0)
    power = measure(v, w, ch, np.inf, rng)
    expect = abs(w.conj() @ ch.matrix @ v) ** 2
    assert power == pytest.approx(expect, rel=1e-12)


def test_measure_matches_manual_model():
    # oracle: y = sqrt(P) w^H H v + w^H eta with the same generator draw
    ch = draw_channel(4, 4, 1, seed=0)
    v = np.ones(4, dtype=complex) / 2
    w = np.ones(4, dtype=complex) / 2
    snr_db = 10.0
    rng = np.random.default_rng(1)
    eta = (rng.standard_normal(4) + 1j * rng.standard_normal(4)) / np.sqrt(2)
    expect = abs(np.sqrt(10.0) * (w.conj() @ ch.matrix @ v) + w.conj() @ eta) ** 2
    got = measure(v, w, ch, snr_db, np.random.default_rng(1))
    assert got == pytest.approx(expect, rel=1e-12)
    # -inf SNR removes the signal entirely
    noise_only = measure(v, w, ch, -np.inf, np.random.default_rng(1))
    assert noise_only == pytest.approx(abs(w.conj() @ eta) ** 2, rel=1e-12)


@pytest.fixture(scope="module")
def small_codebooks():
    tx = build_codebook(16, m=2, k=64, r_max=600, seed=0)
    rx = build_codebook(8, m=2, k=64, r_max=600, seed=1)
    return tx, rx


def test_search_measurement_count(small_codebooks):
    tx, rx = small_codebooks
    ch = draw_channel(16, 8, 1, seed=3)
    _, _, count = hierarchical_search(tx, rx, ch, np.inf,
                                      np.random.default_rng(0))
    assert count == training_test_count(16, 8, 2) == 14


def test_noiseless_search_finds_on_grid_path(small_codebooks):
    tx, rx = small_codebooks
    # pin the single path to bottom-sector midpoints on both sides
    t_mid = tx.bottom[5].midpoint
    r_mid = rx.bottom[2].midpoint
    ch = draw_channel(16, 8, 1, seed=0, gains=[1.0], aod=[t_mid], aoa=[r_mid])
    ti, ri, _ = hierarchical_search(tx, rx, ch, np.inf,
                                    np.random.default_rng(0))
    assert (ti, ri) == (5, 2)
    assert exhaustive_best_pair(tx, rx, ch) == (5, 2)


def test_exhaustive_best_pair_is_argmax(small_codebooks):
    tx, rx = small_codebooks
    ch = draw_channel(16, 8, 1, seed=11)
    ti, ri = exhaustive_best_pair(tx, rx, ch)
    best = -1.0
    arg = None
    for i, et in enumerate(tx.bottom):
        for j, er in enumerate(rx.bottom):
            score = abs(er.ideal.conj() @ ch.matrix @ et.ideal)
            if score > best:
                best, arg = score, (i, j)
    assert (ti, ri) == arg


def test_dimension_mismatch_raises(small_codebooks):
    tx, rx = small_codebooks
    ch = draw_channel(8, 8, 1, seed=0)
    with pytest.raises(ValueError):
        hierarchical_search(tx, rx, ch, 0.0, np.random.default_rng(0))


def test_success_rate_deterministic(small_codebooks):
    tx, rx = small_codebooks
    cfg = TrainingConfig(tx_codebook=tx, rx_codebook=rx, snr_db=0.0,
                         trials=40, seed=9)
    out1 = success_rate(cfg)
    out2 = success_rate(cfg)
    assert out1["rate"] == out2["rate"]
    assert out1["records"] == out2["records"]
    assert 0.0 <= out1["rate"] <= 1.0
    assert out1["successes"] == sum(r["success"] for r in out1["records"])
    assert all(r["measurements"] == 14 for r in out1["records"])


def test_success_rate_snr_extremes(small_codebooks):
    tx, rx = small_codebooks
    hi = success_rate(TrainingConfig(tx_codebook=tx, rx_codebook=rx,
                                     snr_db=np.inf, trials=60, seed=4))
    lo = success_rate(TrainingConfig(tx_codebook=tx, rx_codebook=rx,
                                     snr_db=-np.inf, trials=60, seed=4))
    assert hi["rate"] > lo["rate"]
    assert lo["rate"] < 0.3  # pure-noise selection is near-random


def test_training_config_validation(small_codebooks):
    tx, rx = small_codebooks
    with pytest.raises(ValueError):
        TrainingConfig(tx_codebook=tx, rx_codebook=rx, snr_db=0.0, trials=0)
