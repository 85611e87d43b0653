"""Hierarchical codebook assembly.

Layer s holds M^s codewords whose coverage intervals tile [-1, 1] into
equal pieces; each parent beam covers exactly the M beams of its children.
Upper-layer codewords come from the ideal design (optionally factored
through hardware), while bottom-layer sectors of width 2/N use plain
steering vectors.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .arrays import steering_vector
from .ideal import ls_icd, ps_icd
from .practical import HybridCodeword, design_nrf1, fs_altmin, phase_set
from .targets import make_target

__all__ = [
    "CodebookEntry",
    "HierarchicalCodebook",
    "build_codebook",
    "training_test_count",
    "layer_count",
    "floor_log",
]


def layer_count(n, m):
    """Number of layers: smallest S with M^S >= N."""
    if m < 2:
        raise ValueError(f"hierarchical factor must be >= 2, got {m}")
    s = 1
    while m**s < n:
        s += 1
    return s


def floor_log(n, m):
    """Largest s with M^s <= N."""
    s = 0
    while m ** (s + 1) <= n:
        s += 1
    return s


def training_test_count(n_t, n_r, m):
    """Number of beam-training measurements for one hierarchical descent.

    M * floor(log_M N_t) + (M^2 - M) * floor(log_M N_r), versus N_t * N_r
    for the exhaustive sweep.
    """
    if n_t < 1 or n_r < 1 or m < 2:
        raise ValueError("antenna counts must be positive and m >= 2")
    return m * floor_log(n_t, m) + (m * m - m) * floor_log(n_r, m)


@dataclass
class CodebookEntry:
    """One codeword with its coverage interval."""

    coverage: tuple
    ideal: np.ndarray
    hybrid: Optional[HybridCodeword] = None

    @property
    def midpoint(self):
        return 0.5 * (self.coverage[0] + self.coverage[1])

    def codeword(self, practical=False):
        if practical:
            if self.hybrid is None:
                raise ValueError("entry has no practical codeword")
            return self.hybrid.realized
        return self.ideal


@dataclass
class HierarchicalCodebook:
    """All layers of a hierarchical codebook; layers[s-1] has M^s entries."""

    n: int
    m: int
    seed: int
    layers: list
    method: str = "ps-icd"
    hw: Optional[dict] = None

    @property
    def s(self):
        return len(self.layers)

    @property
    def bottom(self):
        return self.layers[-1]

    def entry(self, layer, index):
        """Entry by 1-based layer and index."""
        return self.layers[layer - 1][index - 1]

    def children(self, layer, index):
        """1-based indices of the child entries at the next layer."""
        return range(self.m * (index - 1) + 1, self.m * index + 1)


def _entry_seed(master, layer, index):
    ss = np.random.SeedSequence([int(master), int(layer), int(index)])
    return int(ss.generate_state(1)[0])


def build_codebook(n, m=2, k=128, r_max=2000, seed=0, method="ps-icd", hw=None):
    """Build the full hierarchical codebook for an n-antenna array.

    method selects the ideal design ("ps-icd" or "ls-icd").  hw, if given,
    is a dict with keys n_rf, b and optionally t_max; every entry then also
    carries a practical codeword.  Sectors of width exactly 2/n use the
    steering vector at the sector midpoint (quantized per entry phase when
    hw is set) instead of a synthesized codeword.

    Per-entry seeds derive from the master seed and the layer/index, so any
    single codeword is reproducible in isolation.
    """
    if method not in ("ps-icd", "ls-icd"):
        raise ValueError(f"unknown ideal design method {method!r}")
    if hw is not None:
        hw = dict(hw)
        hw.setdefault("t_max", 50)
        phase_set(hw["b"])  # validate early
    s_total = layer_count(n, m)
    layers = []
    for s in range(1, s_total + 1):
        width = 2.0 / m**s
        entries = []
        for idx in range(1, m**s + 1):
            lo = -1.0 + (idx - 1) * width
            hi = lo + width
            sub_seed = _entry_seed(seed, s, idx)
            try:
                if width == 2.0 / n:
                    ideal = steering_vector(n, 0.5 * (lo + hi))
                    hybrid = (
                        design_nrf1(ideal, phase_set(hw["b"])) if hw else None
                    )
                else:
                    target = make_target("rect", (lo, hi))
                    if method == "ps-icd":
                        ideal = ps_icd(target, n, k, r_max, sub_seed)
                    else:
                        ideal = ls_icd(target, n, k)
                    hybrid = (
                        fs_altmin(
                            ideal,
                            hw["n_rf"],
                            hw["b"],
                            t_max=hw["t_max"],
                            seed=sub_seed,
                        )
                        if hw
                        else None
                    )
            except Exception as exc:
                raise RuntimeError(
                    f"codeword synthesis failed at layer {s}, index {idx}"
                ) from exc
            entries.append(CodebookEntry((lo, hi), ideal, hybrid))
        layers.append(entries)
    return HierarchicalCodebook(n, m, seed, layers, method=method, hw=hw)
