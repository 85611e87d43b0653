"""Practical codeword design under quantized-phase hybrid constraints.

A practical codeword realizes an ideal codeword v as F f, where the analog
matrix F has unit-modulus entries with b-bit quantized phases and the
digital vector f has one entry per RF chain.  The alternating scheme
solves least squares for f, then rewrites each antenna row of F: exact
quantization for one chain, a closed-form two-phasor match for two chains,
and a cyclic per-phase search that always re-solves two free phasors for
three or more chains.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "PhaseSet",
    "phase_set",
    "wrap_phase",
    "quantize_index",
    "quantize_phase",
    "HybridCodeword",
    "TwoRfInstance",
    "design_nrf1",
    "solve_two_rf",
    "fs_row",
    "ls_fbb",
    "fs_altmin",
    "deviation",
]

# Digital-vector fixed-point tolerance for the outer alternation.
_FBB_TOL = 1e-10
# Safety cap on inner search cycles; the primary stop is an unchanged cycle.
_ROW_CAP_PER_PHASE = 64


@dataclass(frozen=True)
class PhaseSet:
    """The 2^b admissible phase-shifter phases, sorted ascending.

    Member m (0-based) is pi * (-1 + (2m + 1) / 2^b); spacing 2*pi/2^b.
    """

    bits: int
    values: np.ndarray = field(repr=False)

    @property
    def size(self):
        return 2**self.bits

    @property
    def spacing(self):
        return 2.0 * np.pi / self.size


def phase_set(bits):
    """Build the b-bit quantized phase set."""
    bits = int(bits)
    if not 1 <= bits <= 16:
        raise ValueError(f"bits must be in [1, 16], got {bits}")
    m = np.arange(2**bits)
    values = np.pi * (-1.0 + (2.0 * m + 1.0) / 2**bits)
    values.setflags(write=False)
    return PhaseSet(bits, values)


def wrap_phase(theta):
    """Wrap angles into [-pi, pi)."""
    return (np.asarray(theta, dtype=float) + np.pi) % (2.0 * np.pi) - np.pi


def quantize_index(theta, bits):
    """Index of the phase-set member closest (circularly) to theta.

    Equidistant ties resolve to the smaller phase value.  Vectorized.
    """
    size = 2**bits
    x = (wrap_phase(theta) + np.pi) / (2.0 * np.pi / size)
    idx = np.ceil(x).astype(int) - 1
    return np.clip(idx, 0, size - 1)


def quantize_phase(theta, pset):
    """Phase-set member closest to theta (value, not index)."""
    out = pset.values[quantize_index(theta, pset.bits)]
    return float(out) if np.isscalar(theta) else out


@dataclass
class HybridCodeword:
    """Analog/digital factorization of a codeword.

    The analog matrix is stored as 0-based indices into the b-bit phase
    set, so the quantization constraint is exact by construction.
    """

    phase_indices: np.ndarray  # (n, n_rf) ints
    bits: int
    digital: np.ndarray  # (n_rf,) complex

    @property
    def n(self):
        return self.phase_indices.shape[0]

    @property
    def n_rf(self):
        return self.phase_indices.shape[1]

    @property
    def analog(self):
        """The unit-modulus analog matrix exp(j * phase)."""
        return np.exp(1j * phase_set(self.bits).values[self.phase_indices])

    @property
    def realized(self):
        """The codeword this pair realizes, analog @ digital."""
        return self.analog @ self.digital


@dataclass(frozen=True)
class TwoRfInstance:
    """One antenna-row matching problem with two free phasors.

    alpha, beta: magnitude and phase of the complex target entry.
    zeta1/psi1, zeta2/psi2: magnitudes and phases of the two digital entries.
    """

    alpha: float
    beta: float
    zeta1: float
    psi1: float
    zeta2: float
    psi2: float

    @property
    def target(self):
        return self.alpha * np.exp(1j * self.beta)

    @property
    def fbb(self):
        return (
            self.zeta1 * np.exp(1j * self.psi1),
            self.zeta2 * np.exp(1j * self.psi2),
        )


def design_nrf1(v, pset):
    """Single-RF-chain design: quantize each entry phase independently.

    The digital scalar 1/sqrt(n) makes the realized codeword unit-norm
    exactly, since every analog entry has unit modulus.
    """
    v = np.asarray(v, dtype=complex)
    idx = quantize_index(np.angle(v), pset.bits)[:, None]
    digital = np.array([1.0 / np.sqrt(v.size)], dtype=complex)
    return HybridCodeword(idx, pset.bits, digital)


def _two_rf_branches(gamma, f1, f2):
    """Continuous-phase branch solutions of the two-phasor match.

    Returns (th1a, th2a, th1b, th2b) for target array gamma and complex
    digital entries f1, f2.  Infeasible triangles (target magnitude outside
    [|z1-z2|, z1+z2]) clamp the arccos arguments, which aligns or
    anti-aligns both phasors with the target -- the continuous optimum.
    """
    gamma = np.asarray(gamma, dtype=complex)
    alpha = np.abs(gamma)
    beta = np.angle(gamma)
    z1, p1 = abs(f1), np.angle(f1)
    z2, p2 = abs(f2), np.angle(f2)

    if z1 == 0.0 and z2 == 0.0:
        zero = np.zeros_like(alpha)
        return zero, zero, zero, zero
    if z2 == 0.0:
        th1 = wrap_phase(beta - p1)
        zero = np.zeros_like(alpha)
        return th1, zero, th1, zero
    if z1 == 0.0:
        th2 = wrap_phase(beta - p2)
        zero = np.zeros_like(alpha)
        return zero, th2, zero, th2

    with np.errstate(divide="ignore", invalid="ignore"):
        arg1 = (alpha**2 + (z1 + z2) * (z1 - z2)) / (2.0 * z1 * alpha)
        arg2 = (alpha**2 - (z1 + z2) * (z1 - z2)) / (2.0 * z2 * alpha)
    # alpha == 0 with z1 == z2 yields 0/0; resolve it to anti-aligned phasors
    arg1 = np.nan_to_num(arg1, nan=1.0, posinf=1.0, neginf=-1.0)
    arg2 = np.nan_to_num(arg2, nan=-1.0, posinf=1.0, neginf=-1.0)
    a1 = np.arccos(np.clip(arg1, -1.0, 1.0))
    a2 = np.arccos(np.clip(arg2, -1.0, 1.0))
    th1a = wrap_phase(beta - p1 + a1)
    th2a = wrap_phase(beta - p2 - a2)
    th1b = wrap_phase(beta - p1 - a1)
    th2b = wrap_phase(beta - p2 + a2)
    return th1a, th2a, th1b, th2b


def _two_rf_solve(gamma, f1, f2, pset=None, refine=False):
    """Solve the two-phasor match for an array of targets.

    With a phase set, both continuous branches are quantized and the one
    with the smaller residual wins; returns (idx1, idx2, residual).
    Without one, returns (th1, th2, residual) with continuous phases.
    refine additionally evaluates the 3x3 index neighborhood around each
    rounded branch, which recovers pairs that nearest-member rounding of
    the two coupled phases misses.
    """
    th1a, th2a, th1b, th2b = _two_rf_branches(gamma, f1, f2)
    gamma = np.asarray(gamma, dtype=complex)
    if pset is None:
        ra = np.abs(gamma - f1 * np.exp(1j * th1a) - f2 * np.exp(1j * th2a))
        rb = np.abs(gamma - f1 * np.exp(1j * th1b) - f2 * np.exp(1j * th2b))
        pick_a = ra <= rb
        th1 = np.where(pick_a, th1a, th1b)
        th2 = np.where(pick_a, th2a, th2b)
        return th1, th2, np.where(pick_a, ra, rb)
    vals = pset.values
    offsets = ((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 0), (0, 1),
               (1, -1), (1, 0), (1, 1)) if refine else ((0, 0),)
    pairs = []
    for th1, th2 in ((th1a, th2a), (th1b, th2b)):
        i1 = quantize_index(th1, pset.bits)
        i2 = quantize_index(th2, pset.bits)
        for d1, d2 in offsets:
            pairs.append(((i1 + d1) % pset.size, (i2 + d2) % pset.size))
    residuals = np.stack([
        np.abs(gamma - f1 * np.exp(1j * vals[j1]) - f2 * np.exp(1j * vals[j2]))
        for j1, j2 in pairs
    ])
    best = np.argmin(residuals, axis=0)  # first minimum wins ties
    cols = np.arange(gamma.size)
    i1 = np.stack([p[0] for p in pairs])[best, cols]
    i2 = np.stack([p[1] for p in pairs])[best, cols]
    return i1, i2, residuals[best, cols]


def solve_two_rf(inst, pset=None):
    """Match one target entry with two phasors; see TwoRfInstance.

    Returns (theta1, theta2, residual).  With a phase set the phases are
    set members; otherwise they are continuous.
    """
    f1, f2 = inst.fbb
    th1, th2, res = _two_rf_solve(np.array([inst.target]), f1, f2, pset)
    if pset is not None:
        th1, th2 = pset.values[th1], pset.values[th2]
    return float(th1[0]), float(th2[0]), float(res[0])


def _row_residual(target, fbb, vals, idx):
    return abs(target - np.sum(fbb * np.exp(1j * vals[idx])))


def fs_row(target, fbb, pset, init_indices, history=None):
    """Cyclic search for one antenna row with at least three RF chains.

    One phase at a time (from the third on) is swept over the whole phase
    set; for each candidate the first two phases are re-solved in closed
    form against the residual target, and the best candidate wins (ties go
    to the smaller phase value).  Stops when a full cycle leaves every
    swept phase unchanged, or at the safety cap.  Never returns a row
    worse than the initial one.

    Returns (indices, residual, iterations).  history, if given, collects
    the per-iteration residuals.
    """
    fbb = np.asarray(fbb, dtype=complex)
    n_rf = fbb.size
    if n_rf < 3:
        raise ValueError("fs_row requires at least three RF chains")
    vals = pset.values
    candidates = np.exp(1j * vals)
    idx = np.asarray(init_indices, dtype=int).copy()
    init = idx.copy()
    init_res = _row_residual(target, fbb, vals, init)

    cap = _ROW_CAP_PER_PHASE * (n_rf - 2)
    unchanged = 0
    t = 0
    res = init_res
    while t < cap:
        p = t % (n_rf - 2) + 2
        # residual targets for every candidate value of phase p
        fixed = np.sum(fbb[2:] * np.exp(1j * vals[idx[2:]])) - fbb[p] * np.exp(
            1j * vals[idx[p]]
        )
        resid_targets = target - fixed - fbb[p] * candidates
        i1, i2, errs = _two_rf_solve(resid_targets, fbb[0], fbb[1], pset,
                                     refine=True)
        best = int(np.argmin(errs))
        # keep the incumbent row when no candidate improves on it, so the
        # residual sequence is non-increasing
        if errs[best] <= res:
            moved = (best, int(i1[best]), int(i2[best])) != (
                idx[p],
                idx[0],
                idx[1],
            )
            idx[p] = best
            idx[0] = int(i1[best])
            idx[1] = int(i2[best])
            res = float(errs[best])
        else:
            moved = False
        if history is not None:
            history.append(res)
        t += 1
        unchanged = 0 if moved else unchanged + 1
        if unchanged >= n_rf - 2:
            break

    if init_res < res:
        return init, float(init_res), t
    return idx, res, t


def ls_fbb(analog, v):
    """Least-squares digital vector for a fixed analog matrix.

    Solves (F^H F) f = F^H v; a near-singular Gram matrix (duplicated
    analog columns) falls back to the pseudo-inverse with a warning.
    """
    analog = np.asarray(analog, dtype=complex)
    v = np.asarray(v, dtype=complex)
    gram = analog.conj().T @ analog
    if np.linalg.cond(gram) > 1e12:
        warnings.warn(
            "analog matrix is rank deficient (duplicated columns?); "
            "using pseudo-inverse",
            RuntimeWarning,
            stacklevel=2,
        )
        return np.linalg.pinv(analog) @ v
    return np.linalg.solve(gram, analog.conj().T @ v)


def _design_rows(v, fbb, pset, idx):
    """Rewrite every analog row for a fixed digital vector (in place copy).

    Each row keeps its previous phases whenever they beat the newly solved
    ones, so the objective cannot increase.
    """
    vals = pset.values
    n_rf = fbb.size
    idx = idx.copy()
    if n_rf == 1:
        # single phasor: the circularly nearest member is exactly optimal
        idx[:, 0] = quantize_index(np.angle(v) - np.angle(fbb[0]), pset.bits)
        return idx
    if n_rf == 2:
        i1, i2, new_res = _two_rf_solve(v, fbb[0], fbb[1], pset, refine=True)
        old = np.abs(
            v
            - fbb[0] * np.exp(1j * vals[idx[:, 0]])
            - fbb[1] * np.exp(1j * vals[idx[:, 1]])
        )
        keep_new = new_res <= old
        idx[:, 0] = np.where(keep_new, i1, idx[:, 0])
        idx[:, 1] = np.where(keep_new, i2, idx[:, 1])
        return idx
    for n in range(v.size):
        idx[n], _, _ = fs_row(v[n], fbb, pset, idx[n])
    return idx


def fs_altmin(v, n_rf, b, t_max=50, seed=0, trace=None):
    """Alternating design of the quantized analog matrix and digital vector.

    Starts from a random quantized analog matrix, alternates least squares
    for the digital vector with row-wise analog redesign, and stops after
    t_max outer iterations or when the digital vector reaches a fixed
    point.  The final digital vector is rescaled so the realized codeword
    is unit-norm.  trace, if given, collects the fitting residual after
    every least-squares step (non-increasing).

    A single RF chain needs no alternation and dispatches to design_nrf1.
    """
    v = np.asarray(v, dtype=complex)
    if not 1 <= n_rf <= v.size:
        raise ValueError(f"n_rf must be in [1, {v.size}], got {n_rf}")
    pset = phase_set(b)
    if n_rf == 1 and t_max > 0:
        hybrid = design_nrf1(v, pset)
        if trace is not None:
            trace.append(float(np.linalg.norm(v - hybrid.realized)))
        return hybrid

    rng = np.random.default_rng(seed)
    idx = rng.integers(0, pset.size, size=(v.size, n_rf))
    vals = pset.values

    fbb = ls_fbb(np.exp(1j * vals[idx]), v)
    if trace is not None:
        trace.append(float(np.linalg.norm(v - np.exp(1j * vals[idx]) @ fbb)))
    for _ in range(int(t_max)):
        idx = _design_rows(v, fbb, pset, idx)
        new_fbb = ls_fbb(np.exp(1j * vals[idx]), v)
        if trace is not None:
            trace.append(
                float(np.linalg.norm(v - np.exp(1j * vals[idx]) @ new_fbb))
            )
        converged = np.linalg.norm(new_fbb - fbb) < _FBB_TOL
        fbb = new_fbb
        if converged:
            break

    analog = np.exp(1j * vals[idx])
    fbb = fbb / np.linalg.norm(analog @ fbb)
    return HybridCodeword(idx, pset.bits, fbb)


def deviation(v, vp):
    """l2 deviation between an ideal codeword and a realized one."""
    v = np.asarray(v, dtype=complex)
    vp = np.asarray(vp, dtype=complex)
    if v.shape != vp.shape:
        raise ValueError(f"length mismatch: {v.shape} vs {vp.shape}")
    return float(np.linalg.norm(v - vp))
