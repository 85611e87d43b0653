"""Ideal (hardware-free) codeword synthesis.

Two methods are provided.  The least-squares baseline projects the real
target magnitudes onto the steering-matrix columns.  The phase-shifted
design additionally optimizes an auxiliary phase per grid direction by
coordinate ascent; each single-phase update has a closed form, so a sweep
is cheap and the quadratic objective never decreases.
"""

import numpy as np

from .arrays import steering_matrix
from .targets import TargetPattern

__all__ = [
    "SynthesisError",
    "PhaseOptimizer",
    "update_phase",
    "lifted_quadratic",
    "ps_icd",
    "ls_icd",
]

# Below this, the closed-form update direction is numerically undefined and
# the previous phase is retained (any phase is optimal there).
_DEGENERATE_EPS = 1e-12


class SynthesisError(RuntimeError):
    """Raised when a design collapses to a zero vector."""


class PhaseOptimizer:
    """Coordinate-ascent state for the per-direction phase optimization.

    Maximizes g^H (A^H A) g over the phases of g, with |g_k| fixed to the
    target magnitude at grid direction k.  Only the K x K Gram matrix
    A^H A is stored; the equivalent 2K x 2K real-lifted form is available
    through lifted_quadratic for verification.
    """

    def __init__(self, gram, magnitudes, phases):
        self.gram = np.asarray(gram, dtype=complex)
        self.magnitudes = np.asarray(magnitudes, dtype=float)
        self.phases = np.asarray(phases, dtype=float).copy()
        k = self.gram.shape[0]
        if self.gram.shape != (k, k):
            raise ValueError("gram matrix must be square")
        if self.magnitudes.shape != (k,) or self.phases.shape != (k,):
            raise ValueError("magnitudes/phases must match the gram size")

    @property
    def gains(self):
        """The complex gain vector g with current phases."""
        return self.magnitudes * np.exp(1j * self.phases)

    def objective(self):
        """g^H (A^H A) g, the quantity the sweep maximizes (real)."""
        g = self.gains
        return float(np.real(g.conj() @ self.gram @ g))

    def cross_term(self, k):
        """sum_{m != k} [A^H A]_{k,m} g_m, the linear coefficient of g_k."""
        g = self.gains
        return complex(self.gram[k] @ g - self.gram[k, k] * g[k])

    def update(self, k):
        """Closed-form update of phase k; returns the (possibly kept) phase.

        The optimum aligns g_k with the cross term; zero-magnitude entries
        and degenerate (vanishing) cross terms keep their previous phase.
        """
        if self.magnitudes[k] == 0.0:
            return self.phases[k]
        c = self.cross_term(k)
        # 2|c| equals the norm of the real/imag linear coefficient pair
        if 2.0 * abs(c) < _DEGENERATE_EPS:
            return self.phases[k]
        self.phases[k] = np.angle(c)
        return self.phases[k]


def update_phase(optimizer, k):
    """Functional alias for PhaseOptimizer.update."""
    return optimizer.update(k)


def lifted_quadratic(gram, gains):
    """Real 2K-dimensional lifting (R, t) of the quadratic g^H (A^H A) g.

    R stacks Re/Im blocks of the Gram matrix, t stacks Re/Im parts of the
    gains; t^T R t equals the complex quadratic form.  Used for structure
    checks and brute-force verification, never in the hot path.
    """
    gram = np.asarray(gram, dtype=complex)
    gains = np.asarray(gains, dtype=complex)
    re, im = gram.real, gram.imag
    r = np.block([[re, -im], [im, re]])
    t = np.concatenate([gains.real, gains.imag])
    return r, t


def _target_gains(target, grid):
    mags = np.asarray(target(grid), dtype=float)
    if not np.any(mags > 0):
        raise SynthesisError("target magnitudes vanish on the whole grid")
    return mags


def _assemble(matrix, gains, k):
    vhat = matrix @ gains / k
    nrm = np.linalg.norm(vhat)
    if nrm < 1e-12:
        raise SynthesisError("designed vector collapsed to zero")
    return vhat / nrm


def ps_icd(target, n, k, r_max, seed):
    """Phase-shifted ideal codeword design.

    Runs r_max cyclic closed-form phase updates starting from random phases,
    then assembles the unit-norm codeword from the optimized gains.
    Deterministic for a fixed seed.

    target: TargetPattern (or any callable magnitude profile on [-1, 1]).
    n: antennas; k: grid size (k >= n); r_max: total update count.
    """
    if not isinstance(target, TargetPattern) and not callable(target):
        raise TypeError("target must be a TargetPattern or callable")
    sm = steering_matrix(n, k)
    mags = _target_gains(target, sm.grid)
    rng = np.random.default_rng(seed)
    opt = PhaseOptimizer(sm.gram(), mags, rng.uniform(-np.pi, np.pi, k))
    for i in range(int(r_max)):
        opt.update(i % k)
    return _assemble(sm.matrix, opt.gains, k)


def ls_icd(target, n, k):
    """Least-squares baseline: real target magnitudes, no auxiliary phases."""
    sm = steering_matrix(n, k)
    mags = _target_gains(target, sm.grid)
    return _assemble(sm.matrix, mags.astype(complex), k)
