"""Array-response primitives for uniform linear arrays.

All angles are in the cosine domain Omega = cos(physical angle), so the
usable range is [-1, 1].  Codewords are plain complex numpy vectors; a
codeword proper is unit-norm, while intermediate unnormalized vectors are
accepted wherever documented.
"""

import io

import numpy as np

__all__ = [
    "steering_vector",
    "beam_gain",
    "sample_pattern",
    "pattern_csv",
    "main_lobe_mse",
    "SteeringMatrix",
    "steering_matrix",
    "as_codeword",
    "normalize",
]


def steering_vector(n, omega):
    """Unit-norm steering vector of an n-element half-wavelength ULA.

    Entry i (0-based) is (1/sqrt(n)) * exp(j*pi*i*omega).
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"antenna count must be positive, got {n}")
    return np.exp(1j * np.pi * np.arange(n) * omega) / np.sqrt(n)


def beam_gain(v, omega):
    """Complex beam gain of vector v in direction(s) omega.

    Equals sqrt(n) * a(n, omega)^H v = sum_i v_i exp(-j*pi*i*omega).
    Accepts a scalar omega or an array; the return matches the input shape.
    """
    v = np.asarray(v, dtype=complex)
    om = np.asarray(omega, dtype=float)
    scalar = om.ndim == 0
    g = np.exp(-1j * np.pi * np.outer(np.atleast_1d(om), np.arange(v.size))) @ v
    return complex(g[0]) if scalar else g.reshape(om.shape)


def sample_pattern(v, grid):
    """Sample the beam pattern of v on a grid of directions.

    Returns an (len(grid), 3) float array with columns
    (omega, |G|, angle(G) in radians).
    """
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        return np.empty((0, 3))
    g = beam_gain(v, grid)
    return np.column_stack([grid, np.abs(g), np.angle(g)])


def pattern_csv(rows):
    """Render sample_pattern rows as CSV text (12 significant digits)."""
    buf = io.StringIO()
    buf.write("omega,magnitude,phase_rad\n")
    for om, mag, ph in rows:
        buf.write(f"{om:.12g},{mag:.12g},{ph:.12g}\n")
    return buf.getvalue()


def main_lobe_mse(v, target, grid_density=1000):
    """Mean squared error of |G(v, .)| against the target inside its coverage.

    Sampled on grid_density uniform points strictly interior to the coverage
    interval.  For a rect target this is the mean of (|G| - C_v)^2, the main
    lobe variation metric.
    """
    if grid_density < 2:
        raise ValueError("grid_density must be at least 2")
    lo, hi = target.coverage
    if not hi > lo:
        raise ValueError("target has empty coverage")
    grid = np.linspace(lo, hi, grid_density + 2)[1:-1]
    mag = np.abs(beam_gain(v, grid))
    return float(np.mean((mag - target(grid)) ** 2))


class SteeringMatrix:
    """K steering vectors, scaled by sqrt(n), on a uniform direction grid.

    Column k (1-based) is sqrt(n) * a(n, omega_k) with
    omega_k = -1 + (2k - 1)/K, so the Gram identity A A^H = K I holds.
    """

    def __init__(self, n, k):
        n, k = int(n), int(k)
        if n < 1:
            raise ValueError(f"antenna count must be positive, got {n}")
        if k < n:
            raise ValueError(f"grid size {k} must be >= antenna count {n}")
        self.n = n
        self.k = k
        self.grid = -1.0 + (2.0 * np.arange(1, k + 1) - 1.0) / k
        self.matrix = np.exp(1j * np.pi * np.outer(np.arange(n), self.grid))

    def gram(self):
        """A^H A, the K x K Gram matrix used by the phase optimizer."""
        return self.matrix.conj().T @ self.matrix


def steering_matrix(n, k):
    """Build the sqrt(n)-scaled steering matrix with K grid columns."""
    return SteeringMatrix(n, k)


def normalize(v):
    """Scale v to unit l2 norm."""
    v = np.asarray(v, dtype=complex)
    nrm = np.linalg.norm(v)
    if nrm < 1e-12:
        raise ValueError("cannot normalize a (near-)zero vector")
    return v / nrm


def as_codeword(v, tol=1e-9):
    """Validate that v is a unit-norm codeword and return it as an array."""
    v = np.asarray(v, dtype=complex)
    nrm = np.linalg.norm(v)
    if abs(nrm - 1.0) > tol:
        raise ValueError(f"codeword norm {nrm} deviates from 1 by more than {tol}")
    return v
