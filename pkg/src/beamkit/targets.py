"""Target magnitude patterns for codeword synthesis.

A target describes the desired |G(v, Omega)| over the coverage interval
[omega_lo, omega_hi] and is zero elsewhere.  The named shapes (rect,
triangular, step) are amplitude-scaled so that the energy of the target,
integral of g^2 over [-1, 1], equals 2 -- the energy of the pattern of any
unit-norm codeword -- which for a rect target of width B gives the flat
level C_v = sqrt(2/B).
"""

import numpy as np

__all__ = ["TargetPattern", "make_target"]


class TargetPattern:
    """Desired magnitude profile g(Omega) over a coverage interval.

    Evaluate by calling the instance with a scalar or array of directions.
    """

    def __init__(self, kind, coverage, evaluate, amplitude=None, params=None):
        lo, hi = float(coverage[0]), float(coverage[1])
        if not hi > lo:
            raise ValueError(f"coverage [{lo}, {hi}] must have positive width")
        if lo < -1.0 or hi > 1.0:
            raise ValueError(f"coverage [{lo}, {hi}] must lie within [-1, 1]")
        self.kind = kind
        self.coverage = (lo, hi)
        self.params = dict(params or {})
        self.amplitude = amplitude
        self._evaluate = evaluate

    @property
    def width(self):
        lo, hi = self.coverage
        return hi - lo

    def __call__(self, omega):
        om = np.asarray(omega, dtype=float)
        scalar = om.ndim == 0
        om1 = np.atleast_1d(om)
        lo, hi = self.coverage
        inside = (om1 >= lo) & (om1 <= hi)
        out = np.zeros(om1.shape)
        if inside.any():
            out[inside] = self._evaluate(om1[inside])
        return float(out[0]) if scalar else out

    def __repr__(self):
        lo, hi = self.coverage
        return f"TargetPattern({self.kind!r}, [{lo}, {hi}])"


def make_target(kind, coverage, **params):
    """Build a target pattern.

    kind: "rect", "triangular", "step", or "custom".
      rect        flat level sqrt(2/B) over the coverage of width B.
      triangular  rises linearly from 0 at the left edge to the peak at the
                  midpoint and back to 0; peak sqrt(6/B).
      step        two plateaus with relative heights params["heights"]
                  splitting the coverage at fraction params["split"],
                  scaled to total energy 2.
      custom      params["omegas"], params["values"]: nonnegative samples,
                  linearly interpolated inside the coverage (no rescaling).
    """
    lo, hi = float(coverage[0]), float(coverage[1])
    width = hi - lo
    if width <= 0:
        raise ValueError(f"coverage [{lo}, {hi}] must have positive width")

    if kind == "rect":
        level = np.sqrt(2.0 / width)
        return TargetPattern(
            "rect", coverage, lambda om: np.full(om.shape, level), amplitude=level
        )

    if kind == "triangular":
        # energy of a symmetric triangle of peak h over width B is h^2 B / 3
        peak = np.sqrt(6.0 / width)
        mid = 0.5 * (lo + hi)

        def tri(om):
            return peak * (1.0 - np.abs(om - mid) / (0.5 * width))

        return TargetPattern("triangular", coverage, tri, amplitude=peak)

    if kind == "step":
        h1, h2 = params.get("heights", (1.0, 2.0))
        frac = params.get("split", 0.5)
        if h1 < 0 or h2 < 0:
            raise ValueError(f"step heights must be nonnegative, got ({h1}, {h2})")
        if not 0.0 < frac < 1.0:
            raise ValueError(f"split fraction must lie in (0, 1), got {frac}")
        energy = width * (frac * h1**2 + (1.0 - frac) * h2**2)
        if energy <= 0:
            raise ValueError("step target has zero energy")
        scale = np.sqrt(2.0 / energy)
        edge = lo + frac * width

        def step(om):
            return np.where(om < edge, scale * h1, scale * h2)

        return TargetPattern(
            "step", coverage, step, params={"heights": (h1, h2), "split": frac}
        )

    if kind == "custom":
        omegas = np.asarray(params["omegas"], dtype=float)
        values = np.asarray(params["values"], dtype=float)
        if omegas.shape != values.shape or omegas.ndim != 1:
            raise ValueError("custom target needs matching 1-D omegas/values")
        if (values < 0).any():
            raise ValueError("custom target values must be nonnegative")
        order = np.argsort(omegas)
        omegas, values = omegas[order], values[order]

        def interp(om):
            return np.interp(om, omegas, values, left=0.0, right=0.0)

        return TargetPattern("custom", coverage, interp)

    raise ValueError(f"unknown target kind {kind!r}")
