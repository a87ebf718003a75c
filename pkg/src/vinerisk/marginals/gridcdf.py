"""Tabulated CDF/quantile engine for smooth unimodal densities.

Used by families whose density has a closed form but whose CDF does not
(hyperbolic, Meixner). The density is integrated once per parameter set
with composite 4-point Gauss-Legendre panels over a support window chosen
so the log-density has dropped ``tail_drop`` nats below its maximum at
both ends (truncated mass < 1e-18 for exponential tails). The cumulative
values are interpolated with a monotone cubic (PCHIP), which is also the
object the quantile function inverts, so cdf(quantile(u)) = u holds to
root-finder tolerance by construction.
"""

from __future__ import annotations

import numpy as np
from scipy.interpolate import PchipInterpolator

from ..errors import NumericError

# 4-point Gauss-Legendre nodes/weights on [0, 1]
_GL_X = 0.5 * (1.0 + np.array(
    [-0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526]
))
_GL_W = 0.5 * np.array(
    [0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538]
)


def _support_window(logpdf, lo, hi, tail_drop):
    """Expand [lo, hi] until logpdf at both ends is tail_drop under its max."""
    for _ in range(80):
        probe = np.linspace(lo, hi, 257)
        lp = logpdf(probe)
        top = np.max(lp)
        if not np.isfinite(top):
            raise NumericError("density evaluation produced non-finite values")
        span = hi - lo
        grew = False
        if lp[0] > top - tail_drop:
            lo -= 0.6 * span
            grew = True
        if lp[-1] > top - tail_drop:
            hi += 0.6 * span
            grew = True
        if not grew:
            return lo, hi
    raise NumericError("could not bracket the density support")


class TabulatedCdf:
    """Monotone spline CDF built from a log-density.

    Parameters
    ----------
    logpdf : callable
        Vectorized log-density.
    center, halfwidth : float
        Initial support guess; expanded automatically.
    n_panels : int
        Integration panels (4 density evaluations each). 2048 gives
        absolute CDF accuracy around 1e-9 for the families used here;
        fitting paths use a coarser table.
    """

    def __init__(self, logpdf, center, halfwidth, n_panels=2048, tail_drop=47.0):
        lo, hi = _support_window(logpdf, center - halfwidth, center + halfwidth, tail_drop)
        edges = np.linspace(lo, hi, n_panels + 1)
        widths = np.diff(edges)
        # panel nodes, shape (n_panels, 4)
        nodes = edges[:-1, None] + widths[:, None] * _GL_X[None, :]
        dens = np.exp(logpdf(nodes.ravel())).reshape(nodes.shape)
        panel_mass = (dens * _GL_W[None, :]).sum(axis=1) * widths
        cum = np.concatenate(([0.0], np.cumsum(panel_mass)))
        total = cum[-1]
        if not np.isfinite(total) or total <= 0:
            raise NumericError("density mass integration failed")
        cum /= total
        cum[-1] = 1.0
        # strictly increasing knots are required by PCHIP; collapse flats
        keep = np.concatenate(([True], np.diff(cum) > 0))
        self._x = edges[keep]
        self._f = cum[keep]
        self._spline = PchipInterpolator(self._x, self._f, extrapolate=False)
        self.lo = lo
        self.hi = hi
        self.mass = total  # numeric integral of the density (should be ~1)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        out = self._spline(np.clip(x, self.lo, self.hi))
        out = np.where(x <= self.lo, 0.0, out)
        out = np.where(x >= self.hi, 1.0, out)
        return np.clip(out, 0.0, 1.0)

    def quantile(self, u):
        """Invert the spline CDF by vectorized bisection (to ~1e-13 in u)."""
        u = np.asarray(u, dtype=float)
        if np.any((u <= 0.0) | (u >= 1.0)):
            raise ValueError("quantile argument must lie strictly inside (0, 1)")
        scalar = u.ndim == 0
        uu = np.atleast_1d(u)
        idx = np.searchsorted(self._f, uu, side="left")
        idx = np.clip(idx, 1, len(self._f) - 1)
        lo = self._x[idx - 1].copy()
        hi = self._x[idx].copy()
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            below = self._spline(mid) < uu
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        out = 0.5 * (lo + hi)
        return float(out[0]) if scalar else out
