"""Monotone tabulated functions on a positive, log-spaced abscissa.

Between samples the table is a power law (straight line in log-log
coordinates); segments that touch zero fall back to linear interpolation.
Outside the sampled range the first/last log-log slope is continued, so a
table sampled from an exact power law reproduces it everywhere.
"""
from __future__ import annotations

import numpy as np


def log_grid(lo_exp: float, hi_exp: float, per_decade: int) -> np.ndarray:
    """Samples ``10**k`` for ``k`` on a uniform grid in ``[lo_exp, hi_exp]``."""
    count = int(round((hi_exp - lo_exp) * per_decade)) + 1
    return 10.0 ** np.linspace(lo_exp, hi_exp, count)


class NonMonotoneError(ValueError):
    """Raised when samples that must be nondecreasing are not."""


class MonotoneTable:
    """Nondecreasing function ``[0, inf) -> [0, inf]`` given by samples.

    Parameters
    ----------
    x : array_like
        Strictly increasing positive abscissae.
    y : array_like
        Nondecreasing nonnegative values. Trailing ``inf`` entries are
        dropped and turn the last finite abscissa into the domain end.
    x_max : float, optional
        Domain end; the function is ``+inf`` for arguments beyond it.
    """

    def __init__(self, x, y, x_max: float | None = None, rtol: float = 1e-9):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if x.ndim != 1 or x.shape != y.shape:
            raise ValueError("x and y must be 1-D arrays of equal length")
        if np.any(np.isnan(y)):
            raise ValueError("table values contain NaN")
        finite = np.isfinite(y)
        if not finite.all():
            first_inf = int(np.argmin(finite))
            if finite[first_inf:].any():
                raise NonMonotoneError("finite value after +inf in table")
            x, y = x[:first_inf], y[:first_inf]
            cut = float(x[-1]) if x.size else 0.0
            x_max = cut if x_max is None else min(x_max, cut)
        if x.size < 2:
            raise ValueError("need at least two finite samples")
        if np.any(x <= 0) or np.any(np.diff(x) <= 0):
            raise ValueError("abscissae must be positive and strictly increasing")
        if np.any(y < 0):
            raise ValueError("table values must be nonnegative")
        dy = np.diff(y)
        if np.any(dy < -rtol * np.abs(y[1:])):
            raise NonMonotoneError("table values decrease")
        y = np.maximum.accumulate(y)
        self.x = x
        self.y = y
        self.x_max = None if x_max is None else float(x_max)
        self._lx = np.log(x)
        pos = (y[:-1] > 0) & (y[1:] > 0)
        with np.errstate(divide="ignore", invalid="ignore"):
            self._ly = np.log(y)
            self._slope = np.where(pos, (self._ly[1:] - self._ly[:-1]) / np.diff(self._lx), np.nan)

    # slopes used for extrapolation beyond the sampled range
    @property
    def head_slope(self) -> float:
        return float(self._slope[0]) if self.y[0] > 0 else np.nan

    @property
    def tail_slope(self) -> float:
        s = self._slope[-1]
        return float(s) if np.isfinite(s) else 1.0

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        x, y = self.x, self.y
        out = np.zeros(r.shape)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            lr = np.log(np.where(r > 0, r, 1.0))
            below = (r > 0) & (r < x[0])
            if y[0] > 0:
                out = np.where(below, y[0] * np.exp(self.head_slope * (lr - self._lx[0])), out)
            above = r > x[-1]
            out = np.where(above, y[-1] * np.exp(self.tail_slope * (lr - self._lx[-1])), out)
            inside = (r >= x[0]) & (r <= x[-1])
            j = np.clip(np.searchsorted(x, r, side="right") - 1, 0, x.size - 2)
            x0, x1, y0, y1 = x[j], x[j + 1], y[j], y[j + 1]
            lin = y0 + (y1 - y0) * (r - x0) / (x1 - x0)
            k = self._slope[j]
            loglog = y0 * np.exp(k * (lr - self._lx[j]))
            seg = np.where((y0 > 0) & (y1 > 0), loglog, lin)
            out = np.where(inside, seg, out)
            if self.x_max is not None:
                out = np.where(r > self.x_max, np.inf, out)
        out = np.where(np.isinf(r), np.inf, out)
        return out if out.ndim else float(out)

    def inverse(self, s):
        """Generalised inverse ``inf{r >= 0 : F(r) > s}`` with ``inf {} = +inf``."""
        s = np.asarray(s, dtype=float)
        x, y = self.x, self.y
        n = x.size
        out = np.zeros(s.shape)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            j = np.searchsorted(y, s, side="right")
            # below the first sample
            k0 = self.head_slope
            if y[0] > 0 and np.isfinite(k0) and k0 > 0:
                head = x[0] * np.exp(np.log(np.maximum(s, 1e-320) / y[0]) / k0)
            else:
                head = np.zeros(s.shape)
            head = np.where(s <= 0, 0.0, head)
            # past the last sample
            kn = self.tail_slope
            if self.x_max is not None and self.x_max <= x[-1]:
                tail = np.full(s.shape, self.x_max)
            elif kn > 0:
                tail = x[-1] * np.exp(np.log(s / y[-1]) / kn) if y[-1] > 0 else np.full(s.shape, np.inf)
                if self.x_max is not None:
                    tail = np.minimum(tail, self.x_max)
            else:
                tail = np.full(s.shape, np.inf)
            jj = np.clip(j, 1, n - 1)
            x0, x1, y0, y1 = x[jj - 1], x[jj], y[jj - 1], y[jj]
            lin = x0 + (s - y0) / (y1 - y0) * (x1 - x0)
            ks = self._slope[jj - 1]
            loglog = x0 * np.exp(np.log(s / y0) / ks)
            mid = np.where(y0 > 0, loglog, lin)
            out = np.where(j == 0, head, np.where(j >= n, tail, mid))
        out = np.where(s < 0, 0.0, out)
        out = np.where(np.isposinf(s), np.inf, out)
        return out if out.ndim else float(out)
