"""Vectorised numpy versions of the kernels in ``_kernels_numba``."""
import numpy as np

_CHUNK_ENTRIES = 1 << 21


def _chunks(nrows, ncols):
    step = max(1, _CHUNK_ENTRIES // max(ncols, 1))
    for start in range(0, nrows, step):
        yield start, min(nrows, start + step)


def _pair_dist2(a, b):
    diff = a[:, None, :] - b[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def maximal_brute(points, absf, radii, scale):
    npts = points.shape[0]
    out = np.zeros(npts)
    r2 = radii * radii
    for lo, hi in _chunks(npts, npts):
        d2 = _pair_dist2(points[lo:hi], points)
        best = np.zeros(hi - lo)
        for k in range(r2.shape[0]):
            sums = (d2 < r2[k]) @ absf
            np.maximum(best, scale[k] * sums, out=best)
        out[lo:hi] = best
    return out


def comm_maximal_brute(points, absf, b, radii, scale):
    npts = points.shape[0]
    out = np.zeros(npts)
    r2 = radii * radii
    for lo, hi in _chunks(npts, npts):
        d2 = _pair_dist2(points[lo:hi], points)
        w = np.abs(b[lo:hi, None] - b[None, :]) * absf[None, :]
        best = np.zeros(hi - lo)
        for k in range(r2.shape[0]):
            sums = np.where(d2 < r2[k], w, 0.0).sum(axis=1)
            np.maximum(best, scale[k] * sums, out=best)
        out[lo:hi] = best
    return out


def riesz_sum(points, f, b, mode, exponent, diag, vol):
    npts = points.shape[0]
    out = np.zeros(npts)
    for lo, hi in _chunks(npts, npts):
        d2 = _pair_dist2(points[lo:hi], points)
        rows = np.arange(lo, hi)
        d2[rows - lo, rows] = 1.0
        kern = d2 ** (0.5 * exponent)
        kern[rows - lo, rows] = 0.0
        if mode == 0:
            out[lo:hi] = kern @ f * vol + f[lo:hi] * diag
        else:
            diff = b[lo:hi, None] - b[None, :]
            if mode == 2:
                diff = np.abs(diff)
            out[lo:hi] = (kern * diff) @ f * vol
    return out


def legendre_argmax(r, s, phis):
    # Dense scan: argmax over the whole s-grid for every r (rightmost on ties).
    idx = np.empty(r.shape[0], dtype=np.int64)
    m = s.shape[0]
    for lo, hi in _chunks(r.shape[0], m):
        g = r[lo:hi, None] * s[None, :] - phis[None, :]
        idx[lo:hi] = m - 1 - np.argmax(g[:, ::-1], axis=1)
    return idx


def ball_sums(points, values, centers, radii):
    nb = centers.shape[0]
    sums = np.zeros(nb)
    counts = np.zeros(nb, dtype=np.int64)
    for lo, hi in _chunks(nb, points.shape[0]):
        mask = _pair_dist2(centers[lo:hi], points) < (radii[lo:hi] ** 2)[:, None]
        sums[lo:hi] = mask @ values
        counts[lo:hi] = mask.sum(axis=1)
    return sums, counts


def ball_oscillation(points, b, centers, radii, p):
    nb = centers.shape[0]
    means = np.zeros(nb)
    osc = np.zeros(nb)
    counts = np.zeros(nb, dtype=np.int64)
    for lo, hi in _chunks(nb, points.shape[0]):
        mask = _pair_dist2(centers[lo:hi], points) < (radii[lo:hi] ** 2)[:, None]
        cnt = mask.sum(axis=1)
        safe = np.maximum(cnt, 1)
        mean = (mask @ b) / safe
        dev = np.where(mask, np.abs(b[None, :] - mean[:, None]) ** p, 0.0).sum(axis=1)
        means[lo:hi] = np.where(cnt > 0, mean, 0.0)
        osc[lo:hi] = np.where(cnt > 0, dev / safe, 0.0)
        counts[lo:hi] = cnt
    return means, osc, counts


def sup_log_weighted(log_r, values):
    n = log_r.shape[0]
    out = np.empty(n)
    for lo, hi in _chunks(n, n):
        fac = 1.0 + log_r[None, :] - log_r[lo:hi, None]
        g = fac * values[None, :]
        j = np.arange(n)[None, :]
        i = np.arange(lo, hi)[:, None]
        g = np.where(j > i, g, -np.inf)
        out[lo:hi] = g.max(axis=1)
    return out
