"""Loop kernels compiled with numba.

Every function here has a vectorised twin in ``_kernels_numpy`` with the
same signature; ``kernels`` picks one of the two at import time.
Points are ``(N, d)`` float arrays of cell centres.
"""
import math

import numpy as np
from numba import njit


@njit(cache=True)
def _dist2(points, i, j):
    acc = 0.0
    for k in range(points.shape[1]):
        d = points[i, k] - points[j, k]
        acc += d * d
    return acc


@njit(cache=True)
def maximal_brute(points, absf, radii, scale):
    # out[i] = max_k scale[k] * sum_{|x_j - x_i| < radii[k]} absf[j]
    npts = points.shape[0]
    nr = radii.shape[0]
    out = np.zeros(npts)
    r2 = radii * radii
    sums = np.zeros(nr)
    for i in range(npts):
        for k in range(nr):
            sums[k] = 0.0
        for j in range(npts):
            v = absf[j]
            if v == 0.0:
                continue
            d2 = _dist2(points, i, j)
            for k in range(nr):
                if d2 < r2[k]:
                    sums[k] += v
        best = 0.0
        for k in range(nr):
            val = scale[k] * sums[k]
            if val > best:
                best = val
        out[i] = best
    return out


@njit(cache=True)
def comm_maximal_brute(points, absf, b, radii, scale):
    npts = points.shape[0]
    nr = radii.shape[0]
    out = np.zeros(npts)
    r2 = radii * radii
    sums = np.zeros(nr)
    for i in range(npts):
        for k in range(nr):
            sums[k] = 0.0
        bi = b[i]
        for j in range(npts):
            v = absf[j] * abs(bi - b[j])
            if v == 0.0:
                continue
            d2 = _dist2(points, i, j)
            for k in range(nr):
                if d2 < r2[k]:
                    sums[k] += v
        best = 0.0
        for k in range(nr):
            val = scale[k] * sums[k]
            if val > best:
                best = val
        out[i] = best
    return out


@njit(cache=True)
def riesz_sum(points, f, b, mode, exponent, diag, vol):
    # mode 0: plain potential, 1: (b(x)-b(y)), 2: |b(x)-b(y)|
    npts = points.shape[0]
    out = np.zeros(npts)
    half = 0.5 * exponent
    for i in range(npts):
        acc = 0.0
        for j in range(npts):
            if j == i:
                continue
            fj = f[j]
            if mode == 1:
                fj = fj * (b[i] - b[j])
            elif mode == 2:
                fj = fj * abs(b[i] - b[j])
            if fj == 0.0:
                continue
            acc += fj * _dist2(points, i, j) ** half
        out[i] = acc * vol
        if mode == 0:
            out[i] += f[i] * diag
    return out


@njit(cache=True)
def legendre_argmax(r, s, phis):
    # r ascending; for concave k -> r*s[k] - phis[k] the argmax is
    # nondecreasing in r, so a single forward pointer suffices.
    m = s.shape[0]
    idx = np.zeros(r.shape[0], dtype=np.int64)
    k = 0
    for i in range(r.shape[0]):
        ri = r[i]
        while k + 1 < m and ri * s[k + 1] - phis[k + 1] >= ri * s[k] - phis[k]:
            k += 1
        idx[i] = k
    return idx


@njit(cache=True)
def ball_sums(points, values, centers, radii):
    nb = centers.shape[0]
    npts = points.shape[0]
    d = points.shape[1]
    sums = np.zeros(nb)
    counts = np.zeros(nb, dtype=np.int64)
    for q in range(nb):
        r2 = radii[q] * radii[q]
        acc = 0.0
        cnt = 0
        for j in range(npts):
            d2 = 0.0
            for k in range(d):
                t = points[j, k] - centers[q, k]
                d2 += t * t
            if d2 < r2:
                acc += values[j]
                cnt += 1
        sums[q] = acc
        counts[q] = cnt
    return sums, counts


@njit(cache=True)
def ball_oscillation(points, b, centers, radii, p):
    # per ball: (mean, mean |b - mean|^p, count)
    nb = centers.shape[0]
    npts = points.shape[0]
    d = points.shape[1]
    means = np.zeros(nb)
    osc = np.zeros(nb)
    counts = np.zeros(nb, dtype=np.int64)
    inside = np.zeros(npts, dtype=np.bool_)
    for q in range(nb):
        r2 = radii[q] * radii[q]
        acc = 0.0
        cnt = 0
        for j in range(npts):
            d2 = 0.0
            for k in range(d):
                t = points[j, k] - centers[q, k]
                d2 += t * t
            inside[j] = d2 < r2
            if inside[j]:
                acc += b[j]
                cnt += 1
        counts[q] = cnt
        if cnt == 0:
            continue
        mean = acc / cnt
        dev = 0.0
        for j in range(npts):
            if inside[j]:
                dev += abs(b[j] - mean) ** p
        means[q] = mean
        osc[q] = dev / cnt
    return means, osc, counts


@njit(cache=True)
def sup_log_weighted(log_r, values):
    # out[i] = max_{j > i} (1 + log_r[j] - log_r[i]) * values[j]; -inf if empty
    n = log_r.shape[0]
    out = np.zeros(n)
    for i in range(n):
        best = -math.inf
        li = log_r[i]
        for j in range(i + 1, n):
            v = (1.0 + log_r[j] - li) * values[j]
            if v > best:
                best = v
        out[i] = best
    return out
