"""Discrete fractional maximal, Riesz potential, BMO and commutator operators.

All operators act on ``GridFunction`` samples with the cell-centre ball
rule of ``sampled``. The supremum over radii is taken over a finite radius
set, so every maximal-type output is a lower bound of the continuous one.
Maximal-type averages divide by the measure of the cells a ball contains
rather than by ``v_n t^n``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .sampled import (Ball, BallFamily, EmptyIntersectionError, GridFunction,
                      effective_radius, geometric_radii, region_mask)

OPERATOR_KINDS = ("frac_maximal", "riesz", "comm_frac_maximal", "comm_riesz_signed", "comm_riesz_absolute")


def _check_alpha(alpha, n, strict=False):
    if not (0 < alpha < n if strict else 0 <= alpha < n):
        raise ValueError("alpha out of range")


def default_radii(f: GridFunction, ratio: float = math.sqrt(2.0)) -> np.ndarray:
    """Radii ``h/2, h/sqrt 2, ...`` up to the box diameter.

    The smallest ball only holds the centre cell, whose volume matches
    ``|B(x, h/2)|`` in 1-D.
    """
    h = float(np.min(f.h))
    return geometric_radii(0.5 * h, f.diameter, ratio)


def lattice_ball_volume(f: GridFunction, radii) -> np.ndarray:
    """Measure of the cells whose centres lie in ``B(0, r)`` on the unbounded
    lattice of ``f`` (translation invariant, so it serves every centre)."""
    out = []
    for r in np.atleast_1d(effective_radius(radii)):
        if f.n == 1:
            count = 2 * _half_widths(r, f.h[0]) + 1
        else:
            ky = _half_widths(r, f.h[0])
            count = sum(2 * _half_widths(r, f.h[1], f.h[0], k) + 1 for k in range(-ky, ky + 1))
        out.append(max(count, 0) * f.cell_volume)
    return np.array(out)


def _scale(f: GridFunction, alpha, radii):
    # |B|^{alpha/n - 1} times the cell volume that turns sums into integrals;
    # |B| is the measure of the cells counted in the ball, so averages of
    # constants are exact. Radii holding no cell get weight 0.
    vols = lattice_ball_volume(f, radii)
    with np.errstate(divide="ignore"):
        scale = np.where(vols > 0, vols, np.inf) ** (alpha / f.n - 1.0) * f.cell_volume
    return np.where(vols > 0, scale, 0.0)



def _half_widths(radius, h_along, h_across=None, k_across=0):
    """Largest ``k`` with ``(k h_along)^2 + (k_across h_across)^2 < radius^2``."""
    rem = radius * radius - (0.0 if h_across is None else (k_across * h_across) ** 2)
    if rem <= 0:
        return -1
    k = int(math.floor(math.sqrt(rem) / h_along))
    while k >= 0 and (k * h_along) ** 2 >= rem:
        k -= 1
    while ((k + 1) * h_along) ** 2 < rem:
        k += 1
    return k


def _window_sums_1d(cum, k):
    """Sums over ``[i-k, i+k]`` (clipped) from ``cum`` with ``cum[0] = 0``."""
    m = cum.shape[-1] - 1
    idx = np.arange(m)
    hi = np.minimum(idx + k + 1, m)
    lo = np.maximum(idx - k, 0)
    return cum[..., hi] - cum[..., lo]


def ball_sums_prefix(f: GridFunction, values, radius: float) -> np.ndarray:
    """Sum of ``values`` over ``B(x, radius)`` for every cell centre ``x``.

    1-D: one prefix sum. 2-D: a row-wise prefix sum per row offset, with
    the exact disc half-width of that row, so the result equals the
    brute-force cell-centre rule.
    """
    vals = np.asarray(values, dtype=float).reshape(f.shape)
    rad = float(effective_radius(radius))
    if f.n == 1:
        k = _half_widths(rad, f.h[0])
        cum = np.concatenate([[0.0], np.cumsum(vals)])
        return _window_sums_1d(cum, k) if k >= 0 else np.zeros(f.shape)
    ny, nx = f.shape
    hy, hx = f.h
    cum = np.concatenate([np.zeros((ny, 1)), np.cumsum(vals, axis=1)], axis=1)
    out = np.zeros(f.shape)
    ky_max = _half_widths(rad, hy)
    for ky in range(-ky_max, ky_max + 1):
        kx = _half_widths(rad, hx, hy, ky)
        if kx < 0:
            continue
        rows = _window_sums_1d(cum, kx)
        # row i + ky contributes to centre row i
        if ky >= 0:
            out[: ny - ky] += rows[ky:]
        else:
            out[-ky:] += rows[: ny + ky]
    return out.ravel()


# -- operators ------------------------------------------------------------

def fractional_maximal(f: GridFunction, alpha: float = 0.0, radii=None, method: str = "auto") -> GridFunction:
    """``M_alpha f(x) = max_t |B(x,t)|^{alpha/n-1} int_{B(x,t)} |f|``.

    ``method`` is ``brute`` (pairwise kernel), ``prefix`` (window sums) or
    ``auto`` (prefix).
    """
    _check_alpha(alpha, f.n)
    radii = default_radii(f) if radii is None else np.atleast_1d(np.asarray(radii, dtype=float))
    if radii.size == 0:
        raise ValueError("radius set must be nonempty")
    absf = np.abs(f.flat)
    scale = _scale(f, alpha, radii)
    if method == "brute":
        out = kernels.maximal_brute(f.points, absf, effective_radius(radii), scale)
    elif method in ("prefix", "auto"):
        out = np.zeros(absf.size)
        for r, sc in zip(radii, scale):
            np.maximum(out, sc * ball_sums_prefix(f, absf, r), out=out)
    else:
        raise ValueError(f"unknown method {method!r}")
    return f.with_values(out)


def riesz_diagonal(f: GridFunction, alpha: float) -> float:
    """In-cell integral of ``|y|^{alpha-n}`` over the cell around its centre.

    1-D: exact over ``[-h/2, h/2]``. 2-D: over the disc of equal area.
    """
    if f.n == 1:
        return 2.0 * (0.5 * f.h[0]) ** alpha / alpha
    rho = math.sqrt(f.cell_volume / math.pi)
    return 2.0 * math.pi * rho ** alpha / alpha


def riesz_potential(f: GridFunction, alpha: float) -> GridFunction:
    """``I_alpha f(x) = int f(y) |x-y|^{alpha-n} dy`` by a direct double sum."""
    _check_alpha(alpha, f.n, strict=True)
    out = kernels.riesz_sum(f.points, np.ascontiguousarray(f.flat), np.zeros(f.flat.size), 0,
                            alpha - f.n, riesz_diagonal(f, alpha), f.cell_volume)
    return f.with_values(out)


def _check_pair(f: GridFunction, b: GridFunction):
    if not f.same_grid(b):
        raise ValueError("f and b must live on the same grid")


def commutator_frac_maximal(f: GridFunction, b: GridFunction, alpha: float = 0.0, radii=None) -> GridFunction:
    """``M_{b,alpha} f(x) = max_t |B|^{alpha/n-1} int_B |b(x)-b(y)||f(y)| dy``."""
    _check_pair(f, b)
    _check_alpha(alpha, f.n)
    radii = default_radii(f) if radii is None else np.atleast_1d(np.asarray(radii, dtype=float))
    scale = _scale(f, alpha, radii)
    out = kernels.comm_maximal_brute(f.points, np.abs(f.flat), np.ascontiguousarray(b.flat),
                                     effective_radius(radii), scale)
    return f.with_values(out)


def commutator_riesz(f: GridFunction, b: GridFunction, alpha: float, mode: str = "signed") -> GridFunction:
    """``[b, I_alpha] f`` (``signed``) or ``|b, I_alpha| f`` (``absolute``).

    The diagonal cell drops out because ``b(x) - b(x) = 0``.
    """
    _check_pair(f, b)
    _check_alpha(alpha, f.n, strict=True)
    code = {"signed": 1, "absolute": 2}.get(mode)
    if code is None:
        raise ValueError("mode must be 'signed' or 'absolute'")
    out = kernels.riesz_sum(f.points, np.ascontiguousarray(f.flat), np.ascontiguousarray(b.flat), code,
                            alpha - f.n, 0.0, f.cell_volume)
    return f.with_values(out)


# -- means and BMO --------------------------------------------------------

def ball_mean(f: GridFunction, ball: Ball) -> float:
    """Cell average of ``f`` over the centres inside ``ball``."""
    m = region_mask(f, ball)
    if not m.any():
        raise EmptyIntersectionError(f"ball {ball} contains no cell centre")
    return float(f.flat[m].mean())


def ball_means(f: GridFunction, centers, radii) -> np.ndarray:
    centers = np.atleast_2d(np.asarray(centers, dtype=float))
    sums, counts = kernels.ball_sums(f.points, np.ascontiguousarray(f.flat), centers,
                                     effective_radius(np.asarray(radii, dtype=float)))
    if np.any(counts == 0):
        raise EmptyIntersectionError("a ball contains no cell centre")
    return sums / counts


def oscillations(b: GridFunction, family: BallFamily, p: float = 1.0):
    """Per-ball ``(mean_B |b - b_B|^p)^{1/p}`` for every ball of ``family``
    that contains at least one cell centre."""
    centers, radii = family.flat()
    _, osc, counts = kernels.ball_oscillation(b.points, np.ascontiguousarray(b.flat), centers,
                                              effective_radius(radii), float(p))
    keep = counts > 0
    return osc[keep] ** (1.0 / p), centers[keep], radii[keep]


def oscillation_norm(b: GridFunction, family: BallFamily, p: float = 1.0) -> float:
    osc, _, _ = oscillations(b, family, p)
    return float(osc.max(initial=0.0))


def bmo_norm(b: GridFunction, family: BallFamily) -> float:
    """``sup_B |B|^-1 int_B |b - b_B|`` over the family."""
    return oscillation_norm(b, family, 1.0)


# -- config-level operator ----------------------------------------------

@dataclass(frozen=True)
class OperatorSpec:
    kind: str
    alpha: float = 0.0
    radii: Optional[tuple] = None  # (r_min, r_max, ratio); None -> default_radii
    symbol_b: Optional[GridFunction] = None

    def __post_init__(self):
        if self.kind not in OPERATOR_KINDS:
            raise ValueError(f"unknown operator kind {self.kind!r}")
        if self.kind.startswith("comm") and self.symbol_b is None:
            raise ValueError(f"{self.kind} needs a symbol b")

    def radius_set(self, f: GridFunction):
        if self.radii is None:
            return default_radii(f)
        return geometric_radii(*self.radii)

    def apply(self, f: GridFunction) -> GridFunction:
        if self.symbol_b is not None and f.n != self.symbol_b.n:
            raise ValueError("symbol b dimension does not match f")
        _check_alpha(self.alpha, f.n, strict=self.kind in ("riesz", "comm_riesz_signed", "comm_riesz_absolute"))
        if self.kind == "frac_maximal":
            return fractional_maximal(f, self.alpha, self.radius_set(f))
        if self.kind == "riesz":
            return riesz_potential(f, self.alpha)
        if self.kind == "comm_frac_maximal":
            return commutator_frac_maximal(f, self.symbol_b, self.alpha, self.radius_set(f))
        mode = "signed" if self.kind == "comm_riesz_signed" else "absolute"
        return commutator_riesz(f, self.symbol_b, self.alpha, mode)
