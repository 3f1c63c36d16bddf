"""Grid-sampled functions on boxes in R^n (n = 1, 2) and norms over them.

A cell belongs to a ball iff its centre does. Integrals are Riemann sums
over cells. Supports are compact by construction (zero outside the box).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .young import YoungFunction, from_spec as young_from_spec

UNIT_BALL_VOLUME = {1: 2.0, 2: math.pi}
NORM_RTOL = 1e-6
# Balls are open; radii are shrunk by this factor before every membership
# test so that cell centres lying exactly on a sphere are excluded the same
# way by every code path (brute force, prefix sums, masks).
BOUNDARY_SHRINK = 1.0 - 1e-9
_MAX_MASK_ENTRIES = 1 << 22


class EmptyIntersectionError(ValueError):
    """A ball contains no cell centre of the grid."""


# -- grid functions -------------------------------------------------------

class GridFunction:
    """Samples on the cell centres of a uniform grid over ``[lower, upper]``.

    ``values`` has one axis per dimension (row-major); the array is stored
    read-only.
    """

    def __init__(self, lower, upper, values):
        values = np.array(values, dtype=float)
        lower = np.atleast_1d(np.asarray(lower, dtype=float))
        upper = np.atleast_1d(np.asarray(upper, dtype=float))
        n = values.ndim
        if n not in (1, 2):
            raise ValueError("only 1-D and 2-D grids are supported")
        if lower.shape != (n,) or upper.shape != (n,):
            raise ValueError("box corners must match the dimension of values")
        if np.any(upper <= lower):
            raise ValueError("box must have positive side lengths")
        if min(values.shape) < 2:
            raise ValueError("resolution must be at least 2 per axis")
        if not np.all(np.isfinite(values)):
            raise ValueError("values must be finite")
        values.setflags(write=False)
        self.lower = lower
        self.upper = upper
        self.values = values

    @classmethod
    def from_callable(cls, lower, upper, resolution, func):
        """Sample ``func(points)`` (points of shape ``(N, n)``) on cell centres."""
        grid = cls.zeros(lower, upper, resolution)
        vals = np.asarray(func(grid.points), dtype=float).reshape(grid.shape)
        return grid.with_values(vals)

    @classmethod
    def zeros(cls, lower, upper, resolution):
        shape = tuple(np.atleast_1d(resolution).astype(int))
        return cls(lower, upper, np.zeros(shape))

    @property
    def n(self) -> int:
        return self.values.ndim

    @property
    def shape(self):
        return self.values.shape

    @property
    def resolution(self):
        return self.values.shape

    @property
    def h(self) -> np.ndarray:
        return (self.upper - self.lower) / np.array(self.shape)

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.h))

    @property
    def diameter(self) -> float:
        return float(np.linalg.norm(self.upper - self.lower))

    def axes(self):
        return [self.lower[k] + (np.arange(self.shape[k]) + 0.5) * self.h[k] for k in range(self.n)]

    @property
    def points(self) -> np.ndarray:
        """Cell centres as an ``(N, n)`` array in row-major order."""
        mesh = np.meshgrid(*self.axes(), indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)

    @property
    def flat(self) -> np.ndarray:
        return self.values.ravel()

    def with_values(self, values) -> "GridFunction":
        return GridFunction(self.lower, self.upper, np.asarray(values).reshape(self.shape))

    def same_grid(self, other: "GridFunction") -> bool:
        return (self.shape == other.shape and np.allclose(self.lower, other.lower)
                and np.allclose(self.upper, other.upper))

    def origin_cells(self) -> np.ndarray:
        """Mask of the cells whose closed extent contains the origin."""
        pts = self.points
        inside = np.all(np.abs(pts) <= 0.5 * self.h[None, :] * (1 + 1e-12), axis=1)
        return inside

    def __add__(self, other):
        if isinstance(other, GridFunction):
            return self.with_values(self.values + other.values)
        return self.with_values(self.values + other)

    def __mul__(self, other):
        if isinstance(other, GridFunction):
            return self.with_values(self.values * other.values)
        return self.with_values(self.values * other)

    __rmul__ = __mul__

    def __neg__(self):
        return self.with_values(-self.values)

    def __sub__(self, other):
        return self + (-other)

    def __abs__(self):
        return self.with_values(np.abs(self.values))

    def __repr__(self):
        return f"GridFunction(n={self.n}, shape={self.shape}, box={self.lower.tolist()}..{self.upper.tolist()})"


# -- balls ----------------------------------------------------------------

@dataclass(frozen=True)
class Ball:
    center: tuple
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("ball radius must be positive")
        object.__setattr__(self, "center", tuple(np.atleast_1d(np.asarray(self.center, dtype=float)).tolist()))

    @property
    def n(self) -> int:
        return len(self.center)

    @property
    def volume(self) -> float:
        return UNIT_BALL_VOLUME[self.n] * self.radius ** self.n


def geometric_radii(r_min: float, r_max: float, ratio: float = math.sqrt(2.0)) -> np.ndarray:
    if not (r_min > 0 and r_max >= r_min and ratio > 1):
        raise ValueError("need 0 < r_min <= r_max and ratio > 1")
    count = int(math.floor(math.log(r_max / r_min) / math.log(ratio) + 1e-9)) + 1
    return r_min * ratio ** np.arange(count)


@dataclass(frozen=True)
class BallFamily:
    """All balls ``B(c, r)`` with ``c`` in ``centers`` and ``r`` in ``radii``."""

    centers: np.ndarray
    radii: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.centers, dtype=float)
        # a flat array lists 1-D centres
        c = c.reshape(-1, 1) if c.ndim <= 1 else c
        r = np.atleast_1d(np.asarray(self.radii, dtype=float))
        if c.size == 0 or r.size == 0:
            raise ValueError("ball family must be nonempty")
        if np.any(r <= 0):
            raise ValueError("radii must be positive")
        object.__setattr__(self, "centers", c)
        object.__setattr__(self, "radii", r)

    @classmethod
    def for_grid(cls, grid: GridFunction, ratio: float = math.sqrt(2.0), r_min: Optional[float] = None,
                 r_max: Optional[float] = None, centers_per_axis: Optional[int] = None) -> "BallFamily":
        """Default family: radii ``2h .. diameter`` with ratio ``sqrt 2``, centres
        on a sub-lattice of the cell centres."""
        h = float(np.max(grid.h))
        r_min = 2.0 * h if r_min is None else r_min
        r_max = grid.diameter if r_max is None else r_max
        if centers_per_axis is None:
            centers_per_axis = 64 if grid.n == 1 else 16
        axes = []
        for k, ax in enumerate(grid.axes()):
            stride = max(1, int(math.ceil(ax.size / centers_per_axis)))
            start = (ax.size % stride) // 2 if ax.size > stride else 0
            axes.append(ax[start::stride])
        mesh = np.meshgrid(*axes, indexing="ij")
        centers = np.stack([m.ravel() for m in mesh], axis=1)
        return cls(centers, geometric_radii(r_min, r_max, ratio))

    @property
    def n(self) -> int:
        return self.centers.shape[1]

    def __len__(self):
        return self.centers.shape[0] * self.radii.size

    def flat(self):
        """``(centers, radii)`` arrays with one row per ball."""
        c = np.repeat(self.centers, self.radii.size, axis=0)
        r = np.tile(self.radii, self.centers.shape[0])
        return c, r

    def balls(self):
        for c in self.centers:
            for r in self.radii:
                yield Ball(tuple(c), float(r))


def effective_radius(r):
    return np.asarray(r, dtype=float) * BOUNDARY_SHRINK


def _masks(grid: GridFunction, centers, radii):
    """Boolean ball membership rows for chunks of balls."""
    pts = grid.points
    centers = np.atleast_2d(centers)
    step = max(1, _MAX_MASK_ENTRIES // pts.shape[0])
    for lo in range(0, centers.shape[0], step):
        hi = min(centers.shape[0], lo + step)
        diff = centers[lo:hi, None, :] - pts[None, :, :]
        d2 = np.einsum("ijk,ijk->ij", diff, diff)
        yield lo, hi, d2 < (effective_radius(np.asarray(radii[lo:hi])) ** 2)[:, None]


def region_mask(grid: GridFunction, region=None) -> np.ndarray:
    """Flat membership mask; ``region`` is a Ball, a ``(lower, upper)`` box or None."""
    if region is None:
        return np.ones(grid.values.size, dtype=bool)
    if isinstance(region, Ball):
        if region.n != grid.n:
            raise ValueError("ball dimension does not match the grid")
        (_, _, m), = _masks(grid, np.array([region.center]), np.array([region.radius]))
        return m[0]
    lo, hi = (np.atleast_1d(np.asarray(c, dtype=float)) for c in region)
    pts = grid.points
    return np.all((pts >= lo) & (pts <= hi), axis=1)


# -- weights --------------------------------------------------------------

class WeightSpec:
    """Closed-form radial weight ``r -> phi(r)``; subclasses are atoms of a
    small grammar combined with ``*`` and ``/``."""

    def __call__(self, r):
        raise NotImplementedError

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            other = Constant(float(other))
        return Product((self, other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return Product((self, Constant(1.0 / float(other))))
        return Product((self, Reciprocal(other)))


@dataclass(frozen=True, eq=False)
class Constant(WeightSpec):
    c: float = 1.0

    def __call__(self, r):
        return np.full(np.shape(r), self.c) if np.ndim(r) else self.c

    def __str__(self):
        return f"{self.c:g}"


@dataclass(frozen=True, eq=False)
class Power(WeightSpec):
    a: float
    c: float = 1.0

    def __call__(self, r):
        return self.c * np.asarray(r, dtype=float) ** self.a

    def __str__(self):
        return f"{self.c:g}*r^{self.a:g}"


@dataclass(frozen=True, eq=False)
class YoungInverse(WeightSpec):
    """``r -> phi^{-1}(r**exponent)``."""

    phi: YoungFunction
    exponent: float

    def __call__(self, r):
        with np.errstate(over="ignore"):
            return self.phi.inverse(np.asarray(r, dtype=float) ** self.exponent)

    def __str__(self):
        return f"{self.phi}^-1(r^{self.exponent:g})"


@dataclass(frozen=True, eq=False)
class InverseRatio(WeightSpec):
    """``num^{-1}(r^-n) / den^{-1}(r^-lam)``; ``den`` defaults to ``num``."""

    num: YoungFunction
    n: int
    lam: float
    den: Optional[YoungFunction] = None

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        den = self.num if self.den is None else self.den
        with np.errstate(over="ignore"):
            return self.num.inverse(r ** (-self.n)) / den.inverse(r ** (-self.lam))

    def __str__(self):
        den = self.num if self.den is None else self.den
        return f"{self.num}^-1(r^-{self.n})/{den}^-1(r^-{self.lam:g})"


@dataclass(frozen=True, eq=False)
class LogFactor(WeightSpec):
    """``t -> 1 + ln(t / anchor)``."""

    anchor: float = 1.0

    def __call__(self, r):
        return 1.0 + np.log(np.asarray(r, dtype=float) / self.anchor)


@dataclass(frozen=True, eq=False)
class Product(WeightSpec):
    factors: tuple

    def __call__(self, r):
        out = np.ones(np.shape(r))
        for f in self.factors:
            out = out * f(r)
        return out if np.ndim(out) else float(out)

    def __str__(self):
        return "*".join(f"({f})" for f in self.factors)


@dataclass(frozen=True, eq=False)
class Reciprocal(WeightSpec):
    inner: WeightSpec

    def __call__(self, r):
        with np.errstate(divide="ignore"):
            return 1.0 / np.asarray(self.inner(r), dtype=float)

    def __str__(self):
        return f"1/({self.inner})"


def weight_from_spec(spec, young_lookup=None) -> WeightSpec:
    """Parse a weight config.

    Forms: a number; ``{type: power, a, c}``; ``{type: constant, c}``;
    ``{type: inverse_ratio, phi, n, lam, den}``; ``{type: young_inverse, phi,
    exponent}``; ``{type: product, factors: [...]}``; ``{type: reciprocal,
    of: ...}``. Young functions are inline specs or names resolved with
    ``young_lookup``.
    """
    if isinstance(spec, WeightSpec):
        return spec
    if isinstance(spec, (int, float)):
        return Constant(float(spec))
    if not isinstance(spec, dict) or "type" not in spec:
        raise ValueError(f"weight spec needs a 'type': {spec!r}")

    def young(ref):
        if isinstance(ref, str):
            if young_lookup is None:
                raise ValueError(f"undefined Young function {ref!r}")
            return young_lookup(ref)
        return young_from_spec(ref)

    t = spec["type"]
    if t == "constant":
        return Constant(float(spec.get("c", 1.0)))
    if t == "power":
        return Power(float(spec["a"]), float(spec.get("c", 1.0)))
    if t == "inverse_ratio":
        den = spec.get("den")
        return InverseRatio(young(spec["phi"]), int(spec["n"]), float(spec["lam"]),
                            None if den is None else young(den))
    if t == "young_inverse":
        return YoungInverse(young(spec["phi"]), float(spec["exponent"]))
    if t == "log_factor":
        return LogFactor(float(spec.get("anchor", 1.0)))
    if t == "product":
        return Product(tuple(weight_from_spec(f, young_lookup) for f in spec["factors"]))
    if t == "reciprocal":
        return Reciprocal(weight_from_spec(spec["of"], young_lookup))
    raise ValueError(f"unknown weight type {t!r}")


# -- norms ----------------------------------------------------------------

def distribution_function(f: GridFunction, region, t: float) -> float:
    """``|{x in region : |f(x)| > t}|`` as a cell count times the cell volume."""
    m = region_mask(f, region)
    return float(np.count_nonzero(np.abs(f.flat[m]) > t)) * f.cell_volume


def _power_params(phi: YoungFunction):
    if phi.kind == "power":
        return phi.p, phi.coef
    if phi.kind == "scaled_power":
        return phi.p, 1.0 / phi.p
    return None


def _bisect_lambda(modular, start, rtol=NORM_RTOL):
    """Smallest ``lam`` with ``modular(lam) <= 1`` per row (vectorised).

    ``modular`` is nonincreasing in ``lam``; the bracket grows or shrinks
    by factors of 2 and is then bisected in ``log lam``.
    """
    lo = start.copy()
    hi = start.copy()
    for _ in range(2100):
        bad = modular(hi) > 1.0
        if not bad.any():
            break
        hi = np.where(bad, hi * 2.0, hi)
    for _ in range(2100):
        good = modular(lo) <= 1.0
        if not good.any():
            break
        lo = np.where(good, lo * 0.5, lo)
    while np.any(hi > lo * (1.0 + 0.1 * rtol)):
        mid = np.sqrt(lo * hi)
        ok = modular(mid) <= 1.0
        hi = np.where(ok, mid, hi)
        lo = np.where(ok, lo, mid)
    return hi


def _norms_from_masks(absf, masks, phi: YoungFunction, vol, weak: bool):
    """Luxemburg (or weak) norms of ``absf`` restricted to each mask row."""
    nb = masks.shape[0]
    out = np.zeros(nb)
    sup = np.where(masks, absf[None, :], 0.0).max(axis=1)
    live = sup > 0
    if not live.any():
        return out
    masks = masks[live]
    sup = sup[live]
    if phi.kind == "linfty_step":
        out[live] = sup / phi.coef
        return out
    pw = _power_params(phi)
    if not weak:
        if pw is not None:
            p, c = pw
            s = masks @ absf ** p
            out[live] = (c * s * vol) ** (1.0 / p)
            return out

        def modular(lam):
            with np.errstate(over="ignore", invalid="ignore"):
                vals = np.asarray(phi(absf[None, :] / lam[:, None]), dtype=float)
            return np.where(masks, vals, 0.0).sum(axis=1) * vol

        out[live] = _bisect_lambda(modular, sup)
        return out
    # weak: sup_t Phi(t) m(f/lam, t) = max over sample values v of
    # Phi(v/lam) * |{|f| >= v}| (left-continuity of Phi at the jumps)
    order = np.argsort(-absf, kind="stable")
    s_vals = absf[order]
    ms = masks[:, order]
    counts = np.cumsum(ms, axis=1)
    # extend each tie group to its last index so equal values count together
    last = np.searchsorted(-s_vals, -s_vals, side="right") - 1
    counts = counts[:, last]
    if pw is not None:
        p, c = pw
        best = np.where(ms, s_vals[None, :] ** p * counts, 0.0).max(axis=1)
        out[live] = (c * best * vol) ** (1.0 / p)
        return out

    def weak_modular(lam):
        with np.errstate(over="ignore", invalid="ignore"):
            vals = np.asarray(phi(s_vals[None, :] / lam[:, None]), dtype=float)
        prod = np.where(ms & (counts > 0), vals * counts, 0.0)
        return prod.max(axis=1) * vol

    out[live] = _bisect_lambda(weak_modular, sup)
    return out


def luxemburg_norm(f: GridFunction, phi: YoungFunction, region=None) -> float:
    """``inf{lam > 0 : int_region Phi(|f|/lam) <= 1}``; 0 for the zero function."""
    m = region_mask(f, region)
    return float(_norms_from_masks(np.abs(f.flat), m[None, :], phi, f.cell_volume, weak=False)[0])


def weak_luxemburg_norm(f: GridFunction, phi: YoungFunction, region=None) -> float:
    """``inf{lam > 0 : sup_t Phi(t) m(f/lam, t) <= 1}`` over ``region``."""
    m = region_mask(f, region)
    return float(_norms_from_masks(np.abs(f.flat), m[None, :], phi, f.cell_volume, weak=True)[0])


def lp_norm(f: GridFunction, p: float = 1.0, region=None) -> float:
    m = region_mask(f, region)
    a = np.abs(f.flat[m])
    if p == math.inf:
        return float(a.max(initial=0.0))
    return float((np.sum(a ** p) * f.cell_volume) ** (1.0 / p))


def char_ball_norm_oracle(phi: YoungFunction, ball) -> float:
    """Exact ``1 / phi^{-1}(1/|B|)``; ``ball`` is a Ball or a volume."""
    vol = ball.volume if isinstance(ball, Ball) else float(ball)
    return float(1.0 / phi.inverse(1.0 / vol))


def ball_norms(f: GridFunction, phi: YoungFunction, centers, radii, weak: bool = False) -> np.ndarray:
    """Local (weak) Luxemburg norms over the balls ``B(centers[i], radii[i])``."""
    absf = np.abs(f.flat)
    centers = np.atleast_2d(np.asarray(centers, dtype=float))
    radii = np.asarray(radii, dtype=float)
    pw = _power_params(phi)
    if pw is not None and not weak:
        # hot path through the compiled ball-sum kernel
        p, c = pw
        sums, _ = kernels.ball_sums(f.points, absf ** p, centers, effective_radius(radii))
        return (c * sums * f.cell_volume) ** (1.0 / p)
    out = np.empty(radii.size)
    for lo, hi, m in _masks(f, centers, radii):
        out[lo:hi] = _norms_from_masks(absf, m, phi, f.cell_volume, weak)
    return out


@dataclass
class MorreyProfile:
    """Per-ball terms of a generalized Orlicz-Morrey norm."""

    norm: float
    centers: np.ndarray
    radii: np.ndarray
    terms: np.ndarray
    argmax: int = field(default=0)


def orlicz_morrey_profile(f: GridFunction, phi: YoungFunction, weight: WeightSpec,
                          family: BallFamily, weak: bool = False) -> MorreyProfile:
    centers, radii = family.flat()
    local = ball_norms(f, phi, centers, radii, weak)
    with np.errstate(over="ignore", invalid="ignore"):
        scale = np.asarray(phi.inverse(radii ** (-float(f.n))), dtype=float) / np.asarray(weight(radii), dtype=float)
        terms = np.where(local == 0, 0.0, scale * local)
    k = int(np.argmax(terms))
    return MorreyProfile(float(terms[k]), centers, radii, terms, k)


def orlicz_morrey_norm(f: GridFunction, phi: YoungFunction, weight: WeightSpec,
                       family: BallFamily, weak: bool = False) -> float:
    """``max_B weight(r)^-1 Phi^{-1}(r^-n) ||f||_{L^Phi(B)}`` over the family
    (weak Luxemburg norm when ``weak``)."""
    return orlicz_morrey_profile(f, phi, weight, family, weak).norm


# -- test-function constructors ------------------------------------------

def _norm_points(grid: GridFunction, center=None):
    pts = grid.points
    if center is not None:
        pts = pts - np.atleast_1d(np.asarray(center, dtype=float))[None, :]
    return np.linalg.norm(pts, axis=1)


def _regularised_radius(grid: GridFunction):
    # the cells containing the origin use |x| = h/2
    rad = _norm_points(grid)
    return np.where(grid.origin_cells(), 0.5 * float(np.min(grid.h)), rad)


def char_ball(grid: GridFunction, radius: float = 1.0, center=None, height: float = 1.0) -> GridFunction:
    d = _norm_points(grid, center)
    return grid.with_values(np.where(d < radius, height, 0.0))


def power_decay(grid: GridFunction, beta: float) -> GridFunction:
    """``|x|^-beta`` with ``|x|`` replaced by ``h/2`` on the origin cells."""
    return grid.with_values(_regularised_radius(grid) ** (-beta))


def log_bmo(grid: GridFunction) -> GridFunction:
    """``log|x|``; the origin cells take ``log(h/2)``."""
    return grid.with_values(np.log(_regularised_radius(grid)))


def gaussian(grid: GridFunction, width: float = 1.0, center=None) -> GridFunction:
    d = _norm_points(grid, center)
    return grid.with_values(np.exp(-0.5 * (d / width) ** 2))


def random_function(grid: GridFunction, seed: int = 0, kind: str = "normal") -> GridFunction:
    rng = np.random.default_rng(seed)
    if kind == "normal":
        vals = rng.standard_normal(grid.shape)
    elif kind == "uniform":
        vals = rng.uniform(0.0, 1.0, grid.shape)
    else:
        raise ValueError(f"unknown random kind {kind!r}")
    return grid.with_values(vals)


SHAPES = {
    "char_ball": char_ball,
    "power_decay": power_decay,
    "log_bmo": log_bmo,
    "gaussian": gaussian,
    "random": random_function,
}


def function_from_spec(grid: GridFunction, spec: dict) -> GridFunction:
    """``{shape: name, **params}`` -> GridFunction on the grid of ``grid``."""
    spec = dict(spec)
    shape = spec.pop("shape", None)
    if shape == "constant":
        return grid.with_values(np.full(grid.shape, float(spec.get("c", 1.0))))
    if shape not in SHAPES:
        raise ValueError(f"unknown function shape {shape!r}")
    return SHAPES[shape](grid, **spec)


def grid_from_spec(spec: dict) -> GridFunction:
    """``{n, lower, upper, resolution}`` with scalars broadcast over axes."""
    n = int(spec.get("n", 1))
    lower = np.broadcast_to(np.asarray(spec.get("lower", -1.0), dtype=float), (n,))
    upper = np.broadcast_to(np.asarray(spec.get("upper", 1.0), dtype=float), (n,))
    res = np.broadcast_to(np.asarray(spec.get("resolution", 256), dtype=int), (n,))
    return GridFunction.zeros(lower, upper, res)


# -- CSV ------------------------------------------------------------------

def _header(f: GridFunction) -> str:
    box = " ".join(repr(float(v)) for v in np.concatenate([f.lower, f.upper]))
    res = " ".join(str(s) for s in f.shape)
    return f"# box: {box}; resolution: {res}"


def save_csv(f: GridFunction, path) -> None:
    """1-D: ``x,value`` rows; 2-D: row-major matrix. Both start with a
    ``# box: ...; resolution: ...`` header."""
    with open(path, "w") as fh:
        fh.write(_header(f) + "\n")
        if f.n == 1:
            fh.write("x,value\n")
            for x, v in zip(f.axes()[0], f.values):
                fh.write(f"{float(x)!r},{float(v)!r}\n")
        else:
            for row in f.values:
                fh.write(",".join(repr(float(v)) for v in row) + "\n")


def _parse_header(line: str):
    body = line.lstrip("#").strip()
    parts = {k.strip(): v for k, v in (p.split(":", 1) for p in body.split(";"))}
    box = np.array(parts["box"].split(), dtype=float)
    res = tuple(int(v) for v in parts["resolution"].split())
    n = len(res)
    return box[:n], box[n:], res


def load_csv(path) -> GridFunction:
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    header = None
    if lines and lines[0].startswith("#"):
        header = _parse_header(lines[0])
        lines = lines[1:]
    if lines and lines[0].lower().startswith("x,"):
        lines = lines[1:]
    rows = np.array([[float(v) for v in ln.split(",")] for ln in lines])
    if header is not None:
        lower, upper, res = header
        if len(res) == 1:
            return GridFunction(lower, upper, rows[:, -1])
        return GridFunction(lower, upper, rows.reshape(res))
    if rows.shape[1] != 2:
        raise ValueError("2-D grid CSV needs a '# box: ...; resolution: ...' header")
    x = rows[:, 0]
    h = (x[-1] - x[0]) / (x.size - 1)
    return GridFunction([x[0] - h / 2], [x[-1] + h / 2], rows[:, 1])


__all__: Sequence[str] = [
    "GridFunction", "Ball", "BallFamily", "geometric_radii", "EmptyIntersectionError",
    "WeightSpec", "Constant", "Power", "YoungInverse", "InverseRatio", "LogFactor", "Product",
    "Reciprocal", "weight_from_spec", "distribution_function", "luxemburg_norm",
    "weak_luxemburg_norm", "lp_norm", "char_ball_norm_oracle", "ball_norms", "orlicz_morrey_norm",
    "orlicz_morrey_profile", "MorreyProfile", "region_mask", "char_ball", "power_decay", "log_bmo",
    "gaussian", "random_function", "function_from_spec", "grid_from_spec", "save_csv", "load_csv",
]
