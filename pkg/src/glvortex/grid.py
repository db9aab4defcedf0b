"""Discretized cylinder: a disc cross-section times a periodic axis.

Complex fields are stored on the bounding square of the disc at n_x x n_x
nodes, for each of n_z periodic axial samples.  Nodes strictly inside the
disc are evolved; the ring of nodes just outside ("band") carries Dirichlet
data.  Horizontal derivatives are centered finite differences (one-sided on
the band), axial derivatives are spectral.  Quadrature weights are exact
cell/disc overlap areas, so integrating 1 over the disc is exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np


class DegenerateGridError(ValueError):
    pass


class GridMismatchError(ValueError):
    pass


def _sqrt_antiderivative(x, radius):
    # antiderivative of sqrt(radius^2 - x^2), valid for |x| <= radius
    x = np.clip(x, -radius, radius)
    s = np.sqrt(np.maximum(radius * radius - x * x, 0.0))
    return 0.5 * (x * s + radius * radius * np.arcsin(np.clip(x / radius, -1.0, 1.0)))


def _corner_area(radius, x, y):
    """Area of {u <= x} & {v <= y} & disc(radius), vectorized over x, y."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    upper = np.clip(x, -radius, radius)
    A = _sqrt_antiderivative
    base = A(upper, radius) - A(-radius, radius)  # integral of the lower half width

    # integral of clip(y, -s(u), s(u)) over u in [-radius, upper]
    out = np.empty(np.broadcast(x, y).shape, dtype=float)
    yb = np.broadcast_to(y, out.shape)
    ub = np.broadcast_to(upper, out.shape)

    # y beyond the disc: the clip saturates everywhere
    hi = yb >= radius
    lo = yb <= -radius
    mid = ~(hi | lo)

    baseb = np.broadcast_to(base, out.shape)
    out[hi] = baseb[hi]
    out[lo] = -baseb[lo]

    if np.any(mid):
        ym = yb[mid]
        um = ub[mid]
        c = np.sqrt(np.maximum(radius * radius - ym * ym, 0.0))
        sgn = np.sign(ym)
        u1 = np.minimum(um, -c)
        part1 = np.where(u1 > -radius, A(u1, radius) - A(-radius, radius), 0.0) * sgn
        u2 = np.clip(um, -c, c)
        part2 = ym * np.maximum(u2 + c, 0.0)
        part3 = np.where(um > c, A(um, radius) - A(c, radius), 0.0) * sgn
        out[mid] = part1 + part2 + part3

    return out + baseb


def disc_cell_weights(radius, xs, h):
    """Exact overlap areas between node-centered cells and the disc."""
    edges = np.concatenate([xs - 0.5 * h, [xs[-1] + 0.5 * h]])
    ex, ey = np.meshgrid(edges, edges, indexing="ij")
    corner = _corner_area(radius, ex, ey)
    w = corner[1:, 1:] - corner[:-1, 1:] - corner[1:, :-1] + corner[:-1, :-1]
    w[w < 1e-14 * h * h] = 0.0
    return w


def _mask_too_thin(inside):
    """True when no row/column crosses the mask with >= 3 nodes."""
    if not inside.any():
        return True
    row_max = inside.sum(axis=0).max()
    col_max = inside.sum(axis=1).max()
    return row_max < 3 or col_max < 3


@dataclass(eq=False)
class GridSpec:
    """Geometry of the discrete cylinder (disc times periodic interval)."""

    disc_radius: float = 1.0
    n_x: int = 64
    n_z: int = 16

    h_x: float = dc_field(init=False)
    h_z: float = dc_field(init=False)

    def __post_init__(self):
        if self.disc_radius <= 0:
            raise ValueError("disc_radius must be positive")
        if self.n_x < 16:
            raise ValueError("n_x must be at least 16")
        if self.n_z < 8:
            raise ValueError("n_z must be at least 8")
        self.xs = np.linspace(-self.disc_radius, self.disc_radius, self.n_x)
        self.h_x = self.xs[1] - self.xs[0]
        self.h_z = 1.0 / self.n_z
        self.zs = np.arange(self.n_z) * self.h_z
        self.x1, self.x2 = np.meshgrid(self.xs, self.xs, indexing="ij")
        rr = np.hypot(self.x1, self.x2)
        self.inside = rr < self.disc_radius
        self.degenerate = _mask_too_thin(self.inside)

        w = disc_cell_weights(self.disc_radius, self.xs, self.h_x)
        neighbor = np.zeros_like(self.inside)
        neighbor[1:, :] |= self.inside[:-1, :]
        neighbor[:-1, :] |= self.inside[1:, :]
        neighbor[:, 1:] |= self.inside[:, :-1]
        neighbor[:, :-1] |= self.inside[:, 1:]
        self.band = ~self.inside & (neighbor | (w > 0.0))
        self.avail = self.inside | self.band
        self.w2d = np.where(self.avail, w, 0.0)

        # axial wavenumbers: first derivative drops the Nyquist mode,
        # the second derivative keeps its full k^2
        m = np.fft.fftfreq(self.n_z, d=self.h_z)  # cycles per unit length
        k = 2.0 * np.pi * m
        k1 = k.copy()
        if self.n_z % 2 == 0:
            k1[self.n_z // 2] = 0.0
        self.kz1 = k1
        self.kz2sq = k * k

    def same_as(self, other: "GridSpec") -> bool:
        return (
            self.disc_radius == other.disc_radius
            and self.n_x == other.n_x
            and self.n_z == other.n_z
        )

    def require_same(self, other: "GridSpec"):
        if not self.same_as(other):
            raise GridMismatchError("fields live on different grids")


def _check_grids(*fields):
    g = fields[0].grid
    for f in fields[1:]:
        g.require_same(f.grid)
    return g


@dataclass(eq=False)
class ComplexField:
    """Complex scalar field on the masked cylinder with pinned Dirichlet band."""

    grid: GridSpec
    values: np.ndarray
    boundary_data: np.ndarray

    @classmethod
    def zeros(cls, grid: GridSpec) -> "ComplexField":
        shape = (grid.n_x, grid.n_x, grid.n_z)
        return cls(grid, np.zeros(shape, dtype=np.complex128), np.zeros(shape, dtype=np.complex128))

    @classmethod
    def from_values(cls, grid: GridSpec, values, zero_trace=False) -> "ComplexField":
        v = np.array(values, dtype=np.complex128)
        v[~grid.avail, :] = 0.0
        if zero_trace:
            v[grid.band, :] = 0.0
            bd = np.zeros_like(v)
        else:
            bd = np.zeros_like(v)
            bd[grid.band, :] = v[grid.band, :]
        return cls(grid, v, bd)

    @classmethod
    def from_function(cls, grid: GridSpec, fn, zero_trace=False) -> "ComplexField":
        vals = np.zeros((grid.n_x, grid.n_x, grid.n_z), dtype=np.complex128)
        for j, z in enumerate(grid.zs):
            vals[:, :, j] = fn(grid.x1, grid.x2, z)
        return cls.from_values(grid, vals, zero_trace=zero_trace)

    def copy(self) -> "ComplexField":
        return ComplexField(self.grid, self.values.copy(), self.boundary_data.copy())

    def pin(self):
        """Re-impose the stored Dirichlet data on the band."""
        self.values[self.grid.band, :] = self.boundary_data[self.grid.band, :]
        return self

    def validate(self):
        if not np.isfinite(self.values[self.grid.avail, :]).all():
            raise ValueError("field has non-finite values on its mask")
        if not np.array_equal(
            self.values[self.grid.band, :], self.boundary_data[self.grid.band, :]
        ):
            raise ValueError("band values disagree with boundary_data")
        return self

    def __add__(self, other):
        _check_grids(self, other)
        return ComplexField(self.grid, self.values + other.values, self.boundary_data + other.boundary_data)

    def __sub__(self, other):
        _check_grids(self, other)
        return ComplexField(self.grid, self.values - other.values, self.boundary_data - other.boundary_data)

    def __mul__(self, scalar):
        return ComplexField(self.grid, self.values * scalar, self.boundary_data * scalar)

    __rmul__ = __mul__

    def __neg__(self):
        return self * (-1.0)


@dataclass(eq=False)
class VectorField3:
    """Real 3-component vector field sharing the ComplexField layout."""

    grid: GridSpec
    components: np.ndarray  # shape (3, n_x, n_x, n_z), real

    @classmethod
    def zeros(cls, grid: GridSpec) -> "VectorField3":
        return cls(grid, np.zeros((3, grid.n_x, grid.n_x, grid.n_z)))


def _shifted(arr, axis, step):
    """Shift along a horizontal axis, zero-filling; also used on masks."""
    out = np.zeros_like(arr)
    src = [slice(None)] * arr.ndim
    dst = [slice(None)] * arr.ndim
    if step > 0:
        src[axis] = slice(0, -step)
        dst[axis] = slice(step, None)
    else:
        src[axis] = slice(-step, None)
        dst[axis] = slice(0, step)
    out[tuple(dst)] = arr[tuple(src)]
    return out


def _fd_axis(values, grid, axis):
    """Centered difference along x1/x2, one-sided at the mask edge."""
    avail = grid.avail[:, :, None]
    vp = _shifted(values, axis, -1)
    vm = _shifted(values, axis, 1)
    mp = _shifted(avail, axis, -1)
    mm = _shifted(avail, axis, 1)
    h = grid.h_x
    centered = (vp - vm) / (2.0 * h)
    left = (values - vm) / h
    right = (vp - values) / h
    d = np.where(mp & mm, centered, np.where(mm, left, np.where(mp, right, 0.0)))
    return np.where(avail, d, 0.0)


def _dz(values, grid):
    return np.fft.ifft(1j * grid.kz1 * np.fft.fft(values, axis=2), axis=2)


def _dzz(values, grid):
    return np.fft.ifft(-grid.kz2sq * np.fft.fft(values, axis=2), axis=2)


def _wrap_derivative(grid, values):
    bd = np.zeros_like(values)
    bd[grid.band, :] = values[grid.band, :]
    return ComplexField(grid, values, bd)


def gradient(f: ComplexField):
    """(d/dx1, d/dx2, d/dz) of a field; spectral along the periodic axis."""
    g = f.grid
    if g.degenerate:
        raise DegenerateGridError("degenerate grid")
    d1 = _fd_axis(f.values, g, 0)
    d2 = _fd_axis(f.values, g, 1)
    dz = np.where(g.avail[:, :, None], _dz(f.values, g), 0.0)
    return (_wrap_derivative(g, d1), _wrap_derivative(g, d2), _wrap_derivative(g, dz))


def laplacian(f: ComplexField) -> ComplexField:
    """5-point horizontal stencil plus spectral axial second derivative."""
    g = f.grid
    if g.degenerate:
        raise DegenerateGridError("degenerate grid")
    v = f.values
    lap_x = (
        _shifted(v, 0, -1) + _shifted(v, 0, 1) + _shifted(v, 1, -1) + _shifted(v, 1, 1) - 4.0 * v
    ) / (g.h_x * g.h_x)
    out = np.where(g.inside[:, :, None], lap_x + _dzz(v, g), 0.0)
    return ComplexField(g, out, np.zeros_like(out))


def integrate(grid: GridSpec, values) -> float:
    """Quadrature over the masked disc times the periodic interval."""
    arr = np.asarray(values)
    if arr.ndim == 2:
        return float(np.sum(arr * grid.w2d))
    return float(np.sum(arr * grid.w2d[:, :, None]) * grid.h_z)


def inner_product(f: ComplexField, g: ComplexField) -> float:
    grid = _check_grids(f, g)
    return integrate(grid, np.real(np.conj(f.values) * g.values))


def norm0(f: ComplexField) -> float:
    return float(np.sqrt(max(inner_product(f, f), 0.0)))


def sobolev_norm(f: ComplexField, k: int) -> float:
    """Norm with k derivatives; k = 0, 1 or 2."""
    if k not in (0, 1, 2):
        raise ValueError("invalid k: expected 0, 1 or 2")
    total = inner_product(f, f)
    if k >= 1:
        grads = gradient(f)
        for d in grads:
            total += inner_product(d, d)
    if k == 2:
        for d in grads:
            for dd in gradient(d):
                total += inner_product(dd, dd)
    return float(np.sqrt(max(total, 0.0)))
