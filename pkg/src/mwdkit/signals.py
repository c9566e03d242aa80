"""Grids, signals, time-frequency shifts, inner products and mixed norms.

Signals are either analytic (evaluable at arbitrary points of R^d) or
sampled on a Grid.  Grids are uniform, symmetric about the origin and
exclude the right endpoint, so zero is always a grid point and the
frequency grid below is the centered DFT dual grid.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

import numpy as np
from numpy.polynomial.hermite import hermval

from .errors import (GridMismatch, InvalidExponent, NonPositiveParameter,
                     OffGridShift, ConfigError)

HERMITE_MAX_ORDER = 32


@dataclass(frozen=True)
class Grid:
    """Uniform grid on [-L/2, L/2) per axis with n samples.

    Points are x_j = (j - n/2) * step; frequency points are
    w_k = (k - n/2) / length.
    """

    dim: int
    n: int
    length: float

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise ConfigError("grid dimension must be 1 or 2")
        if self.n < 2 or (self.n & (self.n - 1)) != 0:
            raise ConfigError("grid size must be a power of two")
        if not self.length > 0:
            raise NonPositiveParameter("grid length must be positive")

    @property
    def step(self) -> float:
        return self.length / self.n

    @property
    def freq_step(self) -> float:
        return 1.0 / self.length

    @property
    def shape(self) -> tuple:
        return (self.n,) * self.dim

    @property
    def size(self) -> int:
        return self.n ** self.dim

    def axis(self) -> np.ndarray:
        return (np.arange(self.n) - self.n // 2) * self.step

    def freq_axis(self) -> np.ndarray:
        return (np.arange(self.n) - self.n // 2) * self.freq_step

    def mesh(self) -> np.ndarray:
        """All grid points, shape (n,)*dim + (dim,)."""
        axes = np.meshgrid(*([self.axis()] * self.dim), indexing="ij")
        return np.stack(axes, axis=-1)

    def freq_mesh(self) -> np.ndarray:
        axes = np.meshgrid(*([self.freq_axis()] * self.dim), indexing="ij")
        return np.stack(axes, axis=-1)

    def dual(self) -> "Grid":
        """Grid carrying the frequency points (dual of the dual is self)."""
        return Grid(self.dim, self.n, self.n / self.length)

    def index_of(self, shift, atol: float = 1e-9) -> np.ndarray:
        """Integer index offsets of a translation, or OffGridShift."""
        s = np.atleast_1d(np.asarray(shift, dtype=float))
        k = np.round(s / self.step)
        if np.max(np.abs(s - k * self.step)) > atol * max(self.step, 1.0):
            raise OffGridShift(f"shift {s} is not a multiple of step {self.step}")
        return k.astype(int)


def default_grid(dim: int) -> Grid:
    """Desk-scale defaults: (d=1) n=256, L=16; (d=2) n=64, L=12."""
    return Grid(1, 256, 16.0) if dim == 1 else Grid(2, 64, 12.0)


def _pts(points, dim: int) -> np.ndarray:
    p = np.asarray(points, dtype=float)
    if dim == 1 and (p.ndim == 0 or p.shape[-1] != 1):
        p = p[..., None]
    if p.shape[-1] != dim:
        raise GridMismatch(f"points have dimension {p.shape[-1]}, expected {dim}")
    return p


@dataclass(frozen=True)
class Signal:
    """Function on R^d, analytic (fn) or sampled (samples + grid).

    fn maps point arrays of shape (..., dim) to complex values (...).
    ft_fn, when present, evaluates the Fourier transform analytically.
    """

    dim: int
    fn: Optional[Callable] = None
    samples: Optional[np.ndarray] = None
    grid: Optional[Grid] = None
    ft_fn: Optional[Callable] = None
    tags: dict = field(default_factory=dict)

    @property
    def kind(self) -> str:
        return "analytic" if self.fn is not None else "sampled"

    def __call__(self, points) -> np.ndarray:
        if self.fn is None:
            raise GridMismatch("sampled signal cannot be evaluated off its grid")
        return np.asarray(self.fn(_pts(points, self.dim)), dtype=complex)


def sample(f: Signal, grid: Grid) -> np.ndarray:
    """Signal values on the grid, shape (n,)*dim."""
    if f.fn is not None:
        return np.asarray(f.fn(grid.mesh()), dtype=complex)
    if f.grid != grid:
        raise GridMismatch("sampled signal lives on a different grid")
    return f.samples


def from_samples(values: np.ndarray, grid: Grid, **tags) -> Signal:
    v = np.asarray(values, dtype=complex)
    if v.shape != grid.shape:
        raise GridMismatch(f"sample shape {v.shape} != grid shape {grid.shape}")
    return Signal(dim=grid.dim, samples=v, grid=grid, tags=dict(tags))


def gaussian(lam: float, d: int = 1) -> Signal:
    """t -> exp(-pi |t|^2 / lam)."""
    if not lam > 0:
        raise NonPositiveParameter("gaussian width must be positive")

    def fn(p):
        return np.exp(-np.pi * np.sum(p * p, axis=-1) / lam) + 0j

    def ft_fn(p):
        return lam ** (d / 2.0) * np.exp(-np.pi * lam * np.sum(p * p, axis=-1)) + 0j

    return Signal(dim=d, fn=fn, ft_fn=ft_fn, tags={"family": "gaussian", "lambda": lam})


def chirp(rate: float, lam: float = 1.0, d: int = 1) -> Signal:
    """t -> exp(pi i rate |t|^2) * exp(-pi |t|^2 / lam) (Gaussian envelope)."""
    if not lam > 0:
        raise NonPositiveParameter("chirp envelope width must be positive")
    a = 1.0 / lam - 1j * rate

    def fn(p):
        return np.exp(-np.pi * a * np.sum(p * p, axis=-1))

    def ft_fn(p):
        # FT of exp(-pi a t^2) is a^(-d/2) exp(-pi w^2 / a), principal branch
        return a ** (-d / 2.0) * np.exp(-np.pi * np.sum(p * p, axis=-1) / a)

    return Signal(dim=d, fn=fn, ft_fn=ft_fn,
                  tags={"family": "chirp", "rate": rate, "lambda": lam})


def hermite(k: int) -> Signal:
    """k-th L^2-normalized Hermite function (d = 1), FT eigenfunction."""
    if k < 0 or k > HERMITE_MAX_ORDER:
        raise ConfigError(f"hermite order must be in [0, {HERMITE_MAX_ORDER}]")
    coeff = np.zeros(k + 1)
    coeff[k] = 1.0
    norm = 2.0 ** 0.25 / math.sqrt((2.0 ** k) * math.factorial(k))

    def fn(p):
        t = p[..., 0]
        return norm * hermval(math.sqrt(2.0 * np.pi) * t, coeff) \
            * np.exp(-np.pi * t * t) + 0j

    def ft_fn(p):
        return (-1j) ** k * fn(p)

    return Signal(dim=1, fn=fn, ft_fn=ft_fn, tags={"family": "hermite", "k": k})


def tf_shift(f: Signal, x0, w0) -> Signal:
    """Time-frequency shift t -> exp(2 pi i t.w0) f(t - x0)."""
    x0 = np.atleast_1d(np.asarray(x0, dtype=float))
    w0 = np.atleast_1d(np.asarray(w0, dtype=float))
    if x0.shape != (f.dim,) or w0.shape != (f.dim,):
        raise GridMismatch("shift vectors must have the signal dimension")
    tags = dict(f.tags)
    tags["shift"] = (tuple(x0), tuple(w0))
    if f.fn is not None:
        base, base_ft = f.fn, f.ft_fn

        def fn(p):
            return np.exp(2j * np.pi * (p @ w0)) * base(p - x0)

        ft_fn = None
        if base_ft is not None:
            def ft_fn(p):
                q = p - w0
                return np.exp(-2j * np.pi * (q @ x0)) * base_ft(q)

        return Signal(dim=f.dim, fn=fn, ft_fn=ft_fn, tags=tags)
    # sampled path: translation by integer grid multiples only
    grid = f.grid
    k = grid.index_of(x0)
    out = f.samples
    for ax, off in enumerate(k):
        out = _shift_zero_fill(out, int(off), ax)
    out = out * np.exp(2j * np.pi * (grid.mesh() @ w0))
    return from_samples(out, grid, **tags)


def _shift_zero_fill(values: np.ndarray, offset: int, axis: int) -> np.ndarray:
    """Shift along one axis by an integer offset, filling with zeros."""
    if offset == 0:
        return values.copy()
    out = np.zeros_like(values)
    n = values.shape[axis]
    if abs(offset) >= n:
        return out
    src = [slice(None)] * values.ndim
    dst = [slice(None)] * values.ndim
    if offset > 0:
        src[axis] = slice(0, n - offset)
        dst[axis] = slice(offset, n)
    else:
        src[axis] = slice(-offset, n)
        dst[axis] = slice(0, n + offset)
    out[tuple(dst)] = values[tuple(src)]
    return out


def dilate(f: Signal, lam: float) -> Signal:
    """L^2-normalized dilation t -> |lam|^(d/2) f(lam t)."""
    if f.fn is None:
        raise GridMismatch("dilation requires an analytic signal")
    if lam == 0:
        raise NonPositiveParameter("dilation factor must be nonzero")
    base = f.fn
    c = abs(lam) ** (f.dim / 2.0)

    def fn(p):
        return c * base(lam * p)

    return Signal(dim=f.dim, fn=fn, tags={**f.tags, "dilate": lam})


def lincomb(coeffs: Sequence[complex], sigs: Sequence[Signal]) -> Signal:
    """Linear combination of analytic signals."""
    if not sigs or any(s.fn is None for s in sigs):
        raise GridMismatch("linear combination requires analytic signals")
    d = sigs[0].dim
    if any(s.dim != d for s in sigs):
        raise GridMismatch("mixed signal dimensions")
    cs = [complex(c) for c in coeffs]

    def fn(p):
        return sum(c * s.fn(p) for c, s in zip(cs, sigs))

    ft_fn = None
    if all(s.ft_fn is not None for s in sigs):
        def ft_fn(p):
            return sum(c * s.ft_fn(p) for c, s in zip(cs, sigs))

    return Signal(dim=d, fn=fn, ft_fn=ft_fn, tags={"family": "sum"})


def conjugate(f: Signal) -> Signal:
    if f.fn is not None:
        base = f.fn
        return Signal(dim=f.dim, fn=lambda p: np.conj(base(p)),
                      tags={**f.tags, "conj": True})
    return replace(f, samples=np.conj(f.samples))


def analytic_ft(f: Signal) -> Signal:
    """Closed-form Fourier transform as an analytic signal (when known)."""
    if f.ft_fn is None:
        raise GridMismatch("signal has no analytic Fourier transform")
    base = f.fn

    def ft_of_ft(p):
        # F^2 is the reflection, so the transform of f-hat is f(-t)
        return base(-p)

    return Signal(dim=f.dim, fn=f.ft_fn, ft_fn=ft_of_ft,
                  tags={**f.tags, "fourier": True})


def inner(f: Signal, g: Signal, grid: Grid) -> complex:
    """Riemann-sum inner product sum f conj(g) * step^d."""
    fv = sample(f, grid)
    gv = sample(g, grid)
    return complex(np.sum(fv * np.conj(gv)) * grid.step ** grid.dim)


def norm_l2(f: Signal, grid: Grid) -> float:
    return float(math.sqrt(max(inner(f, f, grid).real, 0.0)))


def lp_norm(values: np.ndarray, p: float, weight: float) -> float:
    """Discrete L^p norm of an array with uniform quadrature weight."""
    if p < 1:
        raise InvalidExponent(f"exponent {p} < 1")
    a = np.abs(np.asarray(values))
    if math.isinf(p):
        return float(a.max()) if a.size else 0.0
    return float((np.sum(a ** p) * weight) ** (1.0 / p))


def mixed_norm(fld, p: float, q: float) -> float:
    """Discrete L^{p,q} norm of a phase-space field.

    Inner p-norm over the x axes with weight step^d, outer q-norm over the
    frequency axes with weight freq_step^d; infinities become maxima.
    """
    if p < 1 or q < 1:
        raise InvalidExponent(f"exponents must lie in [1, inf], got ({p}, {q})")
    a = np.abs(np.asarray(fld.values))
    d = fld.xgrid.dim
    xaxes = tuple(range(d))
    wx = fld.xgrid.step ** d
    ww = fld.wgrid.step ** d
    if math.isinf(p):
        innerv = a.max(axis=xaxes)
    else:
        innerv = (np.sum(a ** p, axis=xaxes) * wx) ** (1.0 / p)
    if math.isinf(q):
        return float(innerv.max())
    return float((np.sum(innerv ** q) * ww) ** (1.0 / q))


def from_config(obj, d: int = 1) -> Signal:
    """Build a Signal from the shared JSON config format."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ConfigError("signal config must be an object with a 'kind'")
    kind = obj["kind"]
    if kind == "gaussian":
        return gaussian(float(obj.get("lambda", 1.0)), d)
    if kind == "hermite":
        if d != 1:
            raise ConfigError("hermite signals are one-dimensional")
        return hermite(int(obj.get("k", 0)))
    if kind == "chirp":
        return chirp(float(obj.get("rate", 1.0)), float(obj.get("lambda", 1.0)), d)
    if kind == "shifted":
        base = from_config(obj.get("base", {"kind": "gaussian"}), d)
        return tf_shift(base, obj.get("x0", [0.0] * d), obj.get("w0", [0.0] * d))
    if kind == "sum":
        terms = obj.get("terms", [])
        if not terms:
            raise ConfigError("signal sum needs at least one term")
        sigs = [from_config(t, d) for t in terms]
        coeffs = [complex(t.get("coeff", 1.0)) for t in terms]
        return lincomb(coeffs, sigs)
    raise ConfigError(f"unknown signal kind {kind!r}")
