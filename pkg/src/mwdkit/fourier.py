"""Centered Fourier transforms, coordinate transforms and multipliers.

The continuous Fourier transform with kernel exp(-2 pi i x.w) is
approximated on symmetric grids by a plain DFT bracketed with index
reorderings (ifftshift before, fftshift after) and scaled by the grid
step.  Because zero is a grid point and the frequency grid is the exact
DFT dual grid, this discretization is phase-exact: no phase ramps are
ever applied, and forward/inverse compose to the identity bitwise up to
rounding.  Accuracy for decaying smooth signals is then limited only by
box truncation and aliasing, both spectrally small at desk scale.

Sampled fields are resampled at transformed coordinates by separable
cubic convolution (Catmull-Rom) with zero extension outside the box.
Raw cubic convolution at desk-scale steps is only ~1e-4 accurate, so the
resampler first refines the field on a trigonometrically interpolated
(zero-padded FFT) grid; the combination reaches ~1e-6..1e-7 on smooth
decaying data while keeping the local kernel.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from .blockmat import BlockMatrix
from .errors import DomainTagMismatch, ExtrapolationWarning, GridMismatch
from .signals import Grid, Signal, from_samples, sample

# Trig-refinement factor ahead of cubic convolution: 8 suffices for smooth
# Gaussian data (~5e-7); 16 keeps mildly chirped intermediates under 1e-6.
DEFAULT_UPSAMPLE = 16


# ----------------------------------------------------------------------
# centered DFT cores

def cft(values: np.ndarray, step: float, axes) -> np.ndarray:
    """Centered forward transform along the given axes, scaled by step^k."""
    axes = tuple(np.atleast_1d(axes))
    v = np.fft.ifftshift(values, axes=axes)
    v = np.fft.fftn(v, axes=axes)
    v = np.fft.fftshift(v, axes=axes)
    return v * step ** len(axes)


def icft(values: np.ndarray, freq_step: float, axes) -> np.ndarray:
    """Centered inverse transform; freq_step is the input-axis step."""
    axes = tuple(np.atleast_1d(axes))
    v = np.fft.ifftshift(values, axes=axes)
    v = np.fft.ifftn(v, axes=axes)
    v = np.fft.fftshift(v, axes=axes)
    scale = 1.0
    for ax in axes:
        scale *= values.shape[ax] * freq_step
    return v * scale


def ft(f: Signal, grid: Grid) -> Signal:
    """Numerical Fourier transform, sampled on the dual grid."""
    v = sample(f, grid)
    out = cft(v, grid.step, axes=range(grid.dim))
    return from_samples(out, grid.dual(), **{**f.tags, "domain": "frequency"})


def ift(f: Signal, grid: Grid) -> Signal:
    """Numerical inverse Fourier transform of samples on `grid`."""
    v = sample(f, grid)
    out = icft(v, grid.step, axes=range(grid.dim))
    return from_samples(out, grid.dual(), **{**f.tags, "domain": "time"})


# ----------------------------------------------------------------------
# two-variable fields

@dataclass(frozen=True)
class Field2:
    """Dense complex array over a product grid of two d-dim variables.

    Axes [0, d) carry the first variable, axes [d, 2d) the second.
    domain_tags records whether each variable currently lives in its
    time or frequency representation.
    """

    values: np.ndarray
    grids: Tuple[Grid, Grid]
    domain_tags: Tuple[str, str] = ("time", "time")

    def __post_init__(self):
        expect = self.grids[0].shape + self.grids[1].shape
        if self.values.shape != expect:
            raise GridMismatch(f"field shape {self.values.shape} != {expect}")

    @property
    def dim(self) -> int:
        return self.grids[0].dim


def tensor_field(f: Signal, g: Signal, grid1: Grid, grid2: Grid) -> Field2:
    """f (x) conj-free tensor product f(x) g(y) as a Field2."""
    fv = sample(f, grid1)
    gv = sample(g, grid2)
    d = grid1.dim
    vals = fv.reshape(fv.shape + (1,) * d) * gv.reshape((1,) * d + gv.shape)
    return Field2(vals, (grid1, grid2))


def _group_axes(F: Field2, which: int) -> range:
    d = F.dim
    return range(0, d) if which == 1 else range(d, 2 * d)


def _pft(F: Field2, which: int, inverse: bool) -> Field2:
    tag = F.domain_tags[which - 1]
    if not inverse and tag != "time":
        raise DomainTagMismatch(f"variable {which} already in frequency domain")
    if inverse and tag != "frequency":
        raise DomainTagMismatch(f"variable {which} already in time domain")
    g = F.grids[which - 1]
    axes = _group_axes(F, which)
    vals = icft(F.values, g.step, axes) if inverse else cft(F.values, g.step, axes)
    grids = list(F.grids)
    grids[which - 1] = g.dual()
    tags = list(F.domain_tags)
    tags[which - 1] = "time" if inverse else "frequency"
    return Field2(vals, tuple(grids), tuple(tags))


def pft1(F: Field2, inverse: bool = False) -> Field2:
    """Partial Fourier transform in the first variable."""
    return _pft(F, 1, inverse)


def pft2(F: Field2, inverse: bool = False) -> Field2:
    """Partial Fourier transform in the second variable."""
    return _pft(F, 2, inverse)


def ft2(F: Field2, inverse: bool = False) -> Field2:
    """Full transform in both variables."""
    if inverse:
        return pft1(pft2(F, inverse=True), inverse=True)
    return pft1(pft2(F))


# ----------------------------------------------------------------------
# resampling (trig refinement + separable Catmull-Rom, zero extension)

def _cr_weights(t: np.ndarray) -> list:
    t2 = t * t
    t3 = t2 * t
    return [0.5 * (-t3 + 2 * t2 - t),
            0.5 * (3 * t3 - 5 * t2 + 2),
            0.5 * (-3 * t3 + 4 * t2 + t),
            0.5 * (t3 - t2)]


def catmull_rom(values: np.ndarray, origins: Sequence[float],
                steps: Sequence[float], points: np.ndarray) -> np.ndarray:
    """Separable cubic-convolution interpolation at arbitrary points.

    values has one axis per coordinate; points has shape (..., k) with
    k = values.ndim.  Out-of-box neighbors contribute zero.
    """
    k = values.ndim
    pts = np.asarray(points, dtype=float)
    if pts.shape[-1] != k:
        raise GridMismatch(f"points have {pts.shape[-1]} coords, field has {k}")
    base = []
    weights = []
    for ax in range(k):
        u = (pts[..., ax] - origins[ax]) / steps[ax]
        i0 = np.floor(u).astype(np.int64)
        weights.append(_cr_weights(u - i0))
        base.append(i0)
    out = np.zeros(pts.shape[:-1], dtype=complex)
    flat = values.ravel()
    strides = np.array([int(np.prod(values.shape[ax + 1:], dtype=np.int64))
                        for ax in range(k)], dtype=np.int64)
    for offsets in np.ndindex(*([4] * k)):
        w = None
        idx = None
        valid = None
        for ax, off in enumerate(offsets):
            i = base[ax] + (off - 1)
            ok = (i >= 0) & (i < values.shape[ax])
            i = np.clip(i, 0, values.shape[ax] - 1)
            term = i * strides[ax]
            idx = term if idx is None else idx + term
            valid = ok if valid is None else (valid & ok)
            wa = weights[ax][off]
            w = wa if w is None else w * wa
        out += np.where(valid, flat[idx], 0.0) * w
    return out


def trig_refine(values: np.ndarray, factor: int, axes=None) -> np.ndarray:
    """Upsample by zero-padding the centered spectrum along the axes.

    Returns samples of the trigonometric interpolant on the grid with the
    same origin and step/factor; spectrally exact for decaying data.
    """
    if factor == 1:
        return values
    if axes is None:
        axes = range(values.ndim)
    axes = tuple(axes)
    v = np.fft.fftshift(np.fft.fftn(np.fft.ifftshift(values, axes=axes),
                                    axes=axes), axes=axes)
    pad = []
    for ax in range(values.ndim):
        if ax in axes:
            n = values.shape[ax]
            before = (n * factor - n) // 2
            pad.append((before, n * factor - n - before))
        else:
            pad.append((0, 0))
    v = np.pad(v, pad)
    v = np.fft.fftshift(np.fft.ifftn(np.fft.ifftshift(v, axes=axes),
                                     axes=axes), axes=axes)
    return v * float(factor) ** len(axes)


def resample(values: np.ndarray, origins: Sequence[float],
             steps: Sequence[float], points: np.ndarray,
             upsample: int = DEFAULT_UPSAMPLE, warn: bool = True) -> np.ndarray:
    """Evaluate a sampled field at arbitrary points (zero outside the box).

    For fields with at most two axes the data is first refined on a
    trigonometrically interpolated grid (factor `upsample`); larger
    fields fall back to plain cubic convolution to bound memory.
    """
    pts = np.asarray(points, dtype=float)
    if warn:
        for ax in range(values.ndim):
            lo = origins[ax]
            hi = origins[ax] + steps[ax] * (values.shape[ax] - 1)
            c = pts[..., ax]
            if np.any(c < lo) or np.any(c > hi):
                warnings.warn("resampling outside the sampled box; zero extension",
                              ExtrapolationWarning, stacklevel=2)
                break
    if values.ndim > 2:
        upsample = 1
    if upsample > 1:
        values = trig_refine(values, upsample)
        steps = [s / upsample for s in steps]
    return catmull_rom(values, origins, steps, pts)


def field_origins_steps(F: Field2) -> Tuple[list, list]:
    g1, g2 = F.grids
    origins = [g1.axis()[0]] * g1.dim + [g2.axis()[0]] * g2.dim
    steps = [g1.step] * g1.dim + [g2.step] * g2.dim
    return origins, steps


def coord(A: BlockMatrix, F, out_grids: Optional[Tuple[Grid, Grid]] = None,
          upsample: int = DEFAULT_UPSAMPLE) -> Field2:
    """Coordinate transform G(x, y) = F(A11 x + A12 y, A21 x + A22 y).

    F is either a Field2 (resampled, zero extension outside the box) or a
    pair (f, g) of analytic signals, in which case the tensor product
    f(.) conj(g(.)) is evaluated exactly at the transformed points.
    """
    if isinstance(F, tuple):
        f, g = F
        if f.fn is None or g.fn is None:
            raise GridMismatch("analytic coordinate path needs analytic signals")
        if out_grids is None:
            raise GridMismatch("analytic coordinate path needs output grids")
        g1, g2 = out_grids
        vals = _coord_analytic(A, f, g, g1, g2)
        return Field2(vals, (g1, g2))
    if out_grids is None:
        out_grids = F.grids
    g1, g2 = out_grids
    d = g1.dim
    x = g1.mesh()
    y = g2.mesh()
    xs = x.reshape(g1.shape + (1,) * d + (d,))
    ys = y.reshape((1,) * d + g2.shape + (d,))
    p = np.concatenate(
        (np.broadcast_to(xs @ A.a11.T + ys @ A.a12.T, g1.shape + g2.shape + (d,)),
         np.broadcast_to(xs @ A.a21.T + ys @ A.a22.T, g1.shape + g2.shape + (d,))),
        axis=-1)
    origins, steps = field_origins_steps(F)
    vals = resample(F.values, origins, steps, p, upsample=upsample)
    return Field2(vals, (g1, g2), F.domain_tags)


def _coord_analytic(A: BlockMatrix, f: Signal, g: Signal,
                    g1: Grid, g2: Grid) -> np.ndarray:
    d = g1.dim
    x = g1.mesh().reshape(g1.shape + (1,) * d + (d,))
    y = g2.mesh().reshape((1,) * d + g2.shape + (d,))
    return np.asarray(f.fn(x @ A.a11.T + y @ A.a12.T), dtype=complex) \
        * np.conj(g.fn(x @ A.a21.T + y @ A.a22.T))


def multiplier(F: Field2, m: Callable) -> Field2:
    """Fourier multiplier: transform, multiply by m on the dual grid, invert.

    m receives the dual meshes of the two variables, shapes
    (n,)*d + (d,) each, broadcast against each other.
    """
    hat = ft2(F)
    d = F.dim
    xi = hat.grids[0].mesh().reshape(hat.grids[0].shape + (1,) * d + (d,))
    eta = hat.grids[1].mesh().reshape((1,) * d + hat.grids[1].shape + (d,))
    vals = hat.values * m(xi, eta)
    return ft2(Field2(vals, hat.grids, hat.domain_tags), inverse=True)
