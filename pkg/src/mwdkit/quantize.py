"""Operators from phase-space symbols: kernels, application, duality,
symbol conversion between calculi, adjoints, spreading and channel maps.

An operator is materialized as a dense matrix of integral-kernel samples
with the quadrature weight applied on multiplication, which keeps
singular-value diagnostics available at desk scale.

Kernel construction inverts sigma = |det A| F2 T_A k.  For analytic
symbols the chain T_{A^-1} F2^-1 is evaluated by direct quadrature at
the mapped points, so no interpolation error enters; sampled symbols go
through the partial inverse transform on the grid followed by a
resampled coordinate change.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from . import fourier
from .blockmat import BlockMatrix, classify, derived, preset
from .cohen import gaussian_closed_form
from .errors import (GridMismatch, NotCohenType, OffGridShift)
from .fourier import Field2, cft, icft, resample
from .mwd import CHUNK, PhaseSpaceField, mwd, point_evaluator
from .signals import Grid, Signal, from_samples, sample, tf_shift


@dataclass(frozen=True)
class SymbolField:
    """Phase-space symbol: samples on (xgrid, wgrid), optionally analytic.

    fn, when present, evaluates the symbol at arbitrary (x, w) point
    arrays of shape (..., d) each and is preferred by every operation
    that would otherwise interpolate.  parts, when present, declares the
    factorization sigma(x, w) = xpart(x) wpart(w) exp(2 pi i rate x.w),
    which the kernel quadrature exploits to reduce to matrix products.
    """

    xgrid: Grid
    wgrid: Grid
    values: Optional[np.ndarray] = None
    fn: Optional[Callable] = None
    parts: Optional[tuple] = None  # (xpart, wpart, rate)
    tags: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.xgrid.dim

    def sampled(self) -> np.ndarray:
        if self.values is not None:
            return self.values
        d = self.dim
        x = self.xgrid.mesh().reshape(self.xgrid.shape + (1,) * d + (d,))
        w = self.wgrid.mesh().reshape((1,) * d + self.wgrid.shape + (d,))
        xs = np.broadcast_to(x, self.xgrid.shape + self.wgrid.shape + (d,))
        ws = np.broadcast_to(w, self.xgrid.shape + self.wgrid.shape + (d,))
        return np.asarray(self.fn(xs, ws), dtype=complex)


def symbol_from_callable(fn: Callable, grid: Grid,
                         wgrid: Optional[Grid] = None, **tags) -> SymbolField:
    if wgrid is None:
        wgrid = grid.dual()
    return SymbolField(xgrid=grid, wgrid=wgrid, fn=fn, tags=dict(tags))


def symbol_from_parts(xpart: Callable, wpart: Callable, rate: float,
                      grid: Grid, **tags) -> SymbolField:
    """Symbol xpart(x) wpart(w) exp(2 pi i rate x.w) with the structure
    recorded so quadratures can use separable phase tables."""
    def fn(x, w):
        cross = np.exp(2j * np.pi * rate * np.sum(x * w, axis=-1)) \
            if rate else 1.0
        return xpart(x) * wpart(w) * cross

    return SymbolField(xgrid=grid, wgrid=grid.dual(), fn=fn,
                       parts=(xpart, wpart, float(rate)), tags=dict(tags))


def symbol_from_samples(values: np.ndarray, grid: Grid,
                        wgrid: Optional[Grid] = None, **tags) -> SymbolField:
    if wgrid is None:
        wgrid = grid.dual()
    values = np.asarray(values, dtype=complex)
    if values.shape != grid.shape + wgrid.shape:
        raise GridMismatch("symbol samples do not match the grids")
    return SymbolField(xgrid=grid, wgrid=wgrid, values=values, tags=dict(tags))


def symbol_field(sigma: SymbolField) -> PhaseSpaceField:
    """View the symbol as a phase-space field (for inner products)."""
    return PhaseSpaceField(sigma.sampled(), sigma.xgrid, sigma.wgrid)


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense kernel samples; application carries the quadrature weight."""

    values: np.ndarray  # (n^d, n^d)
    grid: Grid

    def weight(self) -> float:
        return self.grid.step ** self.grid.dim


def _coord_partial_inverse(sigma: SymbolField, cmat: np.ndarray,
                           grid: Grid) -> np.ndarray:
    """T_C applied to the partial inverse transform of the symbol.

    Returns G(x_m, y_j) = (F2^-1 sigma)(C11 x_m + C12 y_j, C21 x_m + C22 y_j)
    as an (n^d, n^d) array over the grid.  The frequency quadrature is a
    Fourier sum with period L in its second argument, so entries whose
    effective argument leaves [-L/2, L/2) are aliased and are zeroed
    (zero extension, matching the sampled-path resampler).
    """
    d = grid.dim
    c11, c12 = cmat[:d, :d], cmat[:d, d:]
    c21, c22 = cmat[d:, :d], cmat[d:, d:]
    x = grid.mesh().reshape(-1, d)
    w = grid.dual().mesh().reshape(-1, d)
    dw = grid.freq_step ** d
    half = grid.length / 2.0
    n_pts = grid.size

    if sigma.parts is not None:
        xpart, wpart, rate = sigma.parts
        # sigma(p, w) exp(2 pi i q.w) = xpart(p) [wpart(w)
        #   exp(2 pi i (q + rate p).w)]: fold the cross chirp into the
        #   phase tables, which stay separable in (m, j)
        d1 = c21 + rate * c11
        d2 = c22 + rate * c12
        e1 = np.exp(2j * np.pi * ((x @ d1.T) @ w.T))      # (M, K)
        e2 = np.exp(2j * np.pi * ((x @ d2.T) @ w.T))      # (N, K)
        bw = np.asarray(wpart(w), dtype=complex) * dw     # (K,)
        out = (e1 * bw[None, :]) @ e2.T                   # (M, N)
        p = x[:, None, :] @ c11.T + x[None, :, :] @ c12.T
        out *= np.asarray(xpart(p), dtype=complex)
        qeff = x[:, None, :] @ d1.T + x[None, :, :] @ d2.T
        out[np.max(np.abs(qeff), axis=-1) >= half] = 0.0
        return out

    if sigma.fn is not None:
        out = np.empty((n_pts, n_pts), dtype=complex)
        for lo in range(0, n_pts, CHUNK):
            xm = x[lo:lo + CHUNK]
            p = xm[:, None, :] @ c11.T + x[None, :, :] @ c12.T   # (C, N, d)
            q = xm[:, None, :] @ c21.T + x[None, :, :] @ c22.T
            phase = np.exp(2j * np.pi * np.einsum("cnd,kd->cnk", q, w))
            sig = sigma.fn(p[:, :, None, :], w[None, None, :, :])
            blk = np.sum(sig * phase, axis=-1) * dw
            blk[np.max(np.abs(q), axis=-1) >= half] = 0.0
            out[lo:lo + xm.shape[0]] = blk
        return out

    part = icft(sigma.values, grid.freq_step, axes=tuple(range(d, 2 * d)))
    pts = np.concatenate(
        (x[:, None, :] @ c11.T + x[None, :, :] @ c12.T,
         x[:, None, :] @ c21.T + x[None, :, :] @ c22.T), axis=-1)
    origins = [grid.axis()[0]] * (2 * d)
    steps = [grid.step] * (2 * d)
    return resample(part, origins, steps, pts, warn=False)


def kernel_from_symbol(sigma: SymbolField, A: BlockMatrix) -> OperatorMatrix:
    """Integral kernel of the operator with the given symbol and calculus."""
    grid = sigma.xgrid
    if sigma.wgrid != grid.dual():
        raise GridMismatch("symbol frequency grid must be the dual grid")
    if A.dim != grid.dim:
        raise GridMismatch("matrix dimension does not match the symbol")
    kern = _coord_partial_inverse(sigma, A.inv(), grid) / abs(A.det)
    return OperatorMatrix(values=kern, grid=grid)


def apply(op: OperatorMatrix, f: Signal) -> Signal:
    """Quadrature application of the kernel to a signal."""
    fv = sample(f, op.grid).reshape(-1)
    out = (op.values @ fv) * op.weight()
    return from_samples(out.reshape(op.grid.shape), op.grid)


def duality_check(sigma: SymbolField, A: BlockMatrix, f: Signal, g: Signal,
                  op: Optional[OperatorMatrix] = None) -> dict:
    """Two pipelines for the defining pairing of the quantization rule.

    lhs applies the kernel and pairs with g in signal space; rhs pairs
    the symbol with the (g, f) field in phase space.
    """
    grid = sigma.xgrid
    if op is None:
        op = kernel_from_symbol(sigma, A)
    gv = sample(g, grid)
    lhs = np.sum(sample(apply(op, f), grid) * np.conj(gv)) * grid.step ** grid.dim
    bgf = mwd(A, g, f, grid)
    rhs = np.sum(sigma.sampled() * np.conj(bgf.values)) * bgf.quad_weight()
    return {"lhs": complex(lhs), "rhs": complex(rhs)}


def convert_symbol(rho: SymbolField, B: BlockMatrix, A: BlockMatrix) -> SymbolField:
    """Symbol for calculus A of the operator written as rho in calculus B.

    Applies (|det A| / |det B|) F2 T_{B^-1 A} F2^-1 to rho.  Analytic
    input follows the quadrature path; sampled input is resampled.
    """
    grid = rho.xgrid
    d = grid.dim
    c = np.linalg.inv(B.entries) @ A.entries
    factor = abs(A.det) / abs(B.det)
    mid = _coord_partial_inverse(rho, c, grid).reshape(grid.shape + grid.shape)
    vals = cft(mid, grid.step, axes=tuple(range(d, 2 * d))) * factor
    return symbol_from_samples(vals, grid, tags={"calculus": "converted"})


def convert_symbol_cohen(sigma1: SymbolField, T1, T2) -> SymbolField:
    """Cohen-calculus conversion as the Fourier multiplier
    exp(-2 pi i xi . (T2 - T1) eta) acting on the symbol transform."""
    d = sigma1.dim
    t1 = _affine_t(T1, d)
    t2 = _affine_t(T2, d)
    dt = t2 - t1

    def mult(xi, eta):
        return np.exp(-2j * np.pi * np.sum((xi @ dt.T) * eta, axis=-1))

    fld = Field2(sigma1.sampled(), (sigma1.xgrid, sigma1.wgrid))
    out = fourier.multiplier(fld, mult)
    return symbol_from_samples(out.values, sigma1.xgrid,
                               tags={"calculus": "cohen", "T": t2})


def adjoint_symbol(sigma: SymbolField, A: BlockMatrix) -> Tuple[SymbolField, BlockMatrix]:
    """Symbol and matrix of the adjoint operator: conj(sigma) in the
    calculus of flip . A . reflect2."""
    b = derived(A, "C1")
    if sigma.parts is not None:
        xp, wp, rate = sigma.parts
        rho = symbol_from_parts(lambda x: np.conj(xp(x)),
                                lambda w: np.conj(wp(w)), -rate,
                                sigma.xgrid, **{**sigma.tags, "adjoint": True})
        return rho, b
    fn = None
    if sigma.fn is not None:
        base = sigma.fn

        def fn(x, w):
            return np.conj(base(x, w))

    values = None if sigma.values is None else np.conj(sigma.values)
    rho = SymbolField(xgrid=sigma.xgrid, wgrid=sigma.wgrid, values=values,
                      fn=fn, tags={**sigma.tags, "adjoint": True})
    return rho, b


def _affine_t(T, d: int) -> np.ndarray:
    t = np.asarray(T, dtype=float)
    if t.ndim == 0:
        t = float(t) * np.eye(d)
    if t.shape != (d, d):
        raise GridMismatch("affine parameter has the wrong shape")
    return t


def _cohen_t_of(calculus, d: int) -> np.ndarray:
    """Affine parameter from either a d x d array or a Cohen BlockMatrix."""
    if isinstance(calculus, BlockMatrix):
        cls = classify(calculus)
        if not cls.cohen_type:
            raise NotCohenType("operation is defined for Cohen-type matrices")
        return cls.cohen_T
    return _affine_t(calculus, d)


def spreading_apply(sigma: SymbolField, T, f: Signal) -> Signal:
    """Apply the operator through its spreading decomposition.

    out(x) = sum over (xi, u) of sigma_hat(xi, u) exp(-2 pi i (I-T) u . xi)
    exp(2 pi i (x+u) . xi) f(x+u), with sigma_hat the full centered
    transform of the symbol.  Cost n^{3d}: desk-scale grids only.
    """
    grid = sigma.xgrid
    d = grid.dim
    t = _cohen_t_of(T, d)
    if sigma.wgrid != grid.dual():
        raise GridMismatch("symbol frequency grid must be the dual grid")
    vals = sigma.sampled()
    hat = cft(vals, grid.step, axes=tuple(range(d)))
    hat = cft(hat, grid.freq_step, axes=tuple(range(d, 2 * d)))
    xi = grid.dual().mesh().reshape(-1, d)      # dual of x axes
    u = grid.mesh().reshape(-1, d)              # dual of w axes
    hat = hat.reshape(xi.shape[0], u.shape[0])
    x = grid.mesh().reshape(-1, d)
    fev = point_evaluator(f)
    weight = grid.freq_step ** d * grid.step ** d
    imt = np.eye(d) - t
    pre = hat * np.exp(-2j * np.pi * np.einsum("ud,kd->ku", u @ imt.T, xi))
    out = np.empty(x.shape[0], dtype=complex)
    for lo in range(0, x.shape[0], CHUNK):
        xm = x[lo:lo + CHUNK]                      # (C, d)
        pts = xm[:, None, :] + u[None, :, :]       # (C, U, d)
        fu = fev(pts)                              # (C, U)
        phase = np.exp(2j * np.pi * np.einsum("cud,kd->cku", pts, xi))
        out[lo:lo + xm.shape[0]] = np.einsum("ku,cku->c", pre, phase * fu[:, None, :])
    return from_samples((out * weight).reshape(grid.shape), grid)


def _compose_j_inverse(sigma: SymbolField) -> SymbolField:
    """Symbol composed with the inverse rotation: (x, w) -> sigma(-w, x).

    Exact for analytic symbols; sampled symbols are remapped by axis
    permutation and reversal, which maps the symmetric grid to itself up
    to the wrapped leftmost row (zeroed).
    """
    if sigma.parts is not None:
        xp, wp, rate = sigma.parts
        return symbol_from_parts(wp, lambda w: xp(-w), -rate,
                                 sigma.xgrid, **sigma.tags)
    if sigma.fn is not None:
        base = sigma.fn

        def fn(x, w):
            return base(-w, x)

        return SymbolField(xgrid=sigma.xgrid, wgrid=sigma.wgrid, fn=fn,
                           tags=dict(sigma.tags))
    d = sigma.dim
    # new[j, k] = old[neg(k), j]: negate the first-variable axes, then
    # swap the axis groups.  neg maps index a to (n - a) mod n; the
    # wrapped a = 0 row has no preimage on the grid and is zeroed.
    v = sigma.sampled()
    for ax in range(d):
        v = np.roll(np.flip(v, axis=ax), 1, axis=ax)
        idx = [slice(None)] * v.ndim
        idx[ax] = 0
        v[tuple(idx)] = 0.0
    v = np.transpose(v, tuple(range(d, 2 * d)) + tuple(range(d)))
    return symbol_from_samples(v, sigma.xgrid, tags=dict(sigma.tags))


def fourier_conjugation_check(sigma: SymbolField, T, f: Signal) -> dict:
    """Both sides of the conjugation rule: transforming, applying the
    T-calculus operator and transforming back equals the (I-T)-calculus
    operator with the rotated symbol.

    Requires a self-dual grid (step == freq step) so signal samples keep
    their meaning across the transform.
    """
    grid = sigma.xgrid
    d = grid.dim
    if abs(grid.step - grid.freq_step) > 1e-12:
        raise GridMismatch("conjugation check needs a self-dual grid (L^2 = n)")
    t = _cohen_t_of(T, d)
    imt = np.eye(d) - t
    fv = sample(f, grid)
    op_t = kernel_from_symbol(sigma, preset("affine", d, T=t))
    u = icft(fv, grid.step, axes=tuple(range(d)))
    mid = (op_t.values @ u.reshape(-1)) * op_t.weight()
    lhs = cft(mid.reshape(grid.shape), grid.step, axes=tuple(range(d)))
    sig_j = _compose_j_inverse(sigma)
    op_it = kernel_from_symbol(sig_j, preset("affine", d, T=imt))
    rhs = (op_it.values @ fv.reshape(-1)) * op_it.weight()
    return {"lhs": from_samples(lhs, grid),
            "rhs": from_samples(rhs.reshape(grid.shape), grid)}


def channel_matrix(sigma: SymbolField, T, phi: Signal,
                   lattice: Sequence, grid: Optional[Grid] = None,
                   op: Optional[OperatorMatrix] = None) -> np.ndarray:
    """Matrix of pairings of the operator against time-frequency shifts
    of the window, over a finite list of phase-space points."""
    if grid is None:
        grid = sigma.xgrid
    d = grid.dim
    t = _cohen_t_of(T, d)
    pts = [np.asarray(z, dtype=float) for z in lattice]
    for z in pts:
        grid.index_of(z[:d])
        grid.dual().index_of(z[d:])
    if op is None:
        op = kernel_from_symbol(sigma, preset("affine", d, T=t))
    shifted = [sample(tf_shift(phi, z[:d], z[d:]), grid).reshape(-1) for z in pts]
    weight = op.weight()
    cols = [(op.values @ s) * weight for s in shifted]
    out = np.empty((len(pts), len(pts)), dtype=complex)
    for i, zcol in enumerate(cols):
        for j, wrow in enumerate(shifted):
            out[j, i] = np.sum(zcol * np.conj(wrow)) * weight
    return out


def window_field_stft(sigma: SymbolField, window_eval: Callable, p, q) -> complex:
    """STFT of the symbol with an analytically evaluated field window at
    a single phase-space point (p, q), p = (p1, p2), q = (q1, q2)."""
    grid, wgrid = sigma.xgrid, sigma.wgrid
    d = grid.dim
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    x = grid.mesh().reshape(grid.shape + (1,) * d + (d,))
    w = wgrid.mesh().reshape((1,) * d + wgrid.shape + (d,))
    xs = np.broadcast_to(x, grid.shape + wgrid.shape + (d,))
    ws = np.broadcast_to(w, grid.shape + wgrid.shape + (d,))
    win = np.conj(window_eval(xs - p[:d], ws - p[d:]))
    phase = np.exp(-2j * np.pi * ((x @ q[:d]) + (w @ q[d:])))
    vals = sigma.sampled()
    return complex(np.sum(vals * win * phase)
                   * grid.step ** d * wgrid.step ** d)


def channel_identity_rhs(sigma: SymbolField, T, lam: float, z, w,
                         via_concentration: bool = False) -> complex:
    """Channel entry predicted by the symbol STFT at (z, w), with the
    Gaussian closed form as the window field.

    The window argument is the affine combination of w and z attached to
    T; the frequency argument is the rotation of w - z.  With
    via_concentration the window argument is computed instead as
    (I + P_T)(w - U_T z), which requires T and I - T invertible.
    """
    from .blockmat import cohen_maps

    d = sigma.dim
    t = _cohen_t_of(T, d)
    m = t - 0.5 * np.eye(d)
    win = gaussian_closed_form(m, lam, d)
    z = np.asarray(z, dtype=float)
    w = np.asarray(w, dtype=float)
    if via_concentration:
        maps = cohen_maps(t, d, require_u=True)
        tt = maps.I_plus_P @ (w - maps.U @ z)
    else:
        tt = np.concatenate(((np.eye(d) - t) @ w[:d] + t @ z[:d],
                             t @ w[d:] + (np.eye(d) - t) @ z[d:]))
    jd = np.concatenate((w[d:] - z[d:], -(w[:d] - z[:d])))
    return window_field_stft(sigma, win, tt, jd)


def hs_norm(op: OperatorMatrix) -> float:
    """Hilbert-Schmidt norm in the continuous normalization."""
    return float(np.linalg.norm(op.values) * op.weight())


def operator_norm(op: OperatorMatrix) -> float:
    """L^2 -> L^2 operator norm (largest singular value with weight)."""
    s = np.linalg.svd(op.values * op.weight(), compute_uv=False)
    return float(s[0])
