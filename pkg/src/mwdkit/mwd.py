"""Matrix-Wigner distribution engine.

Computes the quadratic time-frequency field obtained by transforming the
coordinates of f (x) conj(g) with an invertible 2d x 2d matrix and taking
a partial Fourier transform in the second variable.  Includes the direct
STFT, the right-regular STFT factorization, the adjoint/inversion map,
phase-space covariance, the window-field STFT ("magic") identity, and
marginal densities.

Row layout: for each first-variable point x the engine builds the section
h_x(y) = f(A11 x + A12 y) conj(g(A21 x + A22 y)) on the quadrature grid
and applies the centered DFT in y.  Rows are independent, so the loop is
chunked for memory, not correctness.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from . import fourier
from .blockmat import BlockMatrix, classify, derived, is_invertible, sharp
from .errors import (GridMismatch, NotRightRegular, OffGridShift,
                     OrthogonalWindowPair)
from .fourier import cft, resample
from .signals import Grid, Signal, from_samples, inner, sample, tf_shift

# Rows processed per chunk in the engines below; bounds peak memory at
# roughly CHUNK * n^d complex values per intermediate.
CHUNK = 64


@dataclass(frozen=True)
class PhaseSpaceField:
    """Dense complex array over an x-grid times frequency-grid product."""

    values: np.ndarray
    xgrid: Grid
    wgrid: Grid
    matrix: Optional[BlockMatrix] = None
    tags: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.values.shape != self.xgrid.shape + self.wgrid.shape:
            raise GridMismatch("field shape does not match its grids")

    @property
    def dim(self) -> int:
        return self.xgrid.dim

    def quad_weight(self) -> float:
        return self.xgrid.step ** self.dim * self.wgrid.step ** self.dim


def point_evaluator(f: Signal, upsample: int = fourier.DEFAULT_UPSAMPLE) -> Callable:
    """Evaluator at arbitrary (..., d) points; exact for analytic signals.

    Sampled signals are trig-refined once and interpolated (zero outside
    the box); the refined array is cached in the closure.
    """
    if f.fn is not None:
        return lambda pts: np.asarray(f.fn(pts), dtype=complex)
    grid = f.grid
    factor = upsample if f.samples.ndim <= 2 else 1
    fine = fourier.trig_refine(f.samples, factor)
    origins = [grid.axis()[0]] * grid.dim
    steps = [grid.step / factor] * grid.dim

    def ev(pts):
        return fourier.catmull_rom(fine, origins, steps, pts)

    return ev


def _rows_transform(A: BlockMatrix, fev: Callable, gev: Callable,
                    rows: np.ndarray, ygrid: Grid,
                    modulation: Optional[np.ndarray] = None) -> np.ndarray:
    """Transform sections h_r(y) for arbitrary row points (R, d).

    Returns shape (R,) + ygrid dual shape.  `modulation`, if given, is a
    per-row frequency offset: each section is multiplied by
    exp(2 pi i y . modulation[r]) before the transform, which shifts the
    output frequency grid by -modulation exactly.
    """
    d = ygrid.dim
    y = ygrid.mesh().reshape((1,) + ygrid.shape + (d,))
    out = np.empty((rows.shape[0],) + ygrid.shape, dtype=complex)
    yaxes = tuple(range(1, 1 + d))
    for lo in range(0, rows.shape[0], CHUNK):
        r = rows[lo:lo + CHUNK].reshape((-1,) + (1,) * d + (d,))
        h = fev(r @ A.a11.T + y @ A.a12.T) * np.conj(gev(r @ A.a21.T + y @ A.a22.T))
        if modulation is not None:
            mod = modulation[lo:lo + CHUNK].reshape((-1,) + (1,) * d + (d,))
            h = h * np.exp(2j * np.pi * np.sum(y * mod, axis=-1))
        out[lo:lo + h.shape[0]] = cft(h, ygrid.step, axes=yaxes)
    return out


def mwd(A: BlockMatrix, f: Signal, g: Optional[Signal] = None,
        grid: Optional[Grid] = None) -> PhaseSpaceField:
    """Matrix-Wigner field of (f, g) on the standard phase-space grid."""
    if g is None:
        g = f
    if grid is None:
        from .signals import default_grid
        grid = default_grid(f.dim)
    if f.dim != A.dim or g.dim != A.dim or grid.dim != A.dim:
        raise GridMismatch("signal/grid dimension does not match the matrix")
    rows = grid.mesh().reshape(-1, grid.dim)
    vals = _rows_transform(A, point_evaluator(f), point_evaluator(g), rows, grid)
    vals = vals.reshape(grid.shape + grid.shape)
    tags = {"pair": (f.tags.get("family"), g.tags.get("family"))}
    cls = classify(A)
    if cls.cohen_type:
        tags["cohen_M"] = cls.cohen_M
    return PhaseSpaceField(vals, grid, grid.dual(), matrix=A, tags=tags)


def mwd_at(A: BlockMatrix, f: Signal, g: Signal, rows: np.ndarray,
           ygrid: Grid, freq_offset: Optional[np.ndarray] = None) -> np.ndarray:
    """Field values at arbitrary row points and offset frequency columns.

    Row r, column k holds the field at (rows[r], dual_k + freq_offset[r]);
    the offset is folded into the section as an exact modulation.
    """
    mod = None if freq_offset is None else -np.asarray(freq_offset, dtype=float)
    return _rows_transform(A, point_evaluator(f), point_evaluator(g),
                           rows, ygrid, modulation=mod)


def stft(f: Signal, g: Signal, grid: Grid) -> PhaseSpaceField:
    """Direct short-time Fourier transform V_g f on the standard grid.

    Independent of the mwd engine: samples f once and slides the window.
    """
    if f.dim != g.dim or grid.dim != f.dim:
        raise GridMismatch("dimension mismatch")
    d = grid.dim
    fv = sample(f, grid)
    gev = point_evaluator(g)
    y = grid.mesh().reshape((1,) + grid.shape + (d,))
    rows = grid.mesh().reshape(-1, d)
    out = np.empty((rows.shape[0],) + grid.shape, dtype=complex)
    for lo in range(0, rows.shape[0], CHUNK):
        r = rows[lo:lo + CHUNK].reshape((-1,) + (1,) * d + (d,))
        h = fv[None] * np.conj(gev(y - r))
        out[lo:lo + h.shape[0]] = cft(h, grid.step, axes=tuple(range(1, 1 + d)))
    vals = out.reshape(grid.shape + grid.shape)
    return PhaseSpaceField(vals, grid, grid.dual(),
                           tags={"stft_window": g.tags.get("family")})


def stft_point(f: Signal, g: Signal, x, w, grid: Grid) -> complex:
    """V_g f at a single arbitrary phase-space point, by quadrature."""
    d = grid.dim
    x = np.atleast_1d(np.asarray(x, dtype=float))
    w = np.atleast_1d(np.asarray(w, dtype=float))
    y = grid.mesh()
    fv = sample(f, grid)
    gv = point_evaluator(g)(y - x)
    phase = np.exp(-2j * np.pi * (y @ w))
    return complex(np.sum(fv * np.conj(gv) * phase) * grid.step ** d)


def mwd_via_stft(A: BlockMatrix, f: Signal, g: Signal,
                 grid: Grid) -> PhaseSpaceField:
    """Right-regular factorization through a windowed Fourier transform.

    Valid when the right block column (A12, A22) is invertible; the field
    equals a phase factor times V with the rescaled window, evaluated at
    linearly mapped points.
    """
    if not (is_invertible(A.a12) and is_invertible(A.a22)):
        raise NotRightRegular("factorization needs invertible A12 and A22")
    d = grid.dim
    a12_inv = np.linalg.inv(A.a12)
    cmat = A.a11 - A.a12 @ np.linalg.inv(A.a22) @ A.a21  # Schur complement
    dmat = a12_inv.T
    wmat = A.a22 @ a12_inv
    gev = point_evaluator(g)

    x = grid.mesh().reshape(-1, d)          # (R, d)
    wpts = grid.freq_mesh().reshape(-1, d)  # (K, d)
    cx = x @ cmat.T
    dw = wpts @ dmat.T
    y = grid.mesh().reshape(-1, d)          # quadrature nodes (N, d)
    fv = sample(f, grid).reshape(-1)

    # V[r, k] = sum_y f(y) conj(g(wmat (y - cx_r))) exp(-2 pi i y . dw_k) dy
    out = np.empty((x.shape[0], wpts.shape[0]), dtype=complex)
    phase_yk = np.exp(-2j * np.pi * (y @ dw.T)) * grid.step ** d  # (N, K)
    for lo in range(0, x.shape[0], CHUNK):
        win = np.conj(gev((y[None, :, :] - cx[lo:lo + CHUNK, None, :]) @ wmat.T))
        out[lo:lo + win.shape[0]] = (win * fv[None, :]) @ phase_yk
    pref = np.exp(2j * np.pi * (dw @ (x @ A.a11.T).T)).T  # (R, K)
    out *= pref / abs(np.linalg.det(A.a12))
    vals = out.reshape(grid.shape + grid.shape)
    return PhaseSpaceField(vals, grid, grid.dual(), matrix=A,
                           tags={"path": "stft_factorization"})


def adjoint_apply(A: BlockMatrix, H: PhaseSpaceField, gamma: Signal) -> Signal:
    """Adjoint of f -> mwd(A, f, gamma), applied to the field H.

    Implements |det A|^-1 int F2H(Astar (x, y)) gamma(y) dy.  When the
    (1,2) block of inv(A) is invertible the integral is rewritten with
    u = Astar_11 x + Astar_12 y so every factor is evaluated at known
    data (no interpolation); otherwise the partially transformed field is
    resampled at the mapped points.
    """
    grid = H.xgrid
    d = grid.dim
    if H.wgrid != grid.dual():
        raise GridMismatch("field frequency grid is not the dual grid")
    inv_a = A.inv()
    det_a = abs(A.det)
    st11, st12 = inv_a[:d, :d], inv_a[:d, d:]
    st21, st22 = -inv_a[d:, :d], -inv_a[d:, d:]
    gev = point_evaluator(gamma)
    x = grid.mesh().reshape(-1, d)
    wpts = grid.freq_mesh().reshape(-1, d)
    hv = H.values.reshape(x.shape[0], wpts.shape[0])
    dv = grid.step ** d
    dw = grid.freq_step ** d

    if is_invertible(st12):
        # substitute u = st11 x + st12 y: every factor is then evaluated
        # at known data.  The frequency sum has separable phase tables,
        # q(x_m, x_j) = C x_m + D x_j, so it reduces to a matrix product;
        # entries with |q| beyond the dual period are aliased and zeroed.
        s12_inv = np.linalg.inv(st12)
        dmat = st22 @ s12_inv
        cmat = st21 - dmat @ st11
        e1 = np.exp(-2j * np.pi * ((x @ cmat.T) @ wpts.T))   # (M, K)
        e2 = np.exp(-2j * np.pi * ((x @ dmat.T) @ wpts.T))   # (N, K)
        sec = e1 @ (hv * e2).T * dw                          # (M, N)
        qq = x[:, None, :] @ cmat.T + x[None, :, :] @ dmat.T
        sec[np.max(np.abs(qq), axis=-1) >= grid.length / 2.0] = 0.0
        yj = (x[None, :, :] - x[:, None, :] @ st11.T) @ s12_inv.T  # (M, N, d)
        out = np.sum(sec * gev(yj), axis=1) * dv
        out /= abs(np.linalg.det(st12))
    else:
        # fallback: partial transform on the grid, then resample
        f2h = cft(H.values, grid.freq_step, axes=tuple(range(d, 2 * d)))
        ypts = grid.mesh().reshape(-1, d)
        p = np.concatenate(
            (x[:, None, :] @ st11.T + ypts[None, :, :] @ st12.T,
             x[:, None, :] @ st21.T + ypts[None, :, :] @ st22.T), axis=-1)
        origins = [grid.axis()[0]] * (2 * d)
        steps = [grid.step] * (2 * d)
        vals = resample(f2h, origins, steps, p)
        out = np.sum(vals * gev(ypts)[None, :], axis=1) * dv
    return from_samples((out / det_a).reshape(grid.shape), grid)


def reconstruct(A: BlockMatrix, H: PhaseSpaceField, g: Signal,
                gamma: Signal) -> Signal:
    """Recover f from its field with window g using synthesis window gamma."""
    grid = H.xgrid
    ip = inner(g, gamma, grid)
    if abs(ip) < 1e-12:
        raise OrthogonalWindowPair("synthesis and analysis windows are orthogonal")
    rec = adjoint_apply(A, H, gamma)
    return from_samples(abs(A.det) / np.conj(ip) * rec.samples, grid)


def shift_field(F: PhaseSpaceField, x0, w0) -> PhaseSpaceField:
    """Translate a field by on-grid phase-space offsets, zero filling."""
    kx = F.xgrid.index_of(x0)
    kw = F.wgrid.index_of(w0)
    vals = F.values
    d = F.dim
    from .signals import _shift_zero_fill
    for ax in range(d):
        vals = _shift_zero_fill(vals, int(kx[ax]), ax)
    for ax in range(d):
        vals = _shift_zero_fill(vals, int(kw[ax]), d + ax)
    return PhaseSpaceField(vals, F.xgrid, F.wgrid, matrix=F.matrix,
                           tags=dict(F.tags))


def _field_phase(F: PhaseSpaceField, rho, sigma) -> np.ndarray:
    """exp(2 pi i (x . rho + w . sigma)) over the field's grids."""
    d = F.dim
    x = F.xgrid.mesh().reshape(F.xgrid.shape + (1,) * d + (d,))
    w = F.wgrid.mesh().reshape((1,) * d + F.wgrid.shape + (d,))
    rho = np.atleast_1d(np.asarray(rho, dtype=float))
    sigma = np.atleast_1d(np.asarray(sigma, dtype=float))
    return np.exp(2j * np.pi * ((x @ rho) + (w @ sigma)))


def covariance_check(A: BlockMatrix, f: Signal, g: Signal, a, alpha, b, beta,
                     grid: Grid) -> dict:
    """Two paths for the field of time-frequency shifted signals.

    lhs transforms the shifted pair directly; rhs applies the predicted
    phase and translation to the base field.  The translation offsets
    (r, sigma) must land on the grid.
    """
    d = grid.dim
    a = np.atleast_1d(np.asarray(a, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    alpha = np.atleast_1d(np.asarray(alpha, dtype=float))
    beta = np.atleast_1d(np.asarray(beta, dtype=float))
    lhs = mwd(A, tf_shift(f, a, alpha), tf_shift(g, b, beta), grid)

    inv_a = A.inv()
    rs = inv_a @ np.concatenate((a, b))
    r, s = rs[:d], rs[d:]
    rho_sigma = A.entries.T @ np.concatenate((alpha, -beta))
    rho, sigma = rho_sigma[:d], rho_sigma[d:]

    base = mwd(A, f, g, grid)
    shifted = shift_field(base, r, sigma)
    phase = np.exp(2j * np.pi * float(sigma @ s)) \
        * _field_phase(base, rho, -s)
    rhs = PhaseSpaceField(phase * shifted.values, grid, grid.dual(), matrix=A)
    return {"lhs": lhs, "rhs": rhs}


def covariance_cohen_rhs(M, base: PhaseSpaceField, z, w) -> PhaseSpaceField:
    """Predicted shifted field in the Cohen form of the covariance rule.

    z, w are phase-space points (2d vectors); the field picks up the
    scalar phase, the modulation by J(z - w) and the translation by
    (z + w)/2 + diag(-M, M)(z - w).
    """
    d = base.dim
    m = np.asarray(M, dtype=float)
    if m.ndim == 0:
        m = float(m) * np.eye(d)
    z = np.asarray(z, dtype=float)
    w = np.asarray(w, dtype=float)
    z1, z2 = z[:d], z[d:]
    w1, w2 = w[:d], w[d:]
    scalar = np.exp(2j * np.pi *
                    float((0.5 * (z2 + w2) + m @ (z2 - w2)) @ (z1 - w1)))
    jzw = np.concatenate((z2 - w2, -(z1 - w1)))
    shift = 0.5 * (z + w) + np.concatenate((-m @ (z1 - w1), m @ (z2 - w2)))
    moved = shift_field(base, shift[:d], shift[d:])
    phase = _field_phase(base, jzw[:d], jzw[d:])
    return PhaseSpaceField(scalar * phase * moved.values, base.xgrid,
                           base.wgrid, matrix=base.matrix)


def field_stft_point(F: PhaseSpaceField, window: PhaseSpaceField, z, zeta) -> complex:
    """STFT of the field F with a field window, at one point (z, zeta).

    z = (z1, z2) must be on-grid so the window shift is an exact index
    translation; zeta is arbitrary.
    """
    d = F.dim
    z = np.asarray(z, dtype=float)
    zeta = np.asarray(zeta, dtype=float)
    wsh = shift_field(window, z[:d], z[d:])
    x = F.xgrid.mesh().reshape(F.xgrid.shape + (1,) * d + (d,))
    w = F.wgrid.mesh().reshape((1,) * d + F.wgrid.shape + (d,))
    phase = np.exp(-2j * np.pi * ((x @ zeta[:d]) + (w @ zeta[d:])))
    return complex(np.sum(F.values * np.conj(wsh.values) * phase)
                   * F.quad_weight())


def magic_eval(A: BlockMatrix, f: Signal, g: Signal, phi: Signal, psi: Signal,
               z, zeta, grid: Grid) -> dict:
    """Both sides of the window-field STFT identity at one point.

    lhs: STFT of mwd(A, f, g) with window mwd(A, phi, psi), by direct
    phase-space quadrature.  rhs: product of two signal STFTs at linearly
    mapped points with the residual phase.
    """
    d = grid.dim
    z = np.asarray(z, dtype=float)
    zeta = np.asarray(zeta, dtype=float)
    F = mwd(A, f, g, grid)
    W = mwd(A, phi, psi, grid)
    lhs = field_stft_point(F, W, z, zeta)

    z1, z2 = z[:d], z[d:]
    ze1, ze2 = zeta[:d], zeta[d:]
    ash = sharp(A)
    a_pt = A.a11 @ z1 - A.a12 @ ze2
    b_pt = A.a21 @ z1 - A.a22 @ ze2
    alpha = ash.a11 @ ze1 + ash.a12 @ z2
    beta = -(ash.a21 @ ze1) - ash.a22 @ z2
    rhs = np.exp(-2j * np.pi * float(z2 @ ze2)) \
        * stft_point(f, phi, a_pt, alpha, grid) \
        * np.conj(stft_point(g, psi, b_pt, beta, grid))
    return {"lhs": lhs, "rhs": complex(rhs)}


def marginals(F: PhaseSpaceField) -> dict:
    """Frequency-integrated and time-integrated densities.

    Complex in general; real for self-adjoint-form matrices with f = g.
    """
    d = F.dim
    time = np.sum(F.values, axis=tuple(range(d, 2 * d))) * F.wgrid.step ** d
    freq = np.sum(F.values, axis=tuple(range(d))) * F.xgrid.step ** d
    return {"time": time, "freq": freq}
