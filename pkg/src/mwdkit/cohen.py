"""Cohen-class kernels, the multiplier bridge between parameters, and the
Gaussian closed-form oracle.

Within the matrix-Wigner family, the Cohen class consists exactly of the
matrices [[I, M+I/2], [I, M-I/2]].  The smoothing kernel attached to the
parameter M is represented by its Fourier transform
Theta_M(xi, eta) = exp(-2 pi i xi . M eta), which is always a bounded
unimodular chirp; the kernel itself is an explicit chirp only when M is
invertible.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import fourier
from .blockmat import is_invertible
from .errors import NonPositiveParameter, NotCohenTagged
from .fourier import Field2
from .mwd import PhaseSpaceField
from .signals import Grid


def _as_matrix(M, d: Optional[int] = None) -> np.ndarray:
    m = np.asarray(M, dtype=float)
    if m.ndim == 0:
        m = float(m) * np.eye(d if d is not None else 1)
    return m


@dataclass(frozen=True)
class CohenKernelSpec:
    """Kernel of a Cohen-class member, held through its Fourier transform."""

    M: np.ndarray
    theta_hat: Callable          # (xi, eta) meshes (..., d) -> unimodular chirp
    theta_explicit: Optional[Callable]  # (x, w) -> kernel values, M invertible


def kernel(M, d: Optional[int] = None) -> CohenKernelSpec:
    m = _as_matrix(M, d)

    def theta_hat(xi, eta):
        return np.exp(-2j * np.pi * np.sum((xi @ m.T) * eta, axis=-1))

    theta_explicit = None
    if is_invertible(m):
        m_inv = np.linalg.inv(m)
        det = abs(np.linalg.det(m))

        def theta_explicit(x, w):
            return np.exp(2j * np.pi * np.sum((x @ m_inv.T) * w, axis=-1)) / det

    return CohenKernelSpec(M=m, theta_hat=theta_hat,
                           theta_explicit=theta_explicit)


def _require_tag(F: PhaseSpaceField, M1: np.ndarray) -> None:
    tag = F.tags.get("cohen_M")
    if tag is None:
        raise NotCohenTagged("field was not produced by a Cohen-type matrix")
    if np.max(np.abs(np.asarray(tag) - M1)) > 1e-9:
        raise NotCohenTagged("field parameter tag does not match M1")


def remap(F: PhaseSpaceField, M1, M2) -> PhaseSpaceField:
    """Move a field from parameter M1 to M2 through the Fourier multiplier
    exp(-2 pi i xi . (M2 - M1) eta) on the full phase-space transform."""
    d = F.dim
    m1 = _as_matrix(M1, d)
    m2 = _as_matrix(M2, d)
    _require_tag(F, m1)
    spec = kernel(m2 - m1, d)
    field = Field2(F.values, (F.xgrid, F.wgrid))
    out = fourier.multiplier(field, spec.theta_hat)
    return PhaseSpaceField(out.values, F.xgrid, F.wgrid,
                           matrix=None, tags={**F.tags, "cohen_M": m2})


def convolution_remap(F: PhaseSpaceField, M1, M2,
                      pad_factor: float = 1.5,
                      max_refine: int = 16) -> PhaseSpaceField:
    """Same bridge through FFT convolution with the explicit chirp kernel.

    Requires M2 - M1 invertible and d = 1.  The chirp does not decay and
    its instantaneous frequency grows linearly, so on the field's own
    (self-dual) grid it is always aliased over most of the frequency
    range.  The convolution is therefore evaluated on a decoupled
    lattice: the field is trigonometrically refined (its transform decays,
    so refinement is spectrally exact), zero-padded from extent L to
    pad_factor * L, and convolved there; wrap-around is then controlled
    by the field's decay and the chirp is resolved over the support that
    matters.  Results are returned at the original grid points.
    """
    d = F.dim
    if d != 1:
        raise NonPositiveParameter("convolution form is implemented for d = 1")
    m1 = _as_matrix(M1, d)
    m2 = _as_matrix(M2, d)
    _require_tag(F, m1)
    dm = m2 - m1
    spec = kernel(dm, d)
    if spec.theta_explicit is None:
        raise NonPositiveParameter("convolution form needs invertible M2 - M1")
    grid = F.xgrid
    if abs(grid.step - grid.freq_step) > 1e-12:
        raise NonPositiveParameter("convolution form needs a self-dual grid")
    n, length = grid.n, grid.length
    half = pad_factor * length / 2.0
    # chirp frequency over the padded box is bounded by half / |dm|
    need = half * abs(1.0 / dm[0, 0])
    refine = 2
    while refine * n / (2.0 * length) < 1.15 * need and refine < max_refine:
        refine *= 2
    if refine * n / (2.0 * length) < need:
        raise NonPositiveParameter(
            "chirp cannot be resolved within the refinement cap")
    fine = fourier.trig_refine(F.values, refine)
    h = grid.step / refine
    pad = int(round((half - length / 2.0) / h))
    fine = np.pad(fine, pad)
    npts = fine.shape[0]
    ax = (np.arange(npts) - npts // 2) * h
    theta = spec.theta_explicit(ax[:, None, None], ax[None, :, None])
    sh = np.fft.ifftshift
    conv = np.fft.fftshift(np.fft.ifft2(np.fft.fft2(sh(theta))
                                        * np.fft.fft2(sh(fine)))) * h * h
    idx = pad + refine * np.arange(n)
    out = conv[np.ix_(idx, idx)]
    return PhaseSpaceField(out, F.xgrid, F.wgrid,
                           tags={**F.tags, "cohen_M": m2})


def gaussian_closed_form(M, lam: float, d: Optional[int] = None) -> Callable:
    """Closed-form field of the Gaussian exp(-pi |t|^2 / lam) at parameter M.

    Returns a callable (x, w) -> values for point arrays of shape (..., d);
    uses S = I + 4 M^T M.
    """
    if not lam > 0:
        raise NonPositiveParameter("gaussian width must be positive")
    m = _as_matrix(M, d)
    dd = m.shape[0]
    s = np.eye(dd) + 4.0 * m.T @ m
    s_inv = np.linalg.inv(s)
    pref = (2.0 * lam) ** (dd / 2.0) / np.sqrt(np.linalg.det(s))

    def evaluate(x, w):
        x = np.asarray(x, dtype=float)
        w = np.asarray(w, dtype=float)
        mtx = x @ m                       # M^T x, shape (..., d)
        sw = w @ s_inv.T                  # S^-1 w
        quad_x = np.sum(x * x, axis=-1)
        cross = np.sum(mtx * (mtx @ s_inv.T), axis=-1)
        quad_w = np.sum(w * sw, axis=-1)
        phase = np.sum(sw * mtx, axis=-1)
        return pref * np.exp(-2.0 * np.pi * quad_x / lam) \
            * np.exp(8.0 * np.pi * cross / lam) \
            * np.exp(8j * np.pi * phase) \
            * np.exp(-2.0 * np.pi * lam * quad_w)

    return evaluate


def gaussian_oracle(M, lam: float, xgrid: Grid,
                    wgrid: Optional[Grid] = None) -> PhaseSpaceField:
    """Evaluate the Gaussian closed form on a phase-space grid.

    The x-only and w-only factors are separable; only the coupling chirp
    exp(8 pi i S^-1 w . M^T x) requires a full outer product.
    """
    if not lam > 0:
        raise NonPositiveParameter("gaussian width must be positive")
    if wgrid is None:
        wgrid = xgrid.dual()
    d = xgrid.dim
    m = _as_matrix(M, d)
    s = np.eye(d) + 4.0 * m.T @ m
    s_inv = np.linalg.inv(s)
    pref = (2.0 * lam) ** (d / 2.0) / np.sqrt(np.linalg.det(s))
    xm = xgrid.mesh().reshape(-1, d)
    wm = wgrid.mesh().reshape(-1, d)
    mtx = xm @ m
    sw = wm @ s_inv.T
    fx = pref * np.exp(-2.0 * np.pi * np.sum(xm * xm, axis=-1) / lam
                       + 8.0 * np.pi * np.sum(mtx * (mtx @ s_inv.T), axis=-1) / lam)
    fw = np.exp(-2.0 * np.pi * lam * np.sum(wm * sw, axis=-1))
    vals = (fx[:, None] * fw[None, :]) * np.exp(8j * np.pi * (mtx @ sw.T))
    return PhaseSpaceField(vals.reshape(xgrid.shape + wgrid.shape),
                           xgrid, wgrid,
                           tags={"cohen_M": m, "oracle": "gaussian"})
