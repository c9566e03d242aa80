"""Block-matrix calculus for the 2d x 2d parameter matrices of phase space.

A parameter matrix acts on pairs (x, y) of d-dimensional variables through
its four d x d blocks.  This module builds and classifies such matrices,
provides the named presets (Wigner, tau-family, STFT, ambiguity, Cohen
forms) and the derived matrices that the transform identities need.

All values are immutable after construction and all operations are pure.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import ConfigError, SingularMatrix

# A matrix counts as invertible when its smallest singular value exceeds
# this fraction of the largest one (double-precision conditioning guard).
SINGULARITY_RTOL = 1e-12

# Entrywise tolerance for structure detection (Cohen form, self-adjoint form).
STRUCTURE_ATOL = 1e-12


def _as_square(block, name: str) -> np.ndarray:
    m = np.asarray(block, dtype=float)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ConfigError(f"block {name} must be square, got shape {m.shape}")
    return m


def is_invertible(m: np.ndarray) -> bool:
    s = np.linalg.svd(np.asarray(m, dtype=float), compute_uv=False)
    return bool(s[0] > 0.0 and s[-1] > SINGULARITY_RTOL * s[0])


@dataclass(frozen=True)
class BlockMatrix:
    """Invertible 2d x 2d real matrix with d x d block access."""

    dim: int
    entries: np.ndarray
    det: float

    @property
    def a11(self) -> np.ndarray:
        d = self.dim
        return self.entries[:d, :d]

    @property
    def a12(self) -> np.ndarray:
        d = self.dim
        return self.entries[:d, d:]

    @property
    def a21(self) -> np.ndarray:
        d = self.dim
        return self.entries[d:, :d]

    @property
    def a22(self) -> np.ndarray:
        d = self.dim
        return self.entries[d:, d:]

    def inv(self) -> np.ndarray:
        return np.linalg.inv(self.entries)

    def __repr__(self) -> str:  # compact, for test failure messages
        return f"BlockMatrix(dim={self.dim}, det={self.det:.6g})"


def from_entries(entries) -> BlockMatrix:
    m = np.asarray(entries, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
        raise ConfigError(f"expected a 2d x 2d matrix, got shape {m.shape}")
    d = m.shape[0] // 2
    if d > 4:
        raise ConfigError("block dimension d > 4 is not supported")
    if not is_invertible(m):
        raise SingularMatrix("parameter matrix is singular")
    m = m.copy()
    m.setflags(write=False)
    return BlockMatrix(dim=d, entries=m, det=float(np.linalg.det(m)))


def make_block(a11, a12, a21, a22) -> BlockMatrix:
    """Assemble a BlockMatrix from four d x d blocks."""
    blocks = [_as_square(b, n) for b, n in
              zip((a11, a12, a21, a22), ("a11", "a12", "a21", "a22"))]
    d = blocks[0].shape[0]
    if any(b.shape[0] != d for b in blocks):
        raise ConfigError("all blocks must share the same dimension")
    top = np.hstack((blocks[0], blocks[1]))
    bot = np.hstack((blocks[2], blocks[3]))
    return from_entries(np.vstack((top, bot)))


def identity(d: int) -> BlockMatrix:
    return from_entries(np.eye(2 * d))


def symplectic(d: int) -> np.ndarray:
    """The canonical matrix J = [[0, I], [-I, 0]] as a plain array."""
    z = np.zeros((d, d))
    i = np.eye(d)
    return np.block([[z, i], [-i, z]])


def flip(d: int) -> np.ndarray:
    """Variable swap [[0, I], [I, 0]] as a plain array."""
    z = np.zeros((d, d))
    i = np.eye(d)
    return np.block([[z, i], [i, z]])


def reflect2(d: int) -> np.ndarray:
    """Second-variable reflection diag(I, -I) as a plain array."""
    return np.diag(np.concatenate((np.ones(d), -np.ones(d))))


def _param_matrix(value, d: int, name: str) -> np.ndarray:
    if value is None:
        raise ConfigError(f"preset requires parameter {name}")
    m = np.asarray(value, dtype=float)
    if m.ndim == 0:
        return float(m) * np.eye(d)
    return _as_square(m, name)


def preset(name: str, d: int = 1, *, tau: Optional[float] = None,
           M=None, T=None) -> BlockMatrix:
    """Named parameter matrices.

    wigner        [[I, I/2], [I, -I/2]]
    rihaczek      [[I, 0], [I, -I]]
    tau           [[I, tau I], [I, -(1-tau) I]]
    stft          [[0, I], [-I, I]]
    ambiguity     [[I/2, I], [-I/2, I]]
    cohen         [[I, M+I/2], [I, M-I/2]]      (perturbative form)
    affine        [[I, T], [I, -(I-T)]]         (affine form, M = T - I/2)
    """
    i = np.eye(d)
    z = np.zeros((d, d))
    if name == "wigner":
        return make_block(i, 0.5 * i, i, -0.5 * i)
    if name == "rihaczek":
        return make_block(i, z, i, -i)
    if name == "tau":
        if tau is None:
            raise ConfigError("preset 'tau' requires the parameter tau")
        return make_block(i, tau * i, i, -(1.0 - tau) * i)
    if name == "stft":
        return make_block(z, i, -i, i)
    if name == "ambiguity":
        return make_block(0.5 * i, i, -0.5 * i, i)
    if name == "cohen":
        m = _param_matrix(M, d, "M")
        return make_block(i, m + 0.5 * i, i, m - 0.5 * i)
    if name == "affine":
        t = _param_matrix(T, d, "T")
        return make_block(i, t, i, -(i - t))
    raise ConfigError(f"unknown preset {name!r}")


@dataclass(frozen=True)
class Classification:
    left_regular: bool
    right_regular: bool
    cohen_type: bool
    self_adjoint_form: bool
    cohen_M: Optional[np.ndarray]
    cohen_T: Optional[np.ndarray]
    c_T: Optional[float]


def classify(A: BlockMatrix) -> Classification:
    d = A.dim
    i = np.eye(d)
    left = is_invertible(A.a11) and is_invertible(A.a21)
    right = is_invertible(A.a12) and is_invertible(A.a22)
    cohen = (np.max(np.abs(A.a11 - i)) <= STRUCTURE_ATOL
             and np.max(np.abs(A.a21 - i)) <= STRUCTURE_ATOL
             and np.max(np.abs(A.a12 - A.a22 - i)) <= STRUCTURE_ATOL)
    self_adj = (np.max(np.abs(A.a21 - A.a11)) <= STRUCTURE_ATOL
                and np.max(np.abs(A.a12 + A.a22)) <= STRUCTURE_ATOL)
    m = t = None
    c_t = None
    if cohen:
        m = 0.5 * (A.a12 + A.a22)
        t = A.a12.copy()
        c_t = float(np.linalg.det(t) * np.linalg.det(i - t))
        m.setflags(write=False)
        t.setflags(write=False)
    return Classification(left_regular=left, right_regular=right,
                          cohen_type=cohen, self_adjoint_form=self_adj,
                          cohen_M=m, cohen_T=t, c_T=c_t)


def sharp(A: BlockMatrix) -> BlockMatrix:
    """Transpose of the inverse."""
    return from_entries(np.linalg.inv(A.entries).T)


def derived(A: BlockMatrix, which: str) -> BlockMatrix:
    """Derived matrices used by the transform identities.

    C1     flip . A . reflect2 = [[A21, -A22], [A11, -A12]]
    C2     reflect2 . sharp(A) . flip
    AJ     A . J = [[-A12, A11], [-A22, A21]]
    Astar  reflect2 . inv(A)
    """
    d = A.dim
    if which == "C1":
        return from_entries(flip(d) @ A.entries @ reflect2(d))
    if which == "C2":
        return from_entries(reflect2(d) @ np.linalg.inv(A.entries).T @ flip(d))
    if which == "AJ":
        return from_entries(A.entries @ symplectic(d))
    if which == "Astar":
        return from_entries(reflect2(d) @ np.linalg.inv(A.entries))
    raise ConfigError(f"unknown derived matrix {which!r}")


@dataclass(frozen=True)
class CohenMaps:
    """Shift maps attached to the affine Cohen parameter T."""

    T: np.ndarray
    P: np.ndarray           # diag(-T, -(I-T))
    I_plus_P: np.ndarray    # diag(I-T, T)
    U: Optional[np.ndarray]  # -diag((I-T)^-1 T, T^-1 (I-T)), when defined

    def tcal(self, z, w) -> np.ndarray:
        """(I + P) z - P w on phase-space points."""
        z = np.asarray(z, dtype=float)
        w = np.asarray(w, dtype=float)
        return self.I_plus_P @ z - self.P @ w


def cohen_maps(T, d: Optional[int] = None, *, require_u: bool = False) -> CohenMaps:
    t = np.asarray(T, dtype=float)
    if t.ndim == 0:
        if d is None:
            d = 1
        t = float(t) * np.eye(d)
    t = _as_square(t, "T")
    d = t.shape[0]
    i = np.eye(d)
    z = np.zeros((d, d))
    p = np.block([[-t, z], [z, -(i - t)]])
    ip = np.block([[i - t, z], [z, t]])
    u = None
    if is_invertible(t) and is_invertible(i - t):
        u = -np.block([[np.linalg.solve(i - t, t), z],
                       [z, np.linalg.solve(t, i - t)]])
    elif require_u:
        raise SingularMatrix("U_T requires both T and I-T invertible")
    return CohenMaps(T=t, P=p, I_plus_P=ip, U=u)


def from_config(obj, d: Optional[int] = None) -> BlockMatrix:
    """Build a BlockMatrix from the shared JSON config format.

    Either {"preset": <name>, ...parameters...} or
    {"blocks": {"A11": [[...]], "A12": ..., "A21": ..., "A22": ...}}
    with row-major real entries.
    """
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict):
        raise ConfigError("matrix config must be a JSON object")
    if "blocks" in obj:
        blocks = obj["blocks"]
        try:
            return make_block(blocks["A11"], blocks["A12"],
                              blocks["A21"], blocks["A22"])
        except KeyError as exc:
            raise ConfigError(f"matrix config missing block {exc}") from None
    if "preset" in obj:
        name = obj["preset"]
        dim = int(obj.get("dim", d if d is not None else 1))
        kw = {}
        if "tau" in obj:
            kw["tau"] = float(obj["tau"])
        if "M" in obj:
            kw["M"] = obj["M"]
        if "T" in obj:
            kw["T"] = obj["T"]
        return preset(name, dim, **kw)
    raise ConfigError("matrix config needs 'preset' or 'blocks'")
