"""File formats for arrays and heatmaps: tiny binary, CSV, and 8-bit PGM.

Binary layout: magic "MWD1"; little-endian u32 rank then the dims; then
float64 little-endian (re, im) interleaved in row-major order.
"""
from __future__ import annotations

import struct
from typing import Sequence

import numpy as np

from .errors import ConfigError

MAGIC = b"MWD1"


def write_bin(path: str, values: np.ndarray) -> None:
    a = np.ascontiguousarray(values, dtype=complex)
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<I", a.ndim))
        fh.write(struct.pack(f"<{a.ndim}I", *a.shape))
        inter = np.empty(a.size * 2, dtype="<f8")
        inter[0::2] = a.real.ravel()
        inter[1::2] = a.imag.ravel()
        fh.write(inter.tobytes())


def read_bin(path: str) -> np.ndarray:
    with open(path, "rb") as fh:
        if fh.read(4) != MAGIC:
            raise ConfigError(f"{path}: bad magic, not an MWD1 array")
        rank, = struct.unpack("<I", fh.read(4))
        dims = struct.unpack(f"<{rank}I", fh.read(4 * rank))
        raw = np.frombuffer(fh.read(), dtype="<f8")
    n = int(np.prod(dims))
    if raw.size != 2 * n:
        raise ConfigError(f"{path}: payload size mismatch")
    return (raw[0::2] + 1j * raw[1::2]).reshape(dims)


def _fmt(x: float) -> str:
    return format(x, ".17g")


def write_csv_field(path: str, values: np.ndarray, xmesh: np.ndarray,
                    wmesh: np.ndarray) -> None:
    """Field CSV: one row per (x, omega) pair, header x,omega,re,im.

    For d = 2 the coordinate columns split into per-axis components
    (x1,x2,omega1,omega2,re,im).
    """
    d = xmesh.shape[-1]
    xs = xmesh.reshape(-1, d)
    ws = wmesh.reshape(-1, d)
    vals = values.reshape(xs.shape[0], ws.shape[0])
    if d == 1:
        header = "x,omega,re,im"
    else:
        header = ",".join([f"x{i+1}" for i in range(d)]
                          + [f"omega{i+1}" for i in range(d)] + ["re", "im"])
    with open(path, "w") as fh:
        fh.write(header + "\n")
        for i in range(xs.shape[0]):
            xcols = ",".join(_fmt(c) for c in xs[i])
            for j in range(ws.shape[0]):
                wcols = ",".join(_fmt(c) for c in ws[j])
                v = vals[i, j]
                fh.write(f"{xcols},{wcols},{_fmt(v.real)},{_fmt(v.imag)}\n")


def read_csv_field(path: str) -> np.ndarray:
    rows = []
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        for line in fh:
            rows.append([float(c) for c in line.strip().split(",")])
    return np.asarray(rows), header


def write_csv_signal(path: str, t: np.ndarray, values: np.ndarray) -> None:
    """Signal CSV with header t,re,im (d = 1)."""
    with open(path, "w") as fh:
        fh.write("t,re,im\n")
        for ti, v in zip(np.ravel(t), np.ravel(values)):
            fh.write(f"{_fmt(ti)},{_fmt(v.real)},{_fmt(v.imag)}\n")


def write_pgm(path: str, values: np.ndarray) -> None:
    """Binary P5 heatmap of normalized magnitude, max mapped to 255.

    Rows are the x axis (height), columns the frequency axis (width).
    """
    mag = np.abs(np.asarray(values))
    if mag.ndim != 2:
        raise ConfigError("PGM output needs a two-axis field (d = 1)")
    peak = mag.max()
    if peak > 0:
        mag = mag / peak
    img = np.round(mag * 255.0).astype(np.uint8)
    height, width = img.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{width} {height}\n255\n".encode())
        fh.write(img.tobytes())
