import numpy as np
import pytest

from mwdkit.blockmat import from_entries, identity, preset
from mwdkit.errors import DomainTagMismatch, ExtrapolationWarning
from mwdkit.fourier import (Field2, catmull_rom, coord, ft, ift, multiplier,
                            pft1, pft2, resample, tensor_field, trig_refine)
from mwdkit.signals import Grid, gaussian, sample, tf_shift

GRID = Grid(1, 256, 16.0)


def test_ft_gaussian_closed_form():
    for lam in (0.5, 1.0, 2.0):
        out = ft(gaussian(lam), GRID)
        want = lam ** 0.5 * np.exp(-np.pi * lam * GRID.freq_axis() ** 2)
        assert np.max(np.abs(out.samples - want)) < 1e-10


def test_ft_shift_theorem():
    f = gaussian(1.0)
    x0 = 0.5
    lhs = ft(tf_shift(f, [x0], [0.0]), GRID).samples
    rhs = np.exp(-2j * np.pi * x0 * GRID.freq_axis()) * ft(f, GRID).samples
    assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_ft_fourth_power_is_identity():
    f = gaussian(1.3)
    vals = sample(f, GRID)
    cur = f
    for _ in range(4):
        cur = ft(cur, GRID)
    assert np.max(np.abs(cur.samples - vals)) < 1e-9


def test_ift_inverts_ft():
    f = gaussian(0.8)
    assert np.max(np.abs(ift(ft(f, GRID), GRID.dual()).samples
                         - sample(f, GRID))) < 1e-12


def test_pft2_unitary_roundtrip():
    F = tensor_field(gaussian(1.0), gaussian(2.0), GRID, GRID)
    back = pft2(pft2(F), inverse=True)
    assert np.max(np.abs(back.values - F.values)) < 1e-12
    with pytest.raises(DomainTagMismatch):
        pft2(pft2(F))


def test_pft_composition_is_full_transform():
    f, g = gaussian(1.0), gaussian(0.5)
    F = tensor_field(f, g, GRID, GRID)
    both = pft1(pft2(F))
    want = np.outer(ft(f, GRID).samples, ft(g, GRID).samples)
    assert np.max(np.abs(both.values - want)) < 1e-12


def test_pft2_separable():
    f, g = gaussian(1.0), gaussian(2.0)
    F = tensor_field(f, g, GRID, GRID)
    out = pft2(F)
    want = np.outer(sample(f, GRID), ft(g, GRID).samples)
    assert np.max(np.abs(out.values - want)) < 1e-12


def test_pft2_unitarity_inner_product():
    x = GRID.axis()
    vals1 = np.exp(-np.pi * (x[:, None] ** 2 + x[None, :] ** 2)) + 0j
    vals2 = np.exp(-np.pi * (x[:, None] ** 2 / 2 + x[None, :] ** 2 / 1.5)) \
        * np.exp(2j * np.pi * 0.3 * x[None, :])
    F1 = Field2(vals1, (GRID, GRID))
    F2 = Field2(vals2, (GRID, GRID))
    ip = np.vdot(F2.values, F1.values) * GRID.step ** 2
    hat1, hat2 = pft2(F1), pft2(F2)
    ip_hat = np.vdot(hat2.values, hat1.values) * GRID.step * GRID.freq_step
    assert abs(ip - ip_hat) / abs(ip) < 1e-10


def test_coord_identity_bitwise():
    F = tensor_field(gaussian(1.0), gaussian(2.0), GRID, GRID)
    out = coord(identity(1), F)
    assert np.array_equal(out.values, F.values)


def _gauss2(x, y):
    return np.exp(-np.pi * (x ** 2 + y ** 2))


def test_coord_analytic_matches_sampled():
    a = from_entries([[0.8, 0.3], [-0.2, 0.9]])
    f = gaussian(1.0)
    F = tensor_field(f, f, GRID, GRID)
    ana = coord(a, (f, f), out_grids=(GRID, GRID))
    num = coord(a, F)
    assert np.max(np.abs(ana.values - num.values)) < 1e-6


def test_coord_composition_analytic():
    a = from_entries([[1.0, 0.4], [0.1, 0.9]])
    b = from_entries([[0.7, -0.2], [0.3, 1.1]])
    f = gaussian(1.0)
    lhs = coord(from_entries(b.entries @ a.entries), (f, f),
                out_grids=(GRID, GRID))
    inner_vals = coord(b, (f, f), out_grids=(GRID, GRID))
    rhs = coord(a, inner_vals)
    assert np.max(np.abs(lhs.values - rhs.values)) < 1e-6


def test_coord_l2_scaling():
    a = from_entries([[0.9, 0.2], [-0.3, 1.2]])
    f = gaussian(1.0)
    F = tensor_field(f, f, GRID, GRID)
    out = coord(a, F)
    n0 = np.sqrt(np.sum(np.abs(F.values) ** 2))
    n1 = np.sqrt(np.sum(np.abs(out.values) ** 2))
    assert n1 / n0 == pytest.approx(abs(np.linalg.det(a.entries)) ** -0.5,
                                    abs=1e-6)


def test_coord_warns_on_extrapolation():
    a = from_entries([[3.0, 0.0], [0.0, 1.0]])
    F = tensor_field(gaussian(1.0), gaussian(1.0), GRID, GRID)
    with pytest.warns(ExtrapolationWarning):
        coord(a, F)


def test_multiplier_identity_and_inverse():
    F = tensor_field(gaussian(1.0), gaussian(1.0), GRID, GRID)
    out = multiplier(F, lambda xi, eta: np.ones(
        np.broadcast(xi[..., 0], eta[..., 0]).shape))
    assert np.max(np.abs(out.values - F.values)) < 1e-12

    def ramp(sign):
        def m(xi, eta):
            return np.exp(sign * 2j * np.pi * 0.4
                          * np.sum(xi * eta, axis=-1))
        return m

    twice = multiplier(multiplier(F, ramp(+1)), ramp(-1))
    assert np.max(np.abs(twice.values - F.values)) < 1e-12


def test_plancherel():
    for lam in (0.7, 1.0, 1.8):
        f = gaussian(lam)
        a = np.sum(np.abs(sample(f, GRID)) ** 2) * GRID.step
        b = np.sum(np.abs(ft(f, GRID).samples) ** 2) * GRID.freq_step
        assert a == pytest.approx(b, rel=1e-10)


def test_catmull_rom_exact_on_cubics():
    x = np.arange(10.0)
    y = (2 + x - 0.5 * x ** 2 + 0.125 * x ** 3) + 0j
    q = np.linspace(2.0, 7.0, 37)
    got = catmull_rom(y, [0.0], [1.0], q[:, None])
    want = 2 + q - 0.5 * q ** 2 + 0.125 * q ** 3
    assert np.max(np.abs(got - want)) < 1e-12


def test_trig_refine_matches_function():
    f = gaussian(1.0)
    coarse = sample(f, GRID)
    fine = trig_refine(coarse, 4)
    xfine = GRID.axis()[0] + np.arange(4 * GRID.n) * GRID.step / 4
    assert np.max(np.abs(fine - f(xfine[:, None]))) < 1e-12


def test_resample_accuracy_smooth():
    rng = np.random.default_rng(6)
    f = gaussian(1.0)
    vals = np.outer(sample(f, GRID), sample(f, GRID))
    pts = rng.uniform(-6, 6, (500, 2))
    got = resample(vals, [GRID.axis()[0]] * 2, [GRID.step] * 2, pts)
    want = f(pts[:, :1]) * f(pts[:, 1:])
    assert np.max(np.abs(got - want)) < 1e-6
