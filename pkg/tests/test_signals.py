import math

import numpy as np
import pytest

from mwdkit.errors import (ConfigError, GridMismatch, InvalidExponent,
                           NonPositiveParameter, OffGridShift)
from mwdkit.mwd import PhaseSpaceField
from mwdkit.signals import (Grid, from_config, from_samples, gaussian, hermite,
                            inner, lincomb, mixed_norm, norm_l2, sample,
                            tf_shift)

GRID = Grid(1, 256, 16.0)


def test_grid_basics():
    assert GRID.step == pytest.approx(1 / 16)
    assert GRID.freq_step == pytest.approx(1 / 16)
    assert GRID.axis()[GRID.n // 2] == 0.0
    assert GRID.dual().dual() == GRID
    with pytest.raises(ConfigError):
        Grid(1, 100, 16.0)
    with pytest.raises(ConfigError):
        Grid(3, 64, 12.0)
    with pytest.raises(NonPositiveParameter):
        Grid(1, 64, -2.0)


def test_gaussian_values():
    g = gaussian(1.0)
    assert g(np.array([0.0])) == pytest.approx(1.0)
    assert gaussian(2.0)(np.array([1.0])) == pytest.approx(math.exp(-math.pi / 2))
    with pytest.raises(NonPositiveParameter):
        gaussian(0.0)


def test_gaussian_grid_norm():
    assert inner(gaussian(1.0), gaussian(1.0), GRID).real \
        == pytest.approx(2 ** -0.5, abs=1e-10)


@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0, 4.0])
def test_gaussian_quadrature_exactness(lam):
    # integral of exp(-2 pi t^2 / lam) is sqrt(lam / 2)
    val = norm_l2(gaussian(lam), GRID) ** 2
    assert val == pytest.approx(math.sqrt(lam / 2.0), abs=1e-10)


def test_hermite_zero_matches_gaussian():
    h0 = hermite(0)
    g = gaussian(1.0)
    t = np.linspace(-3, 3, 41)[:, None]
    assert np.allclose(h0(t), 2 ** 0.25 * g(t), atol=1e-14)


def test_hermite_orthonormal():
    hs = [hermite(k) for k in range(6)]
    for i, hi in enumerate(hs):
        for j, hj in enumerate(hs):
            want = 1.0 if i == j else 0.0
            assert inner(hi, hj, GRID) == pytest.approx(want, abs=1e-8)


def test_hermite_odd_vanishes_at_origin():
    assert abs(hermite(1)(np.array([0.0]))) < 1e-14
    with pytest.raises(ConfigError):
        hermite(33)


def test_tf_shift_identity_and_modulus():
    f = gaussian(1.0)
    same = tf_shift(f, [0.0], [0.0])
    t = np.linspace(-4, 4, 33)[:, None]
    assert np.allclose(same(t), f(t))
    moved = tf_shift(f, [0.5], [2.0])
    assert np.allclose(np.abs(moved(t)), np.abs(f(t - 0.5)), atol=1e-14)
    assert norm_l2(moved, GRID) == pytest.approx(norm_l2(f, GRID), abs=1e-10)


def test_tf_shift_composes():
    f = gaussian(1.0)
    a = tf_shift(tf_shift(f, [0.25], [0.0]), [0.5], [0.0])
    b = tf_shift(f, [0.75], [0.0])
    t = np.linspace(-4, 4, 57)[:, None]
    assert np.allclose(a(t), b(t), atol=1e-14)


def test_tf_shift_sampled_requires_grid_multiple():
    f = from_samples(sample(gaussian(1.0), GRID), GRID)
    moved = tf_shift(f, [GRID.step * 3], [0.25])
    assert moved.samples.shape == (256,)
    with pytest.raises(OffGridShift):
        tf_shift(f, [GRID.step * 0.5], [0.0])


def test_inner_parity_and_positivity():
    assert inner(hermite(0), hermite(1), GRID) == pytest.approx(0.0, abs=1e-10)
    rng = np.random.default_rng(4)
    spec = np.zeros(GRID.n, dtype=complex)
    spec[118:138] = rng.normal(size=20) + 1j * rng.normal(size=20)
    vals = np.fft.ifft(np.fft.ifftshift(spec))
    f = from_samples(np.fft.fftshift(vals), GRID)
    ip = inner(f, f, GRID)
    assert ip.imag == pytest.approx(0.0, abs=1e-12)
    assert ip.real >= 0.0


def test_sampled_inner_grid_mismatch():
    f = from_samples(np.ones(256, dtype=complex), GRID)
    with pytest.raises(GridMismatch):
        inner(f, gaussian(1.0), Grid(1, 128, 16.0))


def test_mixed_norm_hand_value():
    small = Grid(1, 4, 4.0)
    fld = PhaseSpaceField(np.ones((4, 4), dtype=complex), small, small.dual())
    assert mixed_norm(fld, 1, 1) == pytest.approx(4.0)
    assert mixed_norm(fld, math.inf, math.inf) == pytest.approx(1.0)


def test_mixed_norm_frobenius_case():
    rng = np.random.default_rng(9)
    vals = rng.normal(size=(256, 256)) + 1j * rng.normal(size=(256, 256))
    fld = PhaseSpaceField(vals, GRID, GRID.dual())
    want = math.sqrt(np.sum(np.abs(vals) ** 2) * GRID.step * GRID.freq_step)
    assert mixed_norm(fld, 2, 2) == pytest.approx(want, rel=1e-12)
    with pytest.raises(InvalidExponent):
        mixed_norm(fld, 0.5, 2)


def test_sampling_analytic_is_pointwise_exact():
    f = gaussian(1.3)
    vals = sample(f, GRID)
    assert np.array_equal(vals, f(GRID.mesh()))


def test_signal_from_config():
    f = from_config({"kind": "gaussian", "lambda": 2.0})
    assert f(np.array([1.0])) == pytest.approx(math.exp(-math.pi / 2))
    h = from_config({"kind": "hermite", "k": 1})
    assert abs(h(np.array([0.0]))) < 1e-14
    s = from_config({"kind": "sum", "terms": [
        {"kind": "gaussian", "coeff": 2.0},
        {"kind": "shifted", "base": {"kind": "gaussian"}, "x0": [1.0],
         "w0": [0.0]}]})
    assert s(np.array([0.0])) == pytest.approx(2.0 + math.exp(-math.pi))
    c = from_config({"kind": "chirp", "rate": 2.0})
    assert abs(c(np.array([1.0]))) == pytest.approx(math.exp(-math.pi))
    with pytest.raises(ConfigError):
        from_config({"kind": "wavelet"})
