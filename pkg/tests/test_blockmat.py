import numpy as np
import pytest

from mwdkit import blockmat
from mwdkit.blockmat import (classify, cohen_maps, derived, from_config,
                             make_block, preset, sharp, symplectic)
from mwdkit.errors import ConfigError, SingularMatrix


def test_make_block_dets():
    i = np.eye(1)
    z = np.zeros((1, 1))
    assert make_block(i, i, i, z).det == pytest.approx(-1.0)
    assert make_block(i, z, z, i).det == pytest.approx(1.0)


def test_make_block_rejects_singular():
    i = np.eye(1)
    with pytest.raises(SingularMatrix):
        make_block(i, i, i, i)


def test_make_block_rejects_mixed_dims():
    with pytest.raises(ConfigError):
        make_block(np.eye(1), np.eye(2), np.eye(1), np.eye(1))


def test_preset_wigner_entries():
    a = preset("wigner")
    assert np.allclose(a.entries, [[1.0, 0.5], [1.0, -0.5]])
    assert np.allclose(preset("tau", 1, tau=0.5).entries, a.entries)


def test_preset_cohen_zero_is_wigner():
    assert np.array_equal(preset("cohen", 1, M=0.0).entries,
                          preset("wigner").entries)


def test_preset_rihaczek_is_tau_zero():
    assert np.array_equal(preset("rihaczek").entries,
                          preset("tau", 1, tau=0.0).entries)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_affine_matches_cohen(d):
    rng = np.random.default_rng(7 + d)
    t = rng.uniform(-1, 1, (d, d))
    assert np.allclose(preset("affine", d, T=t).entries,
                       preset("cohen", d, M=t - 0.5 * np.eye(d)).entries,
                       atol=1e-15)


def test_classify_stft():
    cls = classify(preset("stft"))
    assert cls.right_regular and not cls.left_regular
    assert not cls.cohen_type and cls.cohen_M is None


def test_classify_tau():
    tau = 0.3
    cls = classify(preset("tau", 1, tau=tau))
    assert cls.cohen_type
    assert cls.cohen_T == pytest.approx(tau)
    assert cls.cohen_M == pytest.approx(tau - 0.5)
    assert cls.c_T == pytest.approx(tau * (1 - tau))


def test_classify_self_adjoint_form():
    a = make_block(np.eye(1), np.eye(1), np.eye(1), -np.eye(1))
    assert classify(a).self_adjoint_form
    assert classify(preset("wigner")).self_adjoint_form
    assert not classify(preset("rihaczek")).self_adjoint_form


def test_classify_recovers_cohen_parameter_exactly():
    rng = np.random.default_rng(3)
    for _ in range(10):
        m = rng.uniform(-1, 1, (2, 2))
        cls = classify(preset("cohen", 2, M=m))
        assert np.array_equal(cls.cohen_M, m)


def test_sharp_identity_and_symplectic():
    assert np.allclose(sharp(blockmat.identity(2)).entries, np.eye(4))
    j = blockmat.from_entries(symplectic(1))
    assert np.allclose(sharp(j).entries, j.entries)


def test_sharp_is_involution():
    rng = np.random.default_rng(11)
    for _ in range(10):
        a = blockmat.from_entries(rng.uniform(-1, 1, (4, 4)) + np.eye(4))
        assert np.allclose(sharp(sharp(a)).entries, a.entries, atol=1e-10)


def test_derived_wigner_c1_fixed_point():
    a = preset("wigner")
    assert np.allclose(derived(a, "C1").entries, a.entries)


def test_derived_astar_of_identity():
    out = derived(blockmat.identity(1), "Astar")
    assert np.allclose(out.entries, np.diag([1.0, -1.0]))


def test_derived_aj_is_product():
    rng = np.random.default_rng(5)
    for _ in range(20):
        a = blockmat.from_entries(rng.uniform(-1, 1, (4, 4)) + 1.5 * np.eye(4))
        assert np.allclose(derived(a, "AJ").entries,
                           a.entries @ symplectic(2), atol=1e-12)


def test_c1_is_involution():
    rng = np.random.default_rng(17)
    for _ in range(50):
        a = blockmat.from_entries(rng.uniform(-1, 1, (2, 2)) + np.eye(2))
        assert np.allclose(derived(derived(a, "C1"), "C1").entries,
                           a.entries, atol=1e-10)


def test_right_regular_iff_sharp_left_regular():
    rng = np.random.default_rng(23)
    mats = [preset(n) for n in ("wigner", "rihaczek", "stft", "ambiguity")]
    while len(mats) < 54:
        m = rng.uniform(-1, 1, (4, 4))
        if abs(np.linalg.det(m)) > 0.1:
            mats.append(blockmat.from_entries(m))
    for a in mats:
        assert classify(a).right_regular == classify(sharp(a)).left_regular


def test_cohen_maps_halfway():
    maps = cohen_maps(0.5, 1)
    rng = np.random.default_rng(1)
    z, w = rng.normal(size=2), rng.normal(size=2)
    assert np.allclose(maps.tcal(z, w), 0.5 * (z + w))
    assert np.allclose(maps.U, -np.eye(2))


def test_cohen_maps_tcal_fixed_point():
    for t in (0.2, 0.5, 0.9):
        maps = cohen_maps(t, 1)
        z = np.array([0.3, -1.2])
        assert np.allclose(maps.tcal(z, z), z)


def test_cohen_maps_singular_T():
    assert cohen_maps(0.0, 1).U is None
    with pytest.raises(SingularMatrix):
        cohen_maps(0.0, 1, require_u=True)
    with pytest.raises(SingularMatrix):
        cohen_maps(1.0, 1, require_u=True)


def test_concentration_identity():
    # (I + P)^-1 tcal(w, z) = w - U z
    rng = np.random.default_rng(29)
    for t in (0.3, 0.5, 0.75):
        maps = cohen_maps(t, 1)
        inv = np.linalg.inv(maps.I_plus_P)
        for _ in range(10):
            z, w = rng.normal(size=2), rng.normal(size=2)
            lhs = inv @ maps.tcal(w, z)
            rhs = w - maps.U @ z
            assert np.allclose(lhs, rhs, atol=1e-10)


def test_from_config_preset_and_blocks():
    a = from_config({"preset": "tau", "tau": 0.25})
    assert np.allclose(a.entries, preset("tau", 1, tau=0.25).entries)
    b = from_config({"blocks": {"A11": [[1.0]], "A12": [[0.5]],
                                "A21": [[1.0]], "A22": [[-0.5]]}})
    assert np.allclose(b.entries, preset("wigner").entries)
    with pytest.raises(ConfigError):
        from_config({"nonsense": 1})
    with pytest.raises(ConfigError):
        from_config({"preset": "no-such-preset"})


def test_entries_are_frozen():
    a = preset("wigner")
    with pytest.raises(ValueError):
        a.entries[0, 0] = 2.0
