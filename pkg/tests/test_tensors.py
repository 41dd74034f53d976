import itertools

import numpy as np
import pytest

from gauge_mps.errors import DimMismatch, SizeLimit
from gauge_mps.tensors import (
    MpsTensor,
    TensorPair,
    apply_transfer,
    block,
    contract_mpv,
    contract_pair_mpv,
    injectivity_length,
    is_injective,
    is_normal,
    spectral_radius,
    transfer_matrix,
    unit_eigenvalue_count,
)


def random_tensor(d, D, seed):
    rng = np.random.default_rng(seed)
    return MpsTensor(rng.normal(size=(d, D, D)) + 1j * rng.normal(size=(d, D, D)))


def oracle_coefficients(t, n):
    """Independent brute-force oracle: explicit loop over index tuples."""
    d = t.phys_dim
    out = np.empty((d,) * n, dtype=complex)
    for idx in itertools.product(range(d), repeat=n):
        m = np.eye(t.left_dim, dtype=complex)
        for i in idx:
            m = m @ t.entries[i]
        out[idx] = np.trace(m)
    return out


@pytest.mark.parametrize("seed", [0, 1, 2])
@pytest.mark.parametrize("n", [1, 2, 4])
def test_contraction_matches_bruteforce_oracle(seed, n):
    t = random_tensor(3, 4, seed)
    assert np.allclose(contract_mpv(t, n), oracle_coefficients(t, n), atol=1e-10)


def test_pair_contraction_matches_oracle():
    rng = np.random.default_rng(7)
    a = MpsTensor(rng.normal(size=(2, 3, 2)))
    b = MpsTensor(rng.normal(size=(4, 2, 3)))
    pair = TensorPair(a, b)
    got = contract_pair_mpv(pair, 2)
    assert got.shape == (2, 4, 2, 4)
    for i1, j1, i2, j2 in itertools.product(range(2), range(4), range(2), range(4)):
        want = np.trace(a.entries[i1] @ b.entries[j1] @ a.entries[i2] @ b.entries[j2])
        assert np.isclose(got[i1, j1, i2, j2], want, atol=1e-10)


def test_pair_requires_chaining_bonds():
    with pytest.raises(DimMismatch):
        TensorPair(MpsTensor(np.zeros((2, 3, 2))), MpsTensor(np.zeros((2, 3, 3))))


def test_blocking_consistent_with_contraction():
    t = random_tensor(2, 3, 5)
    b2 = block(t, 2)
    assert b2.phys_dim == 4
    c_direct = contract_mpv(t, 4)
    c_blocked = contract_mpv(b2, 2).reshape(2, 2, 2, 2)
    assert np.allclose(c_direct, c_blocked, atol=1e-10)


def test_size_cap_enforced(monkeypatch):
    monkeypatch.setenv("GAUGE_MPS_SIZE_LIMIT", "100")
    t = random_tensor(4, 2, 0)
    with pytest.raises(SizeLimit):
        contract_mpv(t, 5)
    monkeypatch.setenv("GAUGE_MPS_SIZE_LIMIT", str(2 ** 24))
    contract_mpv(t, 5)


def test_transfer_matrix_matches_apply():
    t = random_tensor(3, 4, 9)
    x = np.random.default_rng(1).normal(size=(4, 4)) + 0j
    e = transfer_matrix(t)
    assert np.allclose((e @ x.reshape(-1)).reshape(4, 4),
                       apply_transfer(t, x), atol=1e-10)


def test_transfer_spectra_of_ab_and_ba_agree():
    """The nonzero transfer spectrum is invariant under cyclic reordering."""
    rng = np.random.default_rng(3)
    a = MpsTensor(rng.normal(size=(2, 3, 4)) + 1j * rng.normal(size=(2, 3, 4)))
    b = MpsTensor(rng.normal(size=(3, 4, 3)) + 1j * rng.normal(size=(3, 4, 3)))
    pair = TensorPair(a, b)
    ev_ab = np.linalg.eigvals(transfer_matrix(pair.combined))
    ev_ba = np.linalg.eigvals(transfer_matrix(pair.reversed))
    scale = max(np.abs(ev_ab).max(), 1.0)
    ab = sorted(ev_ab[np.abs(ev_ab) > 1e-9 * scale], key=abs, reverse=True)
    ba = list(ev_ba[np.abs(ev_ba) > 1e-9 * scale])
    assert len(ab) == len(ba)
    for ev in ab:
        k = int(np.argmin(np.abs(np.array(ba) - ev)))
        assert abs(ba[k] - ev) < 1e-7 * scale
        ba.pop(k)


def test_injectivity_cases():
    # Pauli basis spans everything at length 1
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    t = MpsTensor(np.array([np.eye(2), sx, sy, sz]))
    assert is_injective(t)
    assert injectivity_length(t) == 1
    # AKLT-like random d=2 D=2 tensors are injective at length 2
    t = random_tensor(2, 2, 11)
    assert not is_injective(t)
    assert injectivity_length(t) == 2
    # GHZ tensor never becomes injective
    ghz = MpsTensor(np.array([np.diag([1.0, 0.0]), np.diag([0.0, 1.0])]))
    assert injectivity_length(ghz) is None


def test_is_normal_verdicts():
    ok, L = is_normal(random_tensor(2, 3, 13))
    assert ok and L is not None
    ghz = MpsTensor(np.array([np.diag([1.0, 0.0]), np.diag([0.0, 1.0])]))
    ok, _ = is_normal(ghz)
    assert not ok
    # periodicity: the shift tensor has two unit-modulus transfer eigenvalues
    shift = MpsTensor(np.array([[[0, 1], [0, 0]], [[0, 0], [1, 0]]], dtype=complex))
    ok, _ = is_normal(shift)
    assert not ok
    assert unit_eigenvalue_count(shift) > 1


def test_spectral_radius_diagonal_case():
    t = MpsTensor(np.array([np.diag([2.0, 1.0])]))
    assert np.isclose(spectral_radius(t), 4.0)


def test_conjugation_preserves_coefficients():
    t = random_tensor(2, 3, 17)
    rng = np.random.default_rng(0)
    w = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    u = t.conjugated_by(w)
    for n in (1, 2, 3):
        assert np.allclose(contract_mpv(t, n), contract_mpv(u, n), atol=1e-8)
