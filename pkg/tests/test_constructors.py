import numpy as np
import pytest

from gauge_mps.constructors import (
    build_d10_example,
    build_su2_example,
    couple_matter_to_gauge,
    elementary_b_block,
    gauge_global_symmetry,
    wigner_eckart_a_block,
)
from gauge_mps.errors import BadSpinSet, MixedCohomology, ZeroByWignerEckart
from gauge_mps.reps import builtin_catalog, conjugate_rep, clebsch_gordan
from gauge_mps.symmetry import (
    check_global_symmetry,
    check_local_symmetry_matter_gauge,
    rep_ops,
    verify_relation_A,
    verify_relation_B,
)
from gauge_mps.tensors import MpsTensor, contract_mpv, is_injective


def test_d10_tensors_match_reference_matrices():
    cons = build_d10_example()
    assert np.array_equal(cons.A.entries,
                          np.array([[[1, 0], [0, 0]], [[0, 0], [0, 1]]]))
    want_b = np.zeros((4, 2, 2))
    for m in range(2):
        for n in range(2):
            want_b[2 * m + n, m, n] = 1
    assert np.array_equal(cons.B.entries, want_b)


def test_d10_hardcoded_matches_cg_pipeline():
    """Cross-validation: the hard-coded example equals the constructor
    output built through the coupling-coefficient machinery."""
    cons = build_d10_example()
    _, irreps = builtin_catalog("d10")
    by = {i.label: i for i in irreps}
    we = wigner_eckart_a_block(by["rho1"], by["rho1"], by["rho2"], irreps)
    assert np.allclose(we.tensor.entries, cons.A.entries, atol=1e-12)
    blk = elementary_b_block(conjugate_rep(by["rho2"]), by["rho1"])
    assert np.allclose(blk.tensor.entries, cons.B.entries, atol=1e-12)


@pytest.mark.parametrize("name", ["d10", "s3"])
def test_elementary_b_relations_all_pairs(name):
    group, irreps = builtin_catalog(name)
    labels = [group.name(g) for g in range(group.order)]
    for l in irreps:
        for r in irreps:
            blk = elementary_b_block(l, r)
            assert not blk.zero
            r_ops = list(zip(labels, blk.r_rep.matrices))
            l_ops = list(zip(labels, blk.l_rep.matrices))
            res = verify_relation_B(blk.tensor, r_ops, l_ops,
                                    list(blk.x_rep.matrices),
                                    list(blk.y_rep.matrices))
            assert max(v for _, v in res) < 1e-12


def test_elementary_b_mismatch_zero():
    _, irreps = builtin_catalog("d10")
    by = {i.label: i for i in irreps}
    blk = elementary_b_block(by["rho1"], by["rho1"], x=by["rho2"])
    assert blk.zero
    assert np.all(blk.tensor.entries == 0)


@pytest.mark.parametrize("name", ["d10", "s3"])
def test_wigner_eckart_all_triples(name):
    group, irreps = builtin_catalog(name)
    by = {i.label: i for i in irreps}
    for j in irreps:
        for l in irreps:
            cg = clebsch_gordan(conjugate_rep(j), l, irreps)
            present = set(cg.labels())
            for j0 in irreps:
                if j0.label in present:
                    we = wigner_eckart_a_block(j0, j, l, irreps)
                    res = verify_relation_A(
                        we.tensor, rep_ops(j0),
                        list(j.matrices), list(l.matrices))
                    assert max(v for _, v in res) < 1e-12
                else:
                    with pytest.raises(ZeroByWignerEckart):
                        wigner_eckart_a_block(j0, j, l, irreps)


def test_wigner_eckart_scaling_linearity():
    _, irreps = builtin_catalog("s3")
    by = {i.label: i for i in irreps}
    a1 = wigner_eckart_a_block(by["triv"], by["rho1"], by["rho1"], irreps,
                               alphas=[1.0])
    a3 = wigner_eckart_a_block(by["triv"], by["rho1"], by["rho1"], irreps,
                               alphas=[3.0])
    assert np.allclose(a3.tensor.entries, 3 * a1.tensor.entries)


def random_symmetric_matter(name, seed):
    """Globally symmetric matter tensor built from all coupling channels."""
    group, irreps = builtin_catalog(name)
    by = {i.label: i for i in irreps}
    rng = np.random.default_rng(seed)
    two_dim = [i for i in irreps if i.dim == 2]
    j = two_dim[seed % len(two_dim)]
    cg = clebsch_gordan(conjugate_rep(j), j, irreps)
    blocks, theta = [], []
    for lab, m in cg.decomposition.blocks:
        we = wigner_eckart_a_block(by[lab], j, j, irreps,
                                   alphas=rng.normal(size=m)
                                   + 1j * rng.normal(size=m))
        blocks.append(we.tensor.entries)
        theta.append(by[lab].matrices)
    ent = np.concatenate(blocks, axis=0)
    n = group.order
    d = ent.shape[0]
    th = np.zeros((n, d, d), dtype=complex)
    off = 0
    for tm in theta:
        th[:, off:off + tm.shape[1], off:off + tm.shape[1]] = tm
        off += tm.shape[1]
    theta_ops = [(group.name(g), th[g]) for g in range(n)]
    return group, irreps, MpsTensor(ent), theta_ops, j


@pytest.mark.parametrize("seed", range(3))
def test_gauging_produces_local_symmetry(seed):
    group, irreps, a_t, theta_ops, j = random_symmetric_matter("s3", seed)
    assert check_global_symmetry(a_t, theta_ops, 3).passed
    cons = gauge_global_symmetry(a_t, list(j.matrices), group, irreps,
                                 theta_ops=theta_ops)
    assert check_local_symmetry_matter_gauge(cons.pair, cons.r_ops,
                                             cons.theta_ops, cons.l_ops,
                                             3).passed
    res_a = verify_relation_A(cons.A, cons.theta_ops, list(cons.x_mats),
                              list(cons.y_mats))
    res_b = verify_relation_B(cons.B, cons.r_ops, cons.l_ops,
                              list(cons.x_mats), list(cons.y_mats))
    assert max(v for _, v in res_a) < 1e-12
    assert max(v for _, v in res_b) < 1e-12


def test_gauging_rejects_non_rep():
    group, irreps = builtin_catalog("s3")
    rng = np.random.default_rng(0)
    bad = [np.eye(2, dtype=complex) for _ in range(group.order)]
    q, _ = np.linalg.qr(rng.normal(size=(2, 2)))
    bad[1] = q  # breaks the group law
    a_t = MpsTensor(np.zeros((1, 2, 2)) + np.eye(2))
    with pytest.raises(MixedCohomology):
        gauge_global_symmetry(a_t, bad, group, irreps)


def test_couple_matter_to_gauge_gives_global_symmetry():
    group, irreps = builtin_catalog("d10")
    by = {i.label: i for i in irreps}
    rng = np.random.default_rng(4)
    n = group.order
    x = np.zeros((n, 3, 3), dtype=complex)
    for g in range(n):
        x[g, :2, :2] = by["rho1"].matrices[g]
        x[g, 2, 2] = by["sign"].matrices[g, 0, 0]
    q, _ = np.linalg.qr(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)))
    x = np.einsum("ab,gbc,dc->gad", q, x, np.conj(q))
    cm = couple_matter_to_gauge(x, group, irreps)
    theta_ops = [(group.name(g), cm.theta_rep.matrices[g]) for g in range(n)]
    res = verify_relation_A(cm.tensor, theta_ops, list(x), list(x))
    assert max(v for _, v in res) < 1e-10
    assert check_global_symmetry(cm.tensor, theta_ops, 4).passed
    # default picks the lowest-dimensional physical irrep per block
    assert all(chosen == "triv" for _, chosen in cm.choices)


def test_su2_bad_spin_set():
    with pytest.raises(BadSpinSet):
        build_su2_example(r=0.5, l=0.5, j_set=(2.0,))
    with pytest.raises(BadSpinSet):
        build_su2_example(j_set=())


def test_su2_virtual_gauss_law():
    su2 = build_su2_example(r=1.0, l=0.5, j_set=(0.5, 1.5))
    a_ent = su2.pair.A.entries
    for a in range(3):
        lhs = np.einsum("ij,jkl->ikl", su2.gauss.q_gens[a], a_ent)
        rhs = (np.einsum("ab,ibc->iac", -su2.x_gens[a], a_ent)
               + np.einsum("ibc,cd->ibd", a_ent, su2.y_gens[a]))
        assert np.linalg.norm(lhs - rhs) < 1e-12


def test_su2_single_spin_alpha_still_passes():
    from gauge_mps.symmetry import check_gauss_law

    su2 = build_su2_example(j_set=(0.0, 1.0), alphas=(1.0, 0.0))
    assert check_gauss_law(su2.pair, su2.gauss, 2).passed


def test_su2_alpha_scaling_preserves_verdicts():
    from gauge_mps.symmetry import check_gauss_law

    s1 = build_su2_example(alphas=(1.0, 1.0))
    s2 = build_su2_example(alphas=(2.0, 2.0))
    assert np.allclose(s2.pair.A.entries, 2 * s1.pair.A.entries)
    assert check_gauss_law(s2.pair, s2.gauss, 2).passed
