"""Canonical form of MPV tensors and gauge relations between them.

The decomposition follows the invariant-subspace route: the algebra
generated by the Kraus matrices is computed explicitly; eigenvectors of a
random algebra element seed orbits that expose proper invariant subspaces,
which split the tensor block-upper-triangularly.  Periodicity (several
transfer eigenvalues on the unit circle) is removed by blocking.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GaugeNotFound, NotEquivalent, NumericalDegeneracy
from .tensors import (
    MpsTensor,
    TensorPair,
    _orth_basis,
    block,
    contract_mpv,
    contract_pair_mpv,
    fixed_point,
    is_normal,
    lcm,
    spectral_radius,
    transfer_matrix,
    unit_eigenvalue_count,
)

MAX_BLOCK_ROUNDS = 6


def algebra_basis(mats, tol=1e-10):
    """Orthonormal basis (rows) of the unital algebra generated by `mats`."""
    D = mats[0].shape[0]
    vecs = [np.eye(D, dtype=complex).reshape(-1)]
    vecs += [np.asarray(m, dtype=complex).reshape(-1) for m in mats]
    basis = _orth_basis(vecs, tol)
    while True:
        if basis.shape[0] == D * D:
            return basis
        nxt = list(basis)
        for v in basis:
            m = v.reshape(D, D)
            for a in mats:
                nxt.append((m @ a).reshape(-1))
        grown = _orth_basis(nxt, tol)
        if grown.shape[0] == basis.shape[0]:
            return grown
        basis = grown


def find_invariant_subspace(mats, rng, tol=1e-9, attempts=12):
    """Orthonormal columns spanning a proper common invariant subspace.

    Returns None when the matrices act irreducibly (generated algebra is
    full).  Strategy: any minimal invariant subspace contains an eigenvector
    of every algebra element, so orbits of eigenvectors of a random algebra
    element are tried until a proper one with a clean block structure shows
    up.
    """
    mats = [np.asarray(m, dtype=complex) for m in mats]
    D = mats[0].shape[0]
    alg = algebra_basis(mats)
    if alg.shape[0] == D * D:
        return None
    scale = max(np.linalg.norm(m) for m in mats)
    if scale < 1e-12:
        # zero tensor: every subspace is invariant
        basis = np.zeros((D, 1), dtype=complex)
        basis[0, 0] = 1.0
        return basis
    # cheap exact cases first: the joint column range and the joint kernel
    # are invariant; use them whenever they are proper.
    cols = _orth_basis([c for m in mats for c in m.T], 1e-9)
    if 0 < cols.shape[0] < D:
        return cols.T.copy()
    stacked = np.vstack(mats)
    _, s, vh = np.linalg.svd(stacked)
    rank = int(np.sum(s > 1e-9 * s[0]))
    if 0 < D - rank:
        return vh[rank:].conj().T

    best = None
    for _ in range(attempts):
        coeff = rng.normal(size=alg.shape[0]) + 1j * rng.normal(size=alg.shape[0])
        m = (coeff @ alg).reshape(D, D)
        _, evecs = np.linalg.eig(m)
        for k in range(D):
            v = evecs[:, k]
            orbit = _orth_basis([(e.reshape(D, D) @ v) for e in alg], 1e-8)
            r = orbit.shape[0]
            if r == 0 or r >= D:
                continue
            p = orbit.T.copy()  # columns, D x r
            # invariance residual of the candidate
            res = max(
                np.linalg.norm(a @ p - p @ (p.conj().T @ a @ p)) for a in mats
            )
            if res <= 1e-7 * scale and (best is None or r < best.shape[1]):
                best = p
        if best is not None:
            return best
    raise NumericalDegeneracy(
        "algebra is proper but no clean invariant subspace was found",
        gap=float(D * D - alg.shape[0]),
    )


def _split_leaves(t: MpsTensor, rng, tol=1e-9):
    """Recursively split into irreducible leaf tensors; drops zero leaves."""
    leaves = []

    def recurse(mats):
        D = mats[0].shape[0]
        if D == 0:
            return
        if max(np.linalg.norm(m) for m in mats) < 1e-12:
            return
        p = find_invariant_subspace(mats, rng, tol)
        if p is None:
            leaf = MpsTensor(np.array(mats))
            if spectral_radius(leaf) > 1e-12:
                leaves.append(leaf)
            return
        q = _orth_complement(p)
        recurse([p.conj().T @ a @ p for a in mats])
        if q.shape[1]:
            recurse([q.conj().T @ a @ q for a in mats])

    recurse([np.asarray(m) for m in t.matrices()])
    return leaves


def _orth_complement(p):
    D = p.shape[0]
    u, s, _ = np.linalg.svd(np.hstack([p, np.eye(D, dtype=complex)]))
    return u[:, p.shape[1]:D]


def cfii_fix(t: MpsTensor):
    """Gauge a normal, radius-1 tensor into trace-preserving form with a
    positive diagonal fixed point.

    Returns (fixed tensor, M, lam) with fixed = M t M^-1 and lam the
    diagonal fixed point (normalized to unit trace, descending entries).
    """
    y = fixed_point(t, left=True)
    wy, vy = np.linalg.eigh(y)
    y_half = vy @ np.diag(np.sqrt(wy.clip(min=0))) @ vy.conj().T
    y_half_inv = vy @ np.diag(1 / np.sqrt(wy.clip(min=1e-300))) @ vy.conj().T
    a1 = MpsTensor(np.einsum("ab,ibc,cd->iad", y_half, t.entries, y_half_inv))
    rho = fixed_point(a1, left=False)
    w, u = np.linalg.eigh(rho)
    order = np.argsort(-w)
    w = w[order]
    u = u[:, order]
    a2 = MpsTensor(np.einsum("ab,ibc,cd->iad", u.conj().T, a1.entries, u))
    m = u.conj().T @ y_half
    lam = np.diag(w / w.sum())
    return a2, m, lam


def gauge_between_normal(t1: MpsTensor, t2: MpsTensor, tol=1e-6):
    """Find (s, phase) with t1 = phase * s t2 s^-1, for normal radius-1
    tensors, via the leading eigenvector of the mixed transfer map."""
    if t1.left_dim != t2.left_dim or t1.phys_dim != t2.phys_dim:
        raise GaugeNotFound("dimension mismatch")
    mix = transfer_matrix(t1, t2)
    evals, evecs = np.linalg.eig(mix)
    k = int(np.argmax(np.abs(evals)))
    lam = evals[k]
    if abs(abs(lam) - 1) > tol:
        raise GaugeNotFound(f"mixed transfer radius {abs(lam):.6f} != 1")
    if np.sum(np.abs(evals) > abs(lam) * (1 - 1e-8)) != 1:
        raise GaugeNotFound("mixed transfer leading eigenvalue degenerate")
    phase = lam / abs(lam)
    D = t1.left_dim
    v = evecs[:, k].reshape(D, D)
    rho2 = fixed_point(t2, left=False)
    s = v @ np.linalg.inv(rho2)
    s *= np.sqrt(D) / np.linalg.norm(s)
    flat = s.reshape(-1)
    piv = flat[np.argmax(np.abs(flat))]
    s = s / (piv / abs(piv))
    s_inv = np.linalg.inv(s)
    resid = max(
        np.linalg.norm(t1.entries[i] - phase * s @ t2.entries[i] @ s_inv)
        for i in range(t1.phys_dim)
    ) / max(1e-300, np.linalg.norm(t1.entries))
    if resid > tol:
        raise GaugeNotFound(f"conjugation residual {resid:.3e}")
    return s, phase


@dataclass(frozen=True)
class CFBlock:
    tensor: MpsTensor               # normal representative, radius 1, CFII gauge
    copies: tuple                   # ((mu, V), ...): leaf = mu * V^-1 tensor V
    fixed_point: np.ndarray         # positive diagonal, unit trace


@dataclass(frozen=True)
class CanonicalFormResult:
    blocks: tuple                   # CFBlock per basis-of-normal-tensors element
    blocking_factor: int
    input_tensor: MpsTensor

    def copy_weights(self):
        return [mu for blk in self.blocks for (mu, _) in blk.copies]

    def reassembled_coeffs(self, n: int):
        """Sum over blocks of mu^N times the block coefficients."""
        d = self.blocks[0].tensor.phys_dim if self.blocks else self.input_tensor.phys_dim
        total = None
        for blk in self.blocks:
            c = contract_mpv(blk.tensor, n)
            for (mu, _) in blk.copies:
                term = (mu ** n) * c
                total = term if total is None else total + term
        if total is None:
            total = np.zeros((d,) * n, dtype=complex)
        return total


def canonical_form(t: MpsTensor, seed: int = 0, tol: float = 1e-9,
                   n_check: int = None) -> CanonicalFormResult:
    """Decompose into weighted, similarity-conjugated normal blocks.

    Periodic tensors are blocked (factor = lcm of the component periods,
    iterated) before the final decomposition; the result describes the
    blocked tensor.  Reassembly is verified against the input for N up to
    `n_check` (default 6, shrunk to respect the contraction size cap).
    """
    if not t.is_square:
        raise NumericalDegeneracy("canonical form needs a square tensor")
    rng = np.random.default_rng(seed)
    b = 1
    current = t
    for _ in range(MAX_BLOCK_ROUNDS):
        leaves = _split_leaves(current, rng, tol)
        periods = []
        for leaf in leaves:
            rho = spectral_radius(leaf)
            periods.append(unit_eigenvalue_count(leaf.scaled(1 / np.sqrt(rho))))
        p = lcm(periods) if periods else 1
        if p == 1:
            break
        b *= p
        current = block(t, b)
    else:
        raise NumericalDegeneracy("periodicity removal did not terminate")

    blocks = []  # mutable: [rep tensor, [(mu, V)...], lam]
    for leaf in leaves:
        rho = spectral_radius(leaf)
        scaled = leaf.scaled(1 / np.sqrt(rho))
        placed = False
        for entry in blocks:
            rep = entry[0]
            try:
                s, phase = gauge_between_normal(scaled, rep)
            except GaugeNotFound:
                continue
            # leaf = sqrt(rho)*phase * S rep S^-1  =>  V = S^-1
            entry[1].append((np.sqrt(rho) * phase, np.linalg.inv(s)))
            placed = True
            break
        if not placed:
            rep, m, lam = cfii_fix(scaled)
            ok, _ = is_normal(rep)
            if not ok:
                raise NumericalDegeneracy("leaf failed the normality check")
            blocks.append([rep, [(np.sqrt(rho) + 0j, m)], lam])

    result = CanonicalFormResult(
        tuple(CFBlock(rep, tuple(copies), lam) for rep, copies, lam in blocks),
        b,
        t,
    )
    _verify_reassembly(result, current, n_check)
    return result


def _verify_reassembly(result: CanonicalFormResult, blocked: MpsTensor, n_check):
    d = blocked.phys_dim
    if n_check is None:
        n_check = 6
        while d ** n_check * blocked.left_dim ** 2 > 2 ** 22 and n_check > 2:
            n_check -= 1
    for n in range(1, n_check + 1):
        want = contract_mpv(blocked, n)
        got = result.reassembled_coeffs(n)
        scale = max(np.linalg.norm(want), 1e-12)
        if np.linalg.norm(got - want) > 1e-7 * scale:
            raise NumericalDegeneracy(
                f"reassembled coefficients mismatch at N={n}",
                gap=float(np.linalg.norm(got - want) / scale),
            )


@dataclass(frozen=True)
class GaugeRelation:
    """How two canonical forms of the same MPV are related."""

    permutation: tuple      # copy q of t1 matches copy permutation[q] of t2
    x_blocks: tuple         # per copy of t1: invertible X with
    phases: tuple           # leaf2 = phase * X^-1 leaf1 X


def find_gauge_between(t1: MpsTensor, t2: MpsTensor, seed: int = 0,
                       n_check: int = None) -> GaugeRelation:
    """Match the canonical forms of two tensors generating the same MPV.

    Verifies coefficient equality first (NotEquivalent otherwise), then
    pairs up copies across the two forms by weight and transfer-spectrum
    fingerprint, extracting the per-block similarity from the mixed
    transfer map.
    """
    if n_check is None:
        n_check = 4
    for n in range(1, n_check + 1):
        c1 = contract_mpv(t1, n)
        c2 = contract_mpv(t2, n)
        scale = max(np.linalg.norm(c1), np.linalg.norm(c2), 1e-12)
        if np.linalg.norm(c1 - c2) > 1e-7 * scale:
            raise NotEquivalent(f"MPV coefficients differ at N={n}")
    cf1 = canonical_form(t1, seed=seed)
    cf2 = canonical_form(t2, seed=seed)
    copies1 = [(bi, mu, v, blk.tensor)
               for bi, blk in enumerate(cf1.blocks) for (mu, v) in blk.copies]
    copies2 = [(bi, mu, v, blk.tensor)
               for bi, blk in enumerate(cf2.blocks) for (mu, v) in blk.copies]
    if len(copies1) != len(copies2):
        raise NotEquivalent("different number of canonical-form copies")
    taken = [False] * len(copies2)
    perm = []
    xs = []
    phases = []
    for _, mu1, v1, rep1 in copies1:
        found = None
        for q2, (_, mu2, v2, rep2) in enumerate(copies2):
            if taken[q2] or abs(abs(mu1) - abs(mu2)) > 1e-7 * max(abs(mu1), 1e-12):
                continue
            if rep1.left_dim != rep2.left_dim:
                continue
            try:
                s, ph = gauge_between_normal(rep2, rep1)
            except GaugeNotFound:
                continue
            # leaf1 = mu1 V1^-1 rep1 V1, leaf2 = mu2 V2^-1 rep2 V2,
            # rep2 = ph * S rep1 S^-1  =>  leaf2 = phase * X^-1 leaf1 X
            # with X = V1^-1 S^-1 V2 ... assembled below
            x = np.linalg.inv(v1) @ np.linalg.inv(s) @ v2
            phase = (mu2 / mu1) * ph
            found = (q2, x, phase)
            break
        if found is None:
            raise GaugeNotFound("no matching canonical-form copy")
        q2, x, phase = found
        taken[q2] = True
        perm.append(q2)
        xs.append(x)
        phases.append(phase)
    return GaugeRelation(tuple(perm), tuple(xs), tuple(phases))


# ----------------------------------------------------------------------------
# pair decomposition (matter-gauge chains)


def _pair_products(a_ent, b_ent):
    prods = np.einsum("iab,jbc->ijac", a_ent, b_ent)
    return [prods[i, j] for i in range(prods.shape[0]) for j in range(prods.shape[1])]


def pair_decompose(p: TensorPair, seed: int = 0, tol: float = 1e-9,
                   n_check: int = 3):
    """Split an alternating pair into components normal on both AB and BA.

    Returns (components, blocking_factor) where each component is a tuple
    (A_chi, B_chi, mu_chi) of radius-1-normalized tensors with
    sum_chi mu_chi^N |psi_chi^N> equal to the (blocked) input.
    """
    rng = np.random.default_rng(seed)
    pair = p
    for round_ in range(4):
        comps = _pair_split(pair.A.entries, pair.B.entries, rng, tol)
        periodic = False
        for a_ent, b_ent in comps:
            comb = TensorPair(MpsTensor(a_ent), MpsTensor(b_ent)).combined
            rho = spectral_radius(comb)
            if rho > 1e-12 and unit_eigenvalue_count(comb.scaled(1 / np.sqrt(rho))) > 1:
                periodic = True
                break
        if not periodic:
            blocking = 3 ** round_
            break
        # blocking scheme: the new unit cell covers three of the old ones
        a3 = np.einsum("iab,jbc,kcd->ijkad", pair.A.entries, pair.B.entries,
                       pair.A.entries)
        b3 = np.einsum("iab,jbc,kcd->ijkad", pair.B.entries, pair.A.entries,
                       pair.B.entries)
        da = a3.shape[0] * a3.shape[1] * a3.shape[2]
        db = b3.shape[0] * b3.shape[1] * b3.shape[2]
        pair = TensorPair(
            MpsTensor(a3.reshape(da, a3.shape[3], a3.shape[4])),
            MpsTensor(b3.reshape(db, b3.shape[3], b3.shape[4])),
        )
    else:
        raise NumericalDegeneracy("pair periodicity removal did not terminate")

    out = []
    for a_ent, b_ent in comps:
        comb = TensorPair(MpsTensor(a_ent), MpsTensor(b_ent)).combined
        rho = spectral_radius(comb)
        if rho < 1e-12:
            continue
        c = rho ** 0.25
        out.append((MpsTensor(a_ent / c), MpsTensor(b_ent / c), np.sqrt(rho) + 0j))
    _verify_pair_reassembly(pair, out, n_check)
    return out, blocking


def _pair_split(a_ent, b_ent, rng, tol):
    """Alternate invariant-subspace splits on AB (left space of A) and BA."""
    prods = _pair_products(a_ent, b_ent)
    if max(np.linalg.norm(m) for m in prods) < 1e-12:
        return []  # all words vanish: the component contributes nothing
    sub = find_invariant_subspace(prods, rng, tol)
    if sub is not None:
        q = _orth_complement(sub)
        # A_s = P^dag A, B_s = B P
        out = []
        for basis in (sub, q):
            if basis.shape[1] == 0:
                continue
            a_s = np.einsum("ak,iab->ikb", basis.conj(), a_ent)
            b_s = np.einsum("iab,bk->iak", b_ent, basis)
            out.extend(_pair_split(a_s, b_s, rng, tol))
        return out
    sub = find_invariant_subspace(_pair_products(b_ent, a_ent), rng, tol)
    if sub is not None:
        q = _orth_complement(sub)
        out = []
        for basis in (sub, q):
            if basis.shape[1] == 0:
                continue
            a_s = np.einsum("iab,bk->iak", a_ent, basis)
            b_s = np.einsum("ak,iab->ikb", basis.conj(), b_ent)
            out.extend(_pair_split(a_s, b_s, rng, tol))
        return out
    return [(a_ent, b_ent)]


def _verify_pair_reassembly(pair: TensorPair, comps, n_check):
    for n in range(1, n_check + 1):
        want = contract_pair_mpv(pair, n)
        total = np.zeros_like(want)
        for a, bb, mu in comps:
            total = total + (mu ** n) * contract_pair_mpv(TensorPair(a, bb), n)
        scale = max(np.linalg.norm(want), 1e-12)
        if np.linalg.norm(total - want) > 1e-7 * scale:
            raise NumericalDegeneracy(
                f"pair reassembly mismatch at N={n}",
                gap=float(np.linalg.norm(total - want) / scale),
            )
