"""Projective unitary representations of finite groups.

Multipliers, validation, conjugation and tensor products, irrep
decomposition via twirl projectors, Clebsch-Gordan tables, and the
built-in irrep catalogs (Z_n, dihedral, S3, Q8).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    BadMultiplier,
    GroupMismatch,
    IncompleteCatalog,
    MultiplierMismatch,
    NonUnitary,
    NotARep,
)
from .groups import (
    FiniteGroup,
    cyclic_group,
    dihedral_group,
    quaternion_group,
    symmetric_group_s3,
)

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class Multiplier:
    """A 2-cocycle gamma(g,h) of unit-modulus phases."""

    group: FiniteGroup
    values: np.ndarray  # (n, n) complex

    def validate(self, tol=DEFAULT_TOL):
        g = self.group
        v = self.values
        n = g.order
        if np.abs(np.abs(v) - 1).max() > tol:
            raise BadMultiplier("multiplier values must have unit modulus")
        e = g.identity
        if np.abs(v[e, :] - 1).max() > tol or np.abs(v[:, e] - 1).max() > tol:
            raise BadMultiplier("multiplier not normalized at the identity")
        t = g.mult_table
        # gamma(g,h) gamma(gh,f) == gamma(g,hf) gamma(h,f)
        lhs = v[:, :, None] * v[t[:, :, None], np.arange(n)[None, None, :]]
        rhs = v[np.arange(n)[:, None, None], t[None, :, :]] * v[None, :, :]
        if np.abs(lhs - rhs).max() > tol:
            raise BadMultiplier("cocycle condition violated")
        return self

    def is_trivial(self, tol=DEFAULT_TOL) -> bool:
        return np.abs(self.values - 1).max() <= tol

    def inverse(self) -> "Multiplier":
        return Multiplier(self.group, np.conj(self.values))

    def product(self, other: "Multiplier") -> "Multiplier":
        if other.group != self.group:
            raise GroupMismatch("multipliers over different groups")
        return Multiplier(self.group, self.values * other.values)

    def close_to(self, other: "Multiplier", tol=1e-8) -> bool:
        return other.group == self.group and np.abs(self.values - other.values).max() <= tol


def trivial_multiplier(group: FiniteGroup) -> Multiplier:
    n = group.order
    return Multiplier(group, np.ones((n, n), dtype=complex))


@dataclass(frozen=True)
class Rep:
    """A (possibly reducible) projective unitary representation."""

    group: FiniteGroup
    matrices: np.ndarray  # (order, dim, dim) complex
    multiplier: Multiplier

    @property
    def dim(self) -> int:
        return self.matrices.shape[1]

    def matrix(self, g: int) -> np.ndarray:
        return self.matrices[g]

    def character(self) -> np.ndarray:
        return np.einsum("gii->g", self.matrices)


@dataclass(frozen=True)
class Irrep(Rep):
    label: str = ""


def check_projective_rep(matrices, group: FiniteGroup, tol=DEFAULT_TOL) -> Multiplier:
    """Extract and validate the multiplier of a candidate projective rep.

    gamma(g,h) is read off from Tr(U(gh)^dag U(g)U(h)) / dim and the
    residual ||U(g)U(h) - gamma U(gh)|| is required to vanish.
    """
    mats = np.asarray(matrices, dtype=complex)
    n = group.order
    if mats.shape[0] != n or mats.shape[1] != mats.shape[2]:
        raise NotARep("expected one square matrix per group element")
    d = mats.shape[1]
    eye = np.eye(d)
    for g in range(n):
        if np.linalg.norm(mats[g].conj().T @ mats[g] - eye) > tol * d:
            raise NonUnitary(f"matrix for element {group.name(g)} is not unitary")
    gamma = np.empty((n, n), dtype=complex)
    for g in range(n):
        for h in range(n):
            gh = group.multiply(g, h)
            prod = mats[g] @ mats[h]
            phase = np.trace(mats[gh].conj().T @ prod) / d
            if abs(abs(phase) - 1) > 1e-6:
                raise NotARep(
                    f"U({group.name(g)})U({group.name(h)}) not proportional to "
                    f"U({group.name(gh)})"
                )
            phase /= abs(phase)
            if np.linalg.norm(prod - phase * mats[gh]) > tol * d:
                raise NotARep(
                    f"U({group.name(g)})U({group.name(h)}) not proportional to "
                    f"U({group.name(gh)})"
                )
            gamma[g, h] = phase
    mult = Multiplier(group, gamma)
    mult.validate(tol=1e-8)
    return mult


def make_rep(group: FiniteGroup, matrices, tol=DEFAULT_TOL) -> Rep:
    mats = np.asarray(matrices, dtype=complex)
    mult = check_projective_rep(mats, group, tol=tol)
    return Rep(group, mats, mult)


def make_irrep(group: FiniteGroup, matrices, label: str, tol=DEFAULT_TOL) -> Irrep:
    mats = np.asarray(matrices, dtype=complex)
    mult = check_projective_rep(mats, group, tol=tol)
    return Irrep(group, mats, mult, label)


def rep_from_generators(group: FiniteGroup, words, gen_mats, label=None):
    """Build rep matrices from generator images.

    `words` maps each element index to a sequence of generator indices whose
    product (left to right) is that element.
    """
    d = gen_mats[0].shape[0]
    mats = np.empty((group.order, d, d), dtype=complex)
    for g, word in enumerate(words):
        m = np.eye(d, dtype=complex)
        for w in word:
            m = m @ gen_mats[w]
        mats[g] = m
    if label is None:
        return make_rep(group, mats)
    return make_irrep(group, mats, label)


def conjugate_rep(rep: Rep) -> Rep:
    """Entrywise complex conjugate; multiplier becomes its inverse."""
    out = Rep(rep.group, np.conj(rep.matrices), rep.multiplier.inverse())
    if isinstance(rep, Irrep):
        out = Irrep(rep.group, np.conj(rep.matrices), rep.multiplier.inverse(),
                    f"conj({rep.label})")
    return out


def tensor_product_rep(rep1: Rep, rep2: Rep) -> Rep:
    if rep1.group != rep2.group:
        raise GroupMismatch("representations over different groups")
    mats = np.einsum("gij,gkl->gikjl", rep1.matrices, rep2.matrices)
    d = rep1.dim * rep2.dim
    mats = mats.reshape(rep1.group.order, d, d)
    return Rep(rep1.group, mats, rep1.multiplier.product(rep2.multiplier))


def intertwiner_space(rep1: Rep, rep2: Rep, tol=1e-8):
    """Orthonormal basis of {T : rep2(g) T = T rep1(g) for all g}.

    Computed as the eigenvalue-1 space of the twirl projector
    T -> (1/|G|) sum_g rep2(g) T rep1(g)^dag, which is well defined exactly
    when the multipliers agree.
    """
    if rep1.group != rep2.group:
        raise GroupMismatch("representations over different groups")
    if not rep1.multiplier.close_to(rep2.multiplier):
        raise MultiplierMismatch("intertwiners require equal multipliers")
    n = rep1.group.order
    d1, d2 = rep1.dim, rep2.dim
    # row-major vec: vec(U T W^dag) = kron(U, conj(W)) vec(T)
    twirl = np.zeros((d2 * d1, d2 * d1), dtype=complex)
    for g in range(n):
        twirl += np.kron(rep2.matrices[g], np.conj(rep1.matrices[g]))
    twirl /= n
    # the twirl is a Hermitian projector; its eigenvalue-1 space is the answer
    evals, evecs = np.linalg.eigh(twirl)
    keep = np.nonzero(np.abs(evals - 1) < tol)[0]
    return [evecs[:, k].reshape(d2, d1) for k in keep]


@dataclass(frozen=True)
class RepDecomposition:
    blocks: tuple          # ((label, multiplicity), ...) in catalog order
    basis_change: np.ndarray  # unitary, columns grouped (irrep, copy, row)
    irreps: tuple          # the catalog Irrep object per block

    def block_slices(self):
        """Yield (label, copy, slice) for each irrep copy in column order."""
        col = 0
        for (label, mult), irr in zip(self.blocks, self.irreps):
            for q in range(mult):
                yield label, q, slice(col, col + irr.dim)
                col += irr.dim


def _copy_sort_key(t):
    """Order multiplicity copies by the first row supporting them."""
    flat = np.abs(t.reshape(-1))
    nz = np.nonzero(flat > 1e-8 * flat.max())[0]
    return int(nz[0]) if nz.size else 0


def decompose_rep(rep: Rep, catalog, tol=1e-8) -> RepDecomposition:
    """Decompose `rep` into catalog irreps with a unitary basis change.

    For each catalog irrep the intertwiner space {T : rep(g) T = T D^j(g)}
    is computed; its dimension is the multiplicity, and its elements, once
    orthonormalized in the Schur inner product, provide the isometries
    embedding each copy.
    """
    blocks = []
    irreps = []
    columns = []
    total = 0
    for irr in catalog:
        if irr.group != rep.group:
            raise GroupMismatch("catalog irrep over a different group")
        if not irr.multiplier.close_to(rep.multiplier):
            continue
        maps = intertwiner_space(irr, rep, tol=tol)
        m = len(maps)
        if m == 0:
            continue
        # Schur inner product <T,S> = Tr(T^dag S)/dim is positive definite here;
        # orthonormalize so that each isometry satisfies T^dag T = identity.
        gram = np.array(
            [[np.trace(a.conj().T @ b) / irr.dim for b in maps] for a in maps]
        )
        w = np.linalg.inv(np.linalg.cholesky(gram)).conj().T
        maps = [sum(w[a, b] * maps[a] for a in range(m)) for b in range(m)]
        maps.sort(key=_copy_sort_key)
        blocks.append((irr.label, m))
        irreps.append(irr)
        for t in maps:
            columns.append(t)
        total += m * irr.dim
    if total != rep.dim:
        raise IncompleteCatalog(
            f"catalog accounts for dimension {total} of {rep.dim}"
        )
    basis = np.hstack(columns)
    # fix the free phase of each copy: first non-negligible entry real positive
    col = 0
    for irr, (_, m) in zip(irreps, blocks):
        for _ in range(m):
            blk = basis[:, col:col + irr.dim]
            flat = blk.reshape(-1)
            nz = np.nonzero(np.abs(flat) > 1e-8 * np.abs(flat).max())[0]
            phase = flat[nz[0]] / abs(flat[nz[0]])
            basis[:, col:col + irr.dim] = blk / phase
            col += irr.dim
    dec = RepDecomposition(tuple(blocks), basis, tuple(irreps))
    _check_decomposition(rep, dec, tol)
    return dec


def _check_decomposition(rep: Rep, dec: RepDecomposition, tol):
    u = dec.basis_change
    d = rep.dim
    if np.linalg.norm(u.conj().T @ u - np.eye(d)) > 1e-7 * d:
        raise IncompleteCatalog("decomposition basis change is not unitary")
    for g in range(rep.group.order):
        rot = u.conj().T @ rep.matrices[g] @ u
        expect = np.zeros_like(rot)
        col = 0
        for (label, m), irr in zip(dec.blocks, dec.irreps):
            for _ in range(m):
                expect[col:col + irr.dim, col:col + irr.dim] = irr.matrices[g]
                col += irr.dim
        if np.linalg.norm(rot - expect) > 1e-6 * d:
            raise IncompleteCatalog(
                f"off-block residual too large at element {rep.group.name(g)}"
            )


@dataclass(frozen=True)
class CGTable:
    """Clebsch-Gordan change of basis for a product of two irreps.

    `basis_change` is the unitary U with U^dag (D^j x D^l)(g) U block
    diagonal; its column (J, copy, M) holds the coefficients
    <j,m; l,n | J,copy,M> at row m*dim(l)+n.
    """

    left: Irrep
    right: Irrep
    decomposition: RepDecomposition

    @property
    def basis_change(self) -> np.ndarray:
        return self.decomposition.basis_change

    def coeff_block(self, label: str, copy: int = 0) -> np.ndarray:
        """Coefficients as an array (M, m, n) for one (J, copy) block."""
        for lab, q, sl in self.decomposition.block_slices():
            if lab == label and q == copy:
                blk = self.basis_change[:, sl]
                return blk.T.reshape(-1, self.left.dim, self.right.dim)
        raise KeyError((label, copy))

    def labels(self):
        return [lab for lab, _ in self.decomposition.blocks]


def clebsch_gordan(j: Irrep, l: Irrep, catalog, tol=1e-8) -> CGTable:
    """CG table for j x l against a catalog covering multiplier class gamma*gamma'."""
    prod = tensor_product_rep(j, l)
    dec = decompose_rep(prod, catalog, tol=tol)
    return CGTable(j, l, dec)


# ----------------------------------------------------------------------------
# built-in catalogs


def _phase(x):
    return np.exp(2j * np.pi * x)


def cyclic_catalog(n: int):
    """All irreps of Z_n (one-dimensional characters)."""
    group = cyclic_group(n)
    irreps = []
    for k in range(n):
        mats = _phase(k * np.arange(n) / n).reshape(n, 1, 1)
        irreps.append(make_irrep(group, mats, f"chi{k}"))
    return group, irreps


def dihedral_catalog(n: int):
    """All irreps of the dihedral group of order 2n."""
    group = dihedral_group(n)
    ab = [(a, b) for b in range(2) for a in range(n)]
    irreps = []

    def one_dim(eps, delta, label):
        mats = np.array([[[complex(eps) ** a * complex(delta) ** b]] for a, b in ab])
        irreps.append(make_irrep(group, mats, label))

    one_dim(1, 1, "triv")
    one_dim(1, -1, "sign")
    if n % 2 == 0:
        one_dim(-1, 1, "rot-sign")
        one_dim(-1, -1, "rot-ref-sign")
    s = np.array([[0, 1], [1, 0]], dtype=complex)
    kmax = (n - 1) // 2 if n % 2 else n // 2 - 1
    for k in range(1, kmax + 1):
        r = np.diag([_phase(k / n), _phase(-k / n)])
        mats = np.array([np.linalg.matrix_power(r, a) @ (s if b else np.eye(2)) for a, b in ab])
        irreps.append(make_irrep(group, mats, f"rho{k}"))
    return group, irreps


def s3_catalog():
    group = symmetric_group_s3()
    _, irreps = dihedral_catalog(3)
    # rebuild over the S3-labelled group object (same table)
    irreps = [Irrep(group, irr.matrices, trivial_multiplier(group), irr.label)
              for irr in irreps]
    return group, irreps


def quaternion_catalog():
    """Q8: four one-dimensional irreps plus the two-dimensional one."""
    group = quaternion_group()
    names = group.element_names
    irreps = []
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    two = {"1": np.eye(2, dtype=complex), "i": 1j * sz, "j": 1j * sy, "k": 1j * sx}
    for epsi, epsj, label in [(1, 1, "triv"), (1, -1, "chi-j"), (-1, 1, "chi-i"),
                              (-1, -1, "chi-k")]:
        mats = []
        for nm in names:
            axis = nm.lstrip("-")
            val = {"1": 1, "i": epsi, "j": epsj, "k": epsi * epsj}[axis]
            mats.append([[complex(val)]])
        irreps.append(make_irrep(group, np.array(mats), label))
    mats2 = []
    for nm in names:
        sign = -1 if nm.startswith("-") else 1
        mats2.append(sign * two[nm.lstrip("-")])
    irreps.append(make_irrep(group, np.array(mats2), "spin"))
    return group, irreps


@lru_cache(maxsize=None)
def builtin_catalog(name: str):
    """Return (group, irreps) for a built-in catalog name.

    Names: 'z1'..'z12' (cyclic), 'd4'..'d12' even (dihedral by order),
    's3', 'q8'.
    """
    name = name.lower()
    if name.startswith("z"):
        n = int(name[1:])
        if not 1 <= n <= 12:
            raise KeyError(name)
        return cyclic_catalog(n)
    if name.startswith("d"):
        order = int(name[1:])
        if order % 2 or not 4 <= order <= 12:
            raise KeyError(name)
        return dihedral_catalog(order // 2)
    if name == "s3":
        return s3_catalog()
    if name == "q8":
        return quaternion_catalog()
    raise KeyError(name)
