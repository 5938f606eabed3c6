"""Invariants and relative invariants of matrix groups on direct sums of blocks.

Graded pieces are indexed by block multidegrees. Inside a piece, monomials are
ordered as the Kronecker product of per-block monomial lists (first block
major), so a piece's coordinate vectors do not depend on which zero-degree
blocks surround it. This lets pieces be cached across modules that share blocks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from . import grp, linalg
from .ffield import PrimeField
from .groebner import IdealBasis, buchberger
from .grp import Character, MatrixRep, ModularCharacteristic, identity_matrix, mat_inv
from .mpoly import Polynomial, VariableContext, _compositions


class ModuleError(ValueError):
    pass


@dataclass(frozen=True)
class Block:
    """One summand: generator matrices (one per group generator) and a role.

    role is "W" for an irreducible of dimension >= 2, "U" for a character line,
    and "R" for a summand with no irreducibility claim (e.g. a permutation module).
    """

    name: str
    matrices: tuple
    role: str = "W"
    label: str = ""

    @property
    def size(self) -> int:
        return len(self.matrices[0])

    @property
    def key(self) -> tuple:
        return self.matrices


def make_block(name, matrices, p, role=None, label="") -> Block:
    mats = tuple(grp.to_matrix(m, p) for m in matrices)
    if role is None:
        role = "U" if len(mats[0]) == 1 else "W"
    return Block(name, mats, role, label or name)


def character_block(name: str, chi: Character, group: MatrixRep, label="") -> Block:
    mats = tuple(((chi(g),),) for g in group.gen_index)
    return Block(name, mats, "U", label or name)


class ModuleSpec:
    """Direct sum of blocks for a group given by a faithful MatrixRep."""

    def __init__(self, group: MatrixRep, blocks: Sequence[Block]):
        self.group = group
        self.blocks = list(blocks)
        self.field: PrimeField = group.field
        p = self.field.p
        ngen = len(group.generators)
        for b in self.blocks:
            if len(b.matrices) != ngen:
                raise grp.GeneratorCountMismatch(f"block {b.name} has {len(b.matrices)} matrices")
            if b.role == "U":
                if b.size != 1:
                    raise ModuleError(f"character line {b.name} must be 1-dimensional")
        # the map G -> GL(V) must be a homomorphism; also gives element matrices
        self.element_matrices = group.images(self.generator_matrices, p) if self.blocks else None

    @cached_property
    def ctx(self) -> VariableContext:
        return VariableContext(tuple((b.name, b.size) for b in self.blocks))

    @property
    def dim(self) -> int:
        return sum(b.size for b in self.blocks)

    @property
    def order(self) -> int:
        return self.group.order

    @cached_property
    def generator_matrices(self) -> list:
        return grp.direct_sum([b.matrices for b in self.blocks])

    @cached_property
    def rep(self) -> MatrixRep:
        """The image group acting on V."""
        return grp.generate(self.generator_matrices, self.field, names=self.group.names)

    def describe(self) -> str:
        return "+".join(b.label for b in self.blocks) or "0"

    def zero_polynomial(self) -> Polynomial:
        return Polynomial.zero(self.ctx, self.field)


# ------------------------------------------------------------------ action

def _linear_images(matrix, module: ModuleSpec) -> list[Polynomial]:
    """x_j -> sum_i matrix[j][i] x_i."""
    ctx, fld = module.ctx, module.field
    n = ctx.nvars
    out = []
    for j in range(n):
        terms = {}
        for i in range(n):
            c = matrix[j][i]
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        out.append(Polynomial(ctx, fld, terms))
    return out


def act(g: int, f: Polynomial, module: ModuleSpec) -> Polynomial:
    """g.f where g.x_j = sum_i psi(g^-1)_{ji} x_i; g is an element index of module.group."""
    if not module.blocks:
        return f
    ginv = module.group.inv(g)
    return f.substitute(_linear_images(module.element_matrices[ginv], module))


def reynolds(f: Polynomial, module: ModuleSpec) -> Polynomial:
    n = module.order
    p = module.field.p
    if n % p == 0:
        raise ModularCharacteristic(f"p = {p} divides |G| = {n}")
    if not module.blocks:
        return f
    total = Polynomial.zero(f.ctx, f.field)
    seen = {}
    for g in range(n):
        m = module.element_matrices[g]
        # equal matrices contribute equal terms
        seen[m] = seen.get(m, 0) + 1
    for m, mult in seen.items():
        total = total + f.substitute(_linear_images(m, module)).scale(mult)
    return total.scale(pow(n, p - 2, p))


# ------------------------------------------------------ piece machinery

_SYM: dict = {}
_BASIS: dict = {}
_GENS: dict = {}
_WTAB: dict = {}


def clear_caches():
    for c in (_SYM, _BASIS, _GENS, _WTAB):
        c.clear()


def _mon_index(s: int, d: int) -> dict:
    return {m: i for i, m in enumerate(_compositions(d, s))}


def sym_power(matrix, d: int, p: int) -> np.ndarray:
    """Matrix S with row m = coefficients of m(matrix . x), monomials in _compositions order."""
    key = (matrix, d, p)
    if key in _SYM:
        return _SYM[key]
    s = len(matrix)
    if d == 0:
        out = np.ones((1, 1), dtype=np.int64)
    else:
        prev = sym_power(matrix, d - 1, p)
        prev_idx = _mon_index(s, d - 1)
        cur_mons = _compositions(d, s)
        cur_idx = _mon_index(s, d)
        # up[i][k] = index of (monomial k of degree d-1) * x_i
        up = []
        for i in range(s):
            e = [0] * s
            e[i] = 1
            up.append(np.array([cur_idx[tuple(a + b for a, b in zip(m, e))]
                                for m in _compositions(d - 1, s)], dtype=np.int64))
        out = np.zeros((len(cur_mons), len(cur_mons)), dtype=np.int64)
        for r, m in enumerate(cur_mons):
            j = next(k for k, e in enumerate(m) if e)
            parent = list(m)
            parent[j] -= 1
            row_prev = prev[prev_idx[tuple(parent)]]
            row = out[r]
            for i in range(s):
                c = matrix[j][i]
                if c:
                    row[up[i]] = (row[up[i]] + c * row_prev) % p
    _SYM[key] = out
    return out


@dataclass(frozen=True)
class Piece:
    """A graded piece: blocks with positive degree, in module order."""

    blocks: tuple  # tuple of Block
    degrees: tuple

    @property
    def key(self):
        return tuple((b.key, d) for b, d in zip(self.blocks, self.degrees))

    @property
    def total(self) -> int:
        return sum(self.degrees)

    def monomials(self) -> list[tuple]:
        """Per-piece monomials (concatenated block exponents) in Kronecker order."""
        parts = [_compositions(d, b.size) for b, d in zip(self.blocks, self.degrees)]
        return [sum(ms, ()) for ms in itertools.product(*parts)]

    def size(self) -> int:
        n = 1
        for b, d in zip(self.blocks, self.degrees):
            n *= len(_compositions(d, b.size))
        return n


def _piece(blocks: Sequence[Block], multidegree: Sequence[int]) -> Piece:
    sel = [(b, d) for b, d in zip(blocks, multidegree) if d > 0]
    return Piece(tuple(b for b, _ in sel), tuple(d for _, d in sel))


def _weight_values(weight: Character | None, group: MatrixRep):
    if weight is None:
        return None
    vals = tuple(weight(g) for g in group.gen_index)
    return None if all(v == 1 for v in vals) else vals


def _basis_array(piece: Piece, p: int, weight_vals=None) -> np.ndarray:
    """Echelon basis (rows) of the invariants of weight weight_vals in this piece."""
    key = (piece.key, p, weight_vals)
    if key in _BASIS:
        return _BASIS[key]
    if not piece.blocks:
        out = np.ones((1, 1), dtype=np.int64) if weight_vals is None else np.zeros((0, 1), np.int64)
        _BASIS[key] = out
        return out
    ngen = len(piece.blocks[0].matrices)
    n = piece.size()
    if all(b.size == 1 for b in piece.blocks):
        # monomial in character lines: scalar action
        ok = True
        for k in range(ngen):
            v = 1
            for b, d in zip(piece.blocks, piece.degrees):
                v = v * pow(b.matrices[k][0][0], d, p) % p
            want = 1 if weight_vals is None else weight_vals[k]
            if v != want:
                ok = False
                break
        out = np.ones((1, 1), dtype=np.int64) if ok else np.zeros((0, 1), dtype=np.int64)
        _BASIS[key] = out
        return out
    big = [(b, d) for b, d in zip(piece.blocks, piece.degrees) if b.size > 1]
    if len(big) < len(piece.blocks):
        # character lines act by scalars: fold them into the weight
        w = []
        for k in range(ngen):
            c = 1
            for b, d in zip(piece.blocks, piece.degrees):
                if b.size == 1:
                    c = c * pow(b.matrices[k][0][0], d, p) % p
            want = 1 if weight_vals is None else weight_vals[k]
            w.append(want * pow(c, p - 2, p) % p)
        wv = None if all(x == 1 for x in w) else tuple(w)
        out = _basis_array(Piece(tuple(b for b, _ in big), tuple(d for _, d in big)), p, wv)
        _BASIS[key] = out
        return out
    conds = []
    for k in range(ngen):
        a = np.ones((1, 1), dtype=np.int64)
        for b, d in zip(piece.blocks, piece.degrees):
            a = np.kron(a, sym_power(b.matrices[k], d, p)) % p
        chi = 1 if weight_vals is None else weight_vals[k]
        a = (a - chi * np.eye(n, dtype=np.int64)) % p
        conds.append(a.T)
    ns = linalg.nullspace(np.vstack(conds), p)
    out = linalg.row_space_basis(ns, p) if ns.shape[0] else np.zeros((0, n), dtype=np.int64)
    _BASIS[key] = out
    return out


def _product_table(blocks: tuple, left: tuple, right: tuple) -> np.ndarray:
    """W[u, v] = index in piece(left+right) of monomial u (of left) times v (of right).

    left/right are degree tuples over `blocks` (zeros allowed).
    """
    key = (tuple(b.size for b in blocks), left, right)
    if key in _WTAB:
        return _WTAB[key]
    tot = tuple(a + b for a, b in zip(left, right))
    act_idx = [i for i, d in enumerate(tot) if d > 0]
    w = np.zeros((1, 1), dtype=np.int64)
    for i in act_idx:
        s = blocks[i].size
        lm = _compositions(left[i], s)
        rm = _compositions(right[i], s)
        ti = _mon_index(s, tot[i])
        tbl = np.array([[ti[tuple(x + y for x, y in zip(a, b))] for b in rm] for a in lm],
                       dtype=np.int64)
        nt = len(ti)
        w = (w[:, None, :, None] * nt + tbl[None, :, None, :]).reshape(
            w.shape[0] * tbl.shape[0], w.shape[1] * tbl.shape[1])
    _WTAB[key] = w
    return w


def _gens_array(piece: Piece, p: int, lower: Sequence[tuple]) -> np.ndarray:
    """New minimal generators (rows) in this piece.

    lower lists (sub-degrees over piece.blocks, generator rows) for every proper
    sub-multidegree that carries generators; products of these with the
    invariants of the complementary degree span the decomposables.
    """
    key = (piece.key, p)
    if key in _GENS:
        return _GENS[key]
    basis = _basis_array(piece, p)
    n = piece.size()
    if basis.shape[0] == 0 or not piece.blocks:
        out = np.zeros((0, n), dtype=np.int64)
        _GENS[key] = out
        return out
    blocks, degs = piece.blocks, piece.degrees
    prods = []
    for sub, g in lower:
        rest = tuple(a - b for a, b in zip(degs, sub))
        h = _basis_array(_piece(blocks, rest), p)
        if h.shape[0] == 0:
            continue
        w = _product_table(blocks, sub, rest)
        for row in g:
            acc = np.zeros((h.shape[0], n), dtype=np.int64)
            for u in np.nonzero(row)[0]:
                acc[:, w[u]] = (acc[:, w[u]] + int(row[u]) * h) % p
            prods.append(acc)
    if prods:
        span = np.vstack(prods)
        if linalg.rank(span, p) == basis.shape[0]:
            out = np.zeros((0, n), dtype=np.int64)
        else:
            out = basis[linalg.extend_basis(span, basis, p)]
    else:
        out = basis.copy()
    _GENS[key] = out
    return out


def _to_polys(arr: np.ndarray, piece: Piece, module: ModuleSpec, multidegree) -> list[Polynomial]:
    mons = piece.monomials()
    # positions of piece variables inside the module context
    pos = []
    for r, d in zip(module.ctx.block_ranges(), multidegree):
        if d > 0:
            pos.extend(r)
    nv = module.ctx.nvars
    out = []
    for row in arr:
        terms = {}
        for k in np.nonzero(row)[0]:
            e = [0] * nv
            for i, x in zip(pos, mons[k]):
                e[i] = x
            terms[tuple(e)] = int(row[k])
        out.append(Polynomial(module.ctx, module.field, terms))
    return out


# ------------------------------------------------------------ public API

@dataclass
class GradedInvariantBasis:
    degree: object  # int or multidegree tuple
    basis: list
    weight: Character | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)


def _check_nonmodular(module: ModuleSpec):
    p = module.field.p
    if module.order % p == 0:
        raise ModularCharacteristic(f"p = {p} divides |G| = {module.order}")


def invariant_basis(module: ModuleSpec, degree, weight: Character | None = None) -> GradedInvariantBasis:
    """Basis of {f of the given degree or multidegree : f(psi(g)x) = chi(g) f(x)}."""
    _check_nonmodular(module)
    p = module.field.p
    wv = _weight_values(weight, module.group)
    if isinstance(degree, int):
        mds = _multidegrees(module, degree)
    else:
        mds = [tuple(degree)]
    polys = []
    for md in mds:
        pc = _piece(module.blocks, md)
        polys.extend(_to_polys(_basis_array(pc, p, wv), pc, module, md))
    return GradedInvariantBasis(degree, polys, weight)


def _multidegrees(module: ModuleSpec, d: int) -> list[tuple]:
    sizes = [b.size for b in module.blocks]
    return [c for c in _compositions(d, len(sizes))] if sizes else ([()] if d == 0 else [])


def invariant_dims(module: ModuleSpec, multidegree, weight=None) -> int:
    pc = _piece(module.blocks, multidegree)
    return _basis_array(pc, module.field.p, _weight_values(weight, module.group)).shape[0]


@dataclass
class GeneratingSet:
    generators: list  # (Polynomial, multidegree)
    cap: int
    # per-block multidegree bound for non-primary generators, once certified
    secondary_bound: tuple | None = None

    @property
    def degrees(self) -> list[int]:
        return sorted(sum(md) for _, md in self.generators)

    @property
    def beta(self) -> int:
        return max(self.degrees, default=0)

    def polynomials(self) -> list[Polynomial]:
        return [f for f, _ in self.generators]


def _is_nullcone_zero(polys: Sequence[Polynomial], var_idx: Sequence[int]) -> bool:
    """V(polys) = {0} on the given coordinates: each variable has a pure power among the leading terms."""
    gb = buchberger(IdealBasis(list(polys)))
    pure = set()
    for m in gb.leading_monomials():
        nz = [i for i, e in enumerate(m) if e]
        if len(nz) == 1:
            pure.add(nz[0])
    return all(i in pure for i in var_idx)


def _block_bound(single: Sequence[tuple], size: int, var_idx: Sequence[int], max_tries: int = 200):
    """Least sum(d_i - 1) over homogeneous systems of parameters made of the given single-block invariants.

    For a non-modular group the invariant ring is Cohen-Macaulay, and the multigraded Molien
    series has degree at most -dim(B) in the variable of block B. So once every block has such
    a system, each secondary invariant has block-B degree at most this sum.
    """
    combos = sorted(itertools.combinations(range(len(single)), size),
                    key=lambda c: sum(single[i][1] - 1 for i in c))
    for c in combos[:max_tries]:
        if _is_nullcone_zero([single[i][0] for i in c], var_idx):
            return sum(single[i][1] - 1 for i in c)
    return None


def minimal_generators(module: ModuleSpec, cap: int | None = None, early_stop: bool = True) -> GeneratingSet:
    """Minimal homogeneous generators, multidegree by multidegree up to |G| (or cap).

    The scan stops early once every block has a system of parameters among the single-block
    generators: later pieces are only visited below the resulting secondary bound.
    """
    _check_nonmodular(module)
    cap = module.order if cap is None else cap
    p = module.field.p
    if module.blocks and all(b.role == "U" for b in module.blocks):
        return _monomial_generators(module, cap)
    nb = len(module.blocks)
    offs = list(itertools.accumulate([0] + [b.size for b in module.blocks]))
    single: list[list] = [[] for _ in range(nb)]  # (poly, degree) supported on one block
    bound: list = [None] * nb
    gens = []
    found: list[tuple] = []  # (multidegree, generator rows), in graded order
    for d in range(1, cap + 1):
        done = all(c is not None for c in bound)
        if done and d > sum(bound):
            break
        for md in _multidegrees(module, d):
            if done and any(e > c for e, c in zip(md, bound)):
                continue
            pc = _piece(module.blocks, md)
            if _basis_array(pc, p).shape[0] == 0:
                continue
            act = [i for i, e in enumerate(md) if e > 0]
            lower = [(tuple(sub[i] for i in act), rows) for sub, rows in found
                     if all(a <= b for a, b in zip(sub, md))]
            arr = _gens_array(pc, p, lower)
            if arr.shape[0]:
                found.append((md, arr))
                polys = _to_polys(arr, pc, module, md)
                gens.extend((f, md) for f in polys)
                if len(act) == 1:
                    single[act[0]].extend((f, d) for f in polys)
        if early_stop and not done:
            for i, b in enumerate(module.blocks):
                if bound[i] is None and len(single[i]) >= b.size:
                    bound[i] = _block_bound(single[i], b.size, range(offs[i], offs[i + 1]))
    sb = tuple(bound) if all(c is not None for c in bound) else None
    return GeneratingSet(gens, cap, sb)


def _monomial_generators(module: ModuleSpec, cap: int) -> GeneratingSet:
    """Character lines only: generators are the invariant monomials with no invariant proper divisor."""
    p = module.field.p
    ngen = len(module.group.generators)
    vals = [[b.matrices[k][0][0] for k in range(ngen)] for b in module.blocks]
    atoms: list[tuple] = []
    gens = []
    for d in range(1, cap + 1):
        for md in _multidegrees(module, d):
            if any(all(a <= m for a, m in zip(at, md)) for at in atoms):
                continue
            if all(_prod_pow([v[k] for v in vals], md, p) == 1 for k in range(ngen)):
                atoms.append(md)
                gens.append((Polynomial.monomial(module.ctx, module.field, md), md))
    return GeneratingSet(gens, cap)


def _prod_pow(values, exps, p) -> int:
    r = 1
    for v, e in zip(values, exps):
        if e:
            r = r * pow(v, e, p) % p
    return r


def beta(module: ModuleSpec, cap: int | None = None) -> int:
    return minimal_generators(module, cap).beta


def central_sign(module: ModuleSpec) -> int | None:
    """Index of a central group element acting by -1 on V, if any."""
    p = module.field.p
    n = module.dim
    minus = tuple(tuple((p - 1) if i == j else 0 for j in range(n)) for i in range(n))
    z = grp.center(module.group)
    for g in z.elements:
        if module.element_matrices[g] == minus:
            return g
    return None


@dataclass
class BetaRow:
    module: str
    beta: int
    degrees: list
    parity_even: bool  # a central element acts by -1, so all invariants have even degree
    parity_element: str | None = None


def beta_of_sum_families(modules: Sequence[ModuleSpec], cap: int | None = None) -> list[BetaRow]:
    rows = []
    for m in modules:
        gs = minimal_generators(m, cap)
        z = central_sign(m)
        rows.append(BetaRow(m.describe(), gs.beta, gs.degrees, z is not None,
                            None if z is None else m.group.word_of(z)))
    return rows


def hilbert_ideal(module: ModuleSpec, generators: GeneratingSet | Sequence[Polynomial]) -> IdealBasis:
    polys = generators.polynomials() if isinstance(generators, GeneratingSet) else list(generators)
    return IdealBasis([f for f in polys if f.degree() > 0])


def _commutant_dim(mats_a: Sequence, mats_b: Sequence, p: int) -> int:
    """dim {X : X A_g = B_g X for all g}, X of shape (dim B, dim A)."""
    na, nb = len(mats_a[0]), len(mats_b[0])
    eqs = []
    for a, b in zip(mats_a, mats_b):
        a = np.array(a, dtype=np.int64)
        b = np.array(b, dtype=np.int64)
        # vec(X A - B X) with row-major vec: (I_nb kron A^T) - (B kron I_na)
        eqs.append((np.kron(np.eye(nb, dtype=np.int64), a.T) - np.kron(b, np.eye(na, dtype=np.int64))) % p)
    return linalg.nullspace(np.vstack(eqs), p).shape[0]


def is_irreducible(block: Block | Sequence, p: int) -> bool:
    """Schur test: the commutant is 1-dimensional."""
    mats = block.matrices if isinstance(block, Block) else block
    return _commutant_dim(mats, mats, p) == 1


def intertwiner_dim(a: Block, b: Block, p: int) -> int:
    return _commutant_dim(a.matrices, b.matrices, p)


def twisted(block: Block, group: MatrixRep, automorphism: Sequence[int], name=None) -> Block:
    """The block composed with an automorphism: generator g maps to psi(alpha(g))."""
    ims = group.images(block.matrices)
    mats = tuple(ims[automorphism[g]] for g in group.gen_index)
    return Block(name or block.name, mats, block.role, block.label)
