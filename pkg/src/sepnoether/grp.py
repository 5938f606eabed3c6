"""Finite matrix groups over F_p: closure, orbits, subgroups, mu(G), characters, automorphisms."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .ffield import FieldElement, PrimeField, prime_factors
from . import linalg

Matrix = tuple  # tuple of row tuples, entries residues mod p


class GroupError(ValueError):
    pass


class NotInvertible(GroupError):
    pass


class ClosureCapExceeded(GroupError):
    pass


class ModularCharacteristic(GroupError):
    """The characteristic divides the group order."""


class GeneratorCountMismatch(GroupError):
    pass


class CapExceeded(GroupError):
    pass


class NotNormal(GroupError):
    pass


class NotAHomomorphism(GroupError):
    pass


def to_matrix(rows, p: int) -> Matrix:
    return tuple(tuple(int(x) % p for x in r) for r in rows)


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix, p: int) -> Matrix:
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt) for row in a)


def mat_vec(a: Matrix, v: Sequence[int], p: int) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) % p for row in a)


def mat_inv(a: Matrix, p: int) -> Matrix:
    try:
        inv = linalg.inverse(np.array(a, dtype=np.int64), p)
    except ZeroDivisionError as e:
        raise NotInvertible("matrix is singular") from e
    return to_matrix(inv.tolist(), p)


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    n = sum(len(b) for b in blocks)
    rows = []
    off = 0
    for b in blocks:
        k = len(b)
        for r in b:
            rows.append((0,) * off + tuple(r) + (0,) * (n - off - k))
        off += k
    return tuple(rows)


@dataclass(frozen=True)
class GroupElement:
    matrix: Matrix
    word: tuple  # generator indices, left to right

    def __repr__(self):
        return "e" if not self.word else "*".join(f"g{i}" for i in self.word)


class MatrixRep:
    """A finite matrix group with every element enumerated.

    Elements are ordered by BFS layer from the identity (right multiplication by
    generators) and lexicographically by matrix entries inside a layer.
    """

    def __init__(self, generators: Sequence[Matrix], field: PrimeField, names=None,
                 cap: int = 100_000, allow_modular: bool = False):
        p = field.p
        gens = [to_matrix(g, p) for g in generators]
        if not gens:
            raise GroupError("need at least one generator")
        n = len(gens[0])
        if any(len(g) != n or any(len(r) != n for r in g) for g in gens):
            raise GroupError("generators must be square matrices of one size")
        for g in gens:
            mat_inv(g, p)
        self.field = field
        self.dim = n
        self.generators = gens
        self.names = list(names) if names else [f"g{i}" for i in range(len(gens))]
        ident = identity_matrix(n)
        words = {ident: ()}
        layer = [ident]
        order = [ident]
        while layer:
            nxt = {}
            for m in layer:
                w = words[m]
                for k, g in enumerate(gens):
                    prod = mat_mul(m, g, p)
                    if prod not in words and prod not in nxt:
                        nxt[prod] = w + (k,)
            if len(words) + len(nxt) > cap:
                raise ClosureCapExceeded(f"group exceeds {cap} elements")
            layer = sorted(nxt)
            for m in layer:
                words[m] = nxt[m]
            order.extend(layer)
        self.elements: list[Matrix] = order
        self.words: list[tuple] = [words[m] for m in order]
        self.index = {m: i for i, m in enumerate(order)}
        if not allow_modular and len(order) % p == 0:
            raise ModularCharacteristic(f"p = {p} divides |G| = {len(order)}")

    # ---------------------------------------------------------------- basics
    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def element(self, i: int) -> GroupElement:
        return GroupElement(self.elements[i], self.words[i])

    @property
    def identity(self) -> int:
        return 0

    @cached_property
    def gen_index(self) -> list[int]:
        return [self.index[g] for g in self.generators]

    @cached_property
    def table(self) -> np.ndarray:
        """table[i, j] = index of elements[i] * elements[j]."""
        n = self.order
        p = self.field.p
        t = np.zeros((n, n), dtype=np.int32)
        # right multiplication by generators, then extend along words
        right = [[self.index[mat_mul(m, g, p)] for m in self.elements] for g in self.generators]
        for j in range(n):
            col = np.arange(n)
            for k in self.words[j]:
                col = np.array(right[k])[col]
            t[:, j] = col
        return t

    @cached_property
    def inverses(self) -> np.ndarray:
        t = self.table
        return np.array([int(np.nonzero(t[i] == 0)[0][0]) for i in range(self.order)])

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def inv(self, i: int) -> int:
        return int(self.inverses[i])

    def element_order(self, i: int) -> int:
        k, j = 1, i
        while j != 0:
            j = self.mul(j, i)
            k += 1
        return k

    def power(self, i: int, k: int) -> int:
        r = 0
        for _ in range(k % self.element_order(i)):
            r = self.mul(r, i)
        return r

    def word_of(self, i: int) -> str:
        return "*".join(self.names[k] for k in self.words[i]) or "1"

    def find(self, matrix) -> int:
        return self.index[to_matrix(matrix, self.field.p)]

    # ------------------------------------------------------ homomorphisms
    def images(self, gen_images: Sequence[Matrix], p: int | None = None) -> list[Matrix]:
        """Extend generator images to every element, checking that a homomorphism results."""
        if len(gen_images) != len(self.generators):
            raise GeneratorCountMismatch("one image per generator required")
        p = p or self.field.p
        ims = [to_matrix(g, p) for g in gen_images]
        n = len(ims[0])
        out: list = [None] * self.order
        out[0] = identity_matrix(n)
        for i in range(1, self.order):
            w = self.words[i]
            parent = self.index_of_word(w[:-1])
            out[i] = mat_mul(out[parent], ims[w[-1]], p)
        gi = self.gen_index
        t = self.table
        for i in range(self.order):
            for k, g in enumerate(gi):
                if mat_mul(out[i], ims[k], p) != out[int(t[i, g])]:
                    raise NotAHomomorphism("generator images violate a relation")
        return out

    def index_of_word(self, w: tuple) -> int:
        i = 0
        gi = self.gen_index
        for k in w:
            i = int(self.table[i, gi[k]])
        return i

    def scalar_images(self, gen_values: Sequence[int]) -> list[int] | None:
        """Extend generator values to a map G -> F_p^*; None if it is not a homomorphism."""
        p = self.field.p
        vals = [0] * self.order
        vals[0] = 1
        for i in range(1, self.order):
            w = self.words[i]
            vals[i] = vals[self.index_of_word(w[:-1])] * gen_values[w[-1]] % p
        t = self.table
        for i in range(self.order):
            for k, g in enumerate(self.gen_index):
                if vals[i] * gen_values[k] % p != vals[int(t[i, g])]:
                    return None
        return vals

    # ----------------------------------------------------------- actions
    def act(self, i: int, v: Sequence[int]) -> tuple:
        return mat_vec(self.elements[i], [int(x) for x in v], self.field.p)


def generate(generators: Sequence, field: PrimeField, names=None, cap: int = 100_000,
             allow_modular: bool = False) -> MatrixRep:
    """Enumerate the matrix group generated by the given invertible matrices."""
    return MatrixRep(generators, field, names=names, cap=cap, allow_modular=allow_modular)


def direct_sum(block_generators: Sequence[Sequence[Matrix]]) -> list[Matrix]:
    """Block-diagonal generator list from per-block generator lists (i-th entries correspond)."""
    counts = {len(b) for b in block_generators}
    if len(counts) != 1:
        raise GeneratorCountMismatch("all blocks need the same number of generators")
    k = counts.pop()
    return [block_diag([b[i] for b in block_generators]) for i in range(k)]


# ----------------------------------------------------------------- orbits

def orbit(rep: MatrixRep, v: Sequence[int]) -> set:
    p = rep.field.p
    v = tuple(int(x) % p for x in v)
    return {mat_vec(m, v, p) for m in rep.elements}


def same_orbit(rep: MatrixRep, v, w):
    """(True, element index g with g.v = w) or (False, None)."""
    p = rep.field.p
    v = tuple(int(x) % p for x in v)
    w = tuple(int(x) % p for x in w)
    for i, m in enumerate(rep.elements):
        if mat_vec(m, v, p) == w:
            return True, i
    return False, None


def stabilizer(rep: MatrixRep, v) -> list[int]:
    p = rep.field.p
    v = tuple(int(x) % p for x in v)
    return [i for i, m in enumerate(rep.elements) if mat_vec(m, v, p) == v]


# -------------------------------------------------------------- subgroups

@dataclass(frozen=True)
class Subgroup:
    mask: int  # bitset over element indices of the parent

    @property
    def elements(self) -> list[int]:
        return [i for i in range(self.mask.bit_length()) if self.mask >> i & 1]

    @property
    def order(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, i: int) -> bool:
        return bool(self.mask >> i & 1)

    def contains(self, other: "Subgroup") -> bool:
        return self.mask & other.mask == other.mask


def generated_subgroup(rep: MatrixRep, gens: Sequence[int], start: int = 1) -> int:
    """Bitset of <start-set, gens> via closure on the multiplication table."""
    t = rep.table
    elems = {0}
    m = start
    i = 0
    while m:
        if m & 1:
            elems.add(i)
        m >>= 1
        i += 1
    elems.update(gens)
    frontier = list(elems)
    gens_all = list(elems)
    while frontier:
        new = []
        for a in frontier:
            for g in gens_all:
                c = int(t[a, g])
                if c not in elems:
                    elems.add(c)
                    new.append(c)
        if new:
            gens_all = list(elems)
        frontier = new
    return sum(1 << i for i in elems)


def is_subgroup(rep: MatrixRep, mask: int) -> bool:
    els = [i for i in range(rep.order) if mask >> i & 1]
    if not mask & 1:
        return False
    t = rep.table
    for a in els:
        if not mask >> rep.inv(a) & 1:
            return False
        for b in els:
            if not mask >> int(t[a, b]) & 1:
                return False
    return True


def subgroup_lattice(rep: MatrixRep, cap: int = 64) -> list[Subgroup]:
    """Every subgroup exactly once: cyclic seeds closed under joins <H, g>."""
    if rep.order > cap:
        raise CapExceeded(f"subgroup lattice limited to |G| <= {cap}")
    n = rep.order
    found = set()
    cyc = {}
    for g in range(n):
        cyc[g] = generated_subgroup(rep, [g])
    found.update(cyc.values())
    frontier = list(found)
    while frontier:
        new = []
        for h in frontier:
            for g in range(n):
                if h >> g & 1:
                    continue
                j = generated_subgroup(rep, [g], start=h | cyc[g])
                if j not in found:
                    found.add(j)
                    new.append(j)
        frontier = new
    return [Subgroup(m) for m in sorted(found, key=lambda m: (bin(m).count("1"), m))]


def _is_cyclic_prime_power(rep: MatrixRep, h: Subgroup) -> bool:
    o = h.order
    if o == 1 or len(prime_factors(o)) != 1:
        return False
    return any(rep.element_order(i) == o for i in h.elements)


def intersection_independent(masks: Sequence[int], full: int) -> bool:
    """No member contains the intersection of the others (empty intersection = G)."""
    for k, h in enumerate(masks):
        inter = full
        for j, m in enumerate(masks):
            if j != k:
                inter &= m
        if h & inter == inter:
            return False
    return True


def mu(rep: MatrixRep, prune: bool = True, lattice=None) -> int:
    """Largest intersection-independent family of subgroups.

    With prune=True a family already holding a cyclic subgroup of prime power
    order is never extended past two members.
    """
    subs = lattice if lattice is not None else subgroup_lattice(rep)
    full = (1 << rep.order) - 1
    cand = [s for s in subs if s.mask != full and s.order > 1]
    if not [s for s in subs if s.mask != full]:
        return 0
    best = 1
    masks = [s.mask for s in cand]
    cpp = [_is_cyclic_prime_power(rep, s) for s in cand]
    # chain bound: an independent family of size k gives a strict chain of length k
    bound = sum(1 for _ in _factor_multiset(rep.order))

    def dfs(start, chosen, has_cpp):
        nonlocal best
        if len(chosen) > best:
            best = len(chosen)
        if best >= bound:
            return
        if prune and has_cpp and len(chosen) >= 2:
            return
        for i in range(start, len(masks)):
            if intersection_independent(chosen + [masks[i]], full):
                dfs(i + 1, chosen + [masks[i]], has_cpp or cpp[i])

    dfs(0, [], False)
    return best


def _factor_multiset(n: int):
    q = 2
    while n > 1:
        while n % q == 0:
            yield q
            n //= q
        q += 1


def is_normal(rep: MatrixRep, h: Subgroup) -> bool:
    t = rep.table
    for g in range(rep.order):
        gi = rep.inv(g)
        for x in h.elements:
            if not h.mask >> int(t[int(t[g, x]), gi]) & 1:
                return False
    return True


def normal_subgroups(rep: MatrixRep, cap: int = 64) -> list[Subgroup]:
    return [h for h in subgroup_lattice(rep, cap) if is_normal(rep, h)]


def center(rep: MatrixRep) -> Subgroup:
    t = rep.table
    mask = 0
    for z in range(rep.order):
        if all(t[z, g] == t[g, z] for g in range(rep.order)):
            mask |= 1 << z
    return Subgroup(mask)


def quotient_rep(rep: MatrixRep, images: Sequence[Matrix], normal: Subgroup) -> MatrixRep:
    """Image group of a representation of G whose kernel contains the normal subgroup N.

    images[i] is the matrix of rep.elements[i]; the result is the matrix group of G/N
    acting through this representation.
    """
    if not is_normal(rep, normal):
        raise NotNormal("subgroup is not normal")
    n = len(images[0])
    ident = identity_matrix(n)
    for x in normal.elements:
        if images[x] != ident:
            raise GroupError("N is not contained in the kernel")
    gens = [images[g] for g in rep.gen_index]
    return MatrixRep(gens, rep.field, names=rep.names)


def kernel(images: Sequence[Matrix]) -> Subgroup:
    n = len(images[0])
    ident = identity_matrix(n)
    return Subgroup(sum(1 << i for i, m in enumerate(images) if m == ident))


# ------------------------------------------------------------- characters

@dataclass(frozen=True)
class Character:
    values: tuple  # values[i] = chi(elements[i]) as residues
    gen_values: tuple
    p: int

    def __call__(self, i: int) -> int:
        return self.values[i]

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values)

    def __mul__(self, other: "Character") -> "Character":
        p = self.p
        return Character(tuple(a * b % p for a, b in zip(self.values, other.values)),
                         tuple(a * b % p for a, b in zip(self.gen_values, other.gen_values)), p)

    def inverse(self) -> "Character":
        p = self.p
        return Character(tuple(pow(a, p - 2, p) for a in self.values),
                         tuple(pow(a, p - 2, p) for a in self.gen_values), p)

    def order(self) -> int:
        k, cur = 1, self
        while not cur.is_trivial():
            cur = cur * self
            k += 1
        return k


def is_multiplicative(rep: MatrixRep, chi: Character) -> bool:
    p = rep.field.p
    t = rep.table
    v = chi.values
    for g in range(rep.order):
        for h in range(rep.order):
            if v[g] * v[h] % p != v[int(t[g, h])]:
                return False
    return True


def characters(rep: MatrixRep) -> list[Character]:
    """All homomorphisms G -> F_p^*, by filtering generator assignments."""
    p = rep.field.p
    choices = []
    for g in rep.gen_index:
        o = rep.element_order(g)
        choices.append([x for x in range(1, p) if pow(x, o, p) == 1])
    out = []
    for combo in itertools.product(*choices):
        vals = rep.scalar_images(combo)
        if vals is not None:
            out.append(Character(tuple(vals), tuple(combo), p))
    return out


# ---------------------------------------------------------- automorphisms

def automorphisms(rep: MatrixRep, limit: int | None = None) -> list[tuple]:
    """All automorphisms as permutations of element indices (perm[i] = alpha(i))."""
    n = rep.order
    t = rep.table
    gi = rep.gen_index
    orders = [rep.element_order(i) for i in range(n)]
    choices = [[x for x in range(n) if orders[x] == orders[g]] for g in gi]
    parents = [(rep.index_of_word(rep.words[i][:-1]), rep.words[i][-1]) if i else (0, 0)
               for i in range(n)]
    out = []
    for combo in itertools.product(*choices):
        img = [0] * n
        for i in range(1, n):
            par, k = parents[i]
            img[i] = int(t[img[par], combo[k]])
        ok = len(set(img)) == n
        if ok:
            for i in range(n):
                for k, g in enumerate(gi):
                    if img[int(t[i, g])] != int(t[img[i], combo[k]]):
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            out.append(tuple(img))
            if limit and len(out) >= limit:
                break
    return out
