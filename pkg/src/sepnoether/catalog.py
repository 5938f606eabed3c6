"""Catalogued groups, irreducible blocks, witness pairs and expected values."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable

from . import grp, invar
from .ffield import OrderUnavailable, PrimeField, choose_prime, element_of_order
from .grp import Character, MatrixRep
from .invar import Block, ModuleSpec, character_block, make_block
from .mpoly import Polynomial, parse_polynomial
from .septool import WitnessPair


class UnknownEntry(KeyError):
    pass


class RootUnavailable(ValueError):
    pass


class BadParameter(ValueError):
    pass


@dataclass
class Built:
    entry: "CatalogEntry"
    field: PrimeField
    group: MatrixRep
    irreducibles: list | None
    modules: dict
    witnesses: list
    fixtures: dict = field(default_factory=dict)

    def block(self, label: str) -> Block:
        for b in self.irreducibles or []:
            if b.label == label:
                return b
        raise UnknownEntry(f"{self.entry.key} has no irreducible labelled {label!r}")

    def module(self, selector: str) -> ModuleSpec:
        """A named module, or a '+'-joined list of irreducible labels."""
        if selector in self.modules:
            return self.modules[selector]
        labels = _split_selector(selector)
        blocks = []
        for k, lab in enumerate(labels):
            b = self.block(lab)
            blocks.append(Block(f"{b.name}" if b.name not in [x.name for x in blocks] else f"{b.name}_{k}",
                                b.matrices, b.role, b.label))
        return ModuleSpec(self.group, blocks)


def _split_selector(s: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0:
            out.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    name: str
    order: int
    beta: int | None
    betasep: int | None
    source: str
    maxdim: int
    builder: Callable
    family: str | None = None
    gap: tuple | None = None
    abelian: tuple | None = None  # cyclic factor orders for abelian groups
    note: str = ""

    def default_prime(self) -> int:
        return choose_prime(self.order, (self.maxdim - 1) * self.order).p

    def build(self, fld: PrimeField | int | None = None) -> Built:
        if fld is None:
            fld = PrimeField(self.default_prime())
        elif isinstance(fld, int):
            fld = PrimeField(fld)
        try:
            return self.builder(self, fld)
        except OrderUnavailable as e:
            raise RootUnavailable(f"{self.key} over F_{fld.p}: {e}") from e


# ------------------------------------------------------------------ helpers

def _diag(*d):
    n = len(d)
    return [[d[i] if i == j else 0 for j in range(n)] for i in range(n)]


def _root(fld: PrimeField, n: int) -> int:
    return element_of_order(fld, n).value


def fmt_value(v: int, fld: PrimeField) -> str:
    p = fld.p
    v %= p
    if v == 1:
        return "1"
    if v == p - 1:
        return "-1"
    o = fld(v).multiplicative_order()
    if o == 4:
        return "i" if v == _root(fld, 4) else "-i"
    z = _root(fld, o)
    k = next(k for k in range(1, o) if pow(z, k, p) == v)
    return f"z{o}" if k == 1 else f"z{o}^{k}"


def char_label(chi: Character, fld: PrimeField) -> str:
    return "U(" + ",".join(fmt_value(v, fld) for v in chi.gen_values) + ")"


def _char_blocks(group: MatrixRep, start: int = 1) -> list[Block]:
    fld = group.field
    chars = grp.characters(group)
    return [character_block(f"t{k + start}", c, group, label=char_label(c, fld))
            for k, c in enumerate(chars)]


def _find_char(blocks, values, fld) -> Block:
    want = tuple(v % fld.p for v in values)
    for b in blocks:
        if b.role == "U" and tuple(m[0][0] for m in b.matrices) == want:
            return b
    raise UnknownEntry(f"no character with generator values {values}")


def _rename(b: Block, name: str) -> Block:
    return Block(name, b.matrices, b.role, b.label)


def _poly(text: str, module: ModuleSpec) -> Polynomial:
    return parse_polynomial(text, module.ctx, module.field)


def _subst_i(text: str, fld: PrimeField) -> str:
    return text.replace("I", str(_root(fld, 4)))


# ----------------------------------------------------------- constructors

def _build_abelian(entry: CatalogEntry, fld: PrimeField) -> Built:
    orders = entry.abelian
    n = len(orders)
    gens = []
    for k, o in enumerate(orders):
        z = _root(fld, o)
        gens.append(_diag(*[z if j == k else 1 for j in range(n)]))
    g = grp.generate(gens, fld, names=[f"g{k + 1}" for k in range(n)])
    irr = _char_blocks(g)
    return Built(entry, fld, g, irr, {}, [])


def _build_c2(entry, fld):
    g = grp.generate([[[-1]]], fld, names=["g"])
    irr = _char_blocks(g)
    sign = _find_char(irr, (-1,), fld)
    m = ModuleSpec(g, [_rename(sign, "x")])
    return Built(entry, fld, g, irr, {"sign": m}, [])


def _dic_param(n: int) -> int:
    if n % 4 or n < 8:
        raise BadParameter("Dic_N needs N = 4m with m > 1")
    return n // 4


def _build_dic(entry, fld):
    m = _dic_param(entry.order)
    p = fld.p
    i = _root(fld, 4)
    rho = _root(fld, 2 * m)
    A = [[0, i], [i, 0]]
    B = _diag(rho, pow(rho, p - 2, p))
    g = grp.generate([A, B], fld, names=["a", "b"])
    w1 = make_block("x", [A, B], p, label="W1")
    irr = _char_blocks(g)
    for j in range(2, m):
        rj = pow(rho, j, p)
        irr.append(make_block(f"y{j}", [[[0, 1], [(-1) ** j, 0]], _diag(rj, pow(rj, p - 2, p))], p,
                              label=f"W{j}"))
    irr.insert(0, w1)
    mod = ModuleSpec(g, [w1])
    if m % 2 == 0:
        nu = _root(fld, 4 * m)
        v, w = (nu, 1), (nu, -1)
    else:
        v, w = (1, 1), (1, -1)
    wp = WitnessPair(mod, v, w, 2 * m + 2, None, name=f"dic{entry.order}")
    return Built(entry, fld, g, irr, {"W1": mod, "witness": mod}, [wp])


def _ic2_k(kind: str, n: int) -> int:
    half = 2 ** (n - 1)
    return {"ab": 1, "m": half // 2 + 1, "d": half - 1, "sd": half // 2 - 1}[kind]


def _build_ic2(entry, fld):
    """C_{2^(n-1)} extended by C_2 acting as a -> a^k, on W + sign line (3 dims)."""
    kind = entry.key.split(":")[1]
    order = entry.order
    n = order.bit_length() - 1
    k = _ic2_k(kind, n)
    p = fld.p
    half = order // 2
    xi = _root(fld, half)
    S = [[0, 1, 0], [1, 0, 0], [0, 0, -1]]
    A = _diag(xi, pow(xi, k, p), 1)
    g = grp.generate([S, A], fld, names=["b", "a"])
    wmats = [[[0, 1], [1, 0]], _diag(xi, pow(xi, k, p))]
    wblock = make_block("x", wmats, p, label="W")
    role = "W" if invar.is_irreducible(wblock, p) else "R"
    wblock = Block("x", wblock.matrices, role, "W")
    sign = make_block("t", [[[-1]], [[1]]], p, label="U(-1,1)")
    mod = ModuleSpec(g, [wblock, sign])
    irr = _char_blocks(g)
    seen = set()
    for j in range(1, half):
        a, b = j % half, (j * k) % half
        if a == b or frozenset((a, b)) in seen:
            continue
        seen.add(frozenset((a, b)))
        irr.append(make_block(f"y{j}", [[[0, 1], [1, 0]], _diag(pow(xi, a, p), pow(xi, b, p))], p,
                              label=f"W({a},{b})"))
    hint = _poly(f"(x1^{half} - x2^{half})*t", mod)
    wp = WitnessPair(mod, (1, 0, 1), (1, 0, -1), half + 1, hint, name=f"{kind}{order}")
    return Built(entry, fld, g, irr, {"witness": mod, "W+sign": mod}, [wp])


def _d2nxc2_n(order: int) -> int:
    n = order // 2
    if order % 4 or n < 4:
        raise BadParameter("D_2n x C_2 needs n even, n >= 4")
    return n


def _build_d2nxc2(entry, fld):
    n = _d2nxc2_n(entry.order // 2)
    p = fld.p
    rho = _root(fld, n)
    a_w, b_w, c_w = _diag(rho, pow(rho, p - 2, p)), [[0, 1], [1, 0]], _diag(1, 1)
    chi1 = (1, -1, -1)
    chi2 = (1, 1, -1)
    gens = [grp.block_diag([grp.to_matrix(a_w, p), ((1,),)]),
            grp.block_diag([grp.to_matrix(b_w, p), ((1,),)]),
            grp.block_diag([grp.to_matrix(c_w, p), ((p - 1,),)])]
    g = grp.generate(gens, fld, names=["a", "b", "c"])
    w = make_block("x", [a_w, b_w, c_w], p, label="W1")
    t1 = make_block("t1", [[[v]] for v in chi1], p, label="U(1,-1,-1)")
    t2 = make_block("t2", [[[v]] for v in chi2], p, label="U(1,1,-1)")
    mod = ModuleSpec(g, [w, t1, t2])
    irr = _char_blocks(g)
    for j in range(1, n // 2):
        rj = pow(rho, j, p)
        for s in (1, -1):
            irr.append(make_block(f"y{j}{'p' if s == 1 else 'm'}",
                                  [_diag(rj, pow(rj, p - 2, p)), [[0, 1], [1, 0]], _diag(s, s)], p,
                                  label=f"W{j}(c={s})"))
    hint = _poly(f"(x1^{n} - x2^{n})*t1*t2", mod)
    wp = WitnessPair(mod, (1, 0, 1, 1), (1, 0, 1, -1), n + 2, hint, name=f"d{2 * n}xc2")
    return Built(entry, fld, g, irr, {"witness": mod}, [wp])


def _perm(sigma, n):
    """Permutation matrix with P e_i = e_sigma(i) (0-based)."""
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[sigma[i]][i] = 1
    return m


def _build_a4(entry, fld):
    p = fld.p
    x = (1, 0, 3, 2)   # (12)(34)
    y = (1, 2, 0, 3)   # (123)
    g = grp.generate([_perm(x, 4), _perm(y, 4)], fld, names=["x", "y"])
    nat = Block("v", (grp.to_matrix(_perm(x, 4), p), grp.to_matrix(_perm(y, 4), p)), "R", "natural")

    # sum-zero subspace with basis f_k = e_k - e_4
    def std(sigma):
        m = [[0] * 3 for _ in range(3)]
        for k in range(3):
            a, b = sigma[k], sigma[3]
            if a < 3:
                m[a][k] += 1
            if b < 3:
                m[b][k] -= 1
        return m

    w = make_block("x", [std(x), std(y)], p, label="W")
    irr = [w] + _char_blocks(g)
    mod = ModuleSpec(g, [nat])
    delta = "*".join(f"(v{i}-v{j})" for i in range(1, 5) for j in range(i + 1, 5))
    hint = _poly(delta, mod)
    wp = WitnessPair(mod, (1, 2, 3, 4), (2, 1, 3, 4), 6, hint, name="a4")
    return Built(entry, fld, g, irr, {"natural": mod, "witness": mod}, [wp],
                 fixtures={"Delta": hint})


def _build_16_3(entry, fld):
    p = fld.p
    i = _root(fld, 4)
    a, b, c = [[0, 1], [1, 0]], [[0, -1], [-1, 0]], _diag(1, -1)
    c2 = _diag(i, -i)
    g = grp.generate([grp.block_diag([grp.to_matrix(a, p)] * 2),
                      grp.block_diag([grp.to_matrix(b, p)] * 2),
                      grp.block_diag([grp.to_matrix(c, p), grp.to_matrix(c2, p)])], fld, names=["a", "b", "c"])
    w1 = make_block("x", [a, b, c], p, label="W1")
    w2 = make_block("y", [a, b, c2], p, label="W2")
    chars = _char_blocks(g)
    irr = [w1, w2] + chars
    u1 = _rename(_find_char(chars, (1, 1, i), fld), "t1")
    u2 = _rename(_find_char(chars, (-1, -1, i), fld), "t2")
    mod = ModuleSpec(g, [w1, u1, u2])
    hint = _poly("(x1^2 - x2^2)*t1^3*t2", mod)
    wp = WitnessPair(mod, (1, 0, 1, 1), (1, 0, 1, -1), 6, hint, name="c2xc2:c4")
    return Built(entry, fld, g, irr, {"witness": mod}, [wp])


def _dic8_witness(g, block, fld, name):
    mod = ModuleSpec(g, [block])
    nu = _root(fld, 8)
    return mod, WitnessPair(mod, (nu, 1), (nu, -1), 6, None, name=name)


def _build_16_4(entry, fld):
    p = fld.p
    i = _root(fld, 4)
    a = _diag(i, -i)
    b1, b2 = [[0, 1], [1, 0]], [[0, -1], [1, 0]]
    g = grp.generate([grp.block_diag([grp.to_matrix(a, p)] * 2),
                      grp.block_diag([grp.to_matrix(b1, p), grp.to_matrix(b2, p)])], fld, names=["a", "b"])
    w1 = make_block("x", [a, b1], p, label="W1")
    w2 = make_block("y", [a, b2], p, label="W2")
    irr = [w1, w2] + _char_blocks(g)
    mod, wp = _dic8_witness(g, w2, fld, "c4:c4")
    pair_mod = ModuleSpec(g, [w1, w2])
    fx = {}
    for name, text in [("r(-1,1)", "x1^2+x2^2"), ("r(-1,-1)", "x1^2-x2^2"), ("r(1,-1)", "x1^4-x2^4"),
                       ("s(1,-1)", "y1*y2"), ("s(-1,1)", "y1^2+y2^2"), ("s(-1,-1)", "y1^2-y2^2"),
                       ("r1(1,-i)", "x1*y2+I*x2*y1"), ("r2(1,-i)", "x1*y1^3-I*x2*y2^3"),
                       ("r(1,i)", "x1*y2-I*x2*y1")]:
        fx[name] = _poly(_subst_i(text, fld), pair_mod)
    return Built(entry, fld, g, irr, {"W2": mod, "W1+W2": pair_mod, "witness": mod}, [wp], fixtures=fx)


def _build_16_12(entry, fld):
    p = fld.p
    i = _root(fld, 4)
    a, b = _diag(i, -i), [[0, -1], [1, 0]]
    c1, c2 = _diag(1, 1), _diag(-1, -1)
    g = grp.generate([grp.block_diag([grp.to_matrix(a, p)] * 2),
                      grp.block_diag([grp.to_matrix(b, p)] * 2),
                      grp.block_diag([grp.to_matrix(c1, p), grp.to_matrix(c2, p)])], fld, names=["a", "b", "c"])
    w1 = make_block("x", [a, b, c1], p, label="W1")
    w2 = make_block("y", [a, b, c2], p, label="W2")
    irr = [w1, w2] + _char_blocks(g)
    mod, wp = _dic8_witness(g, w1, fld, "dic8xc2")
    pair_mod = ModuleSpec(g, [w1, w2])
    fx = {"f1": _poly("x1^2+x2^2", pair_mod)}
    return Built(entry, fld, g, irr, {"W1": mod, "W1+W2": pair_mod, "witness": mod}, [wp], fixtures=fx)


def _build_pauli(entry, fld):
    p = fld.p
    i = _root(fld, 4)
    X, Y, Z = [[0, 1], [1, 0]], [[0, -i], [i, 0]], _diag(1, -1)
    g = grp.generate([X, Y, Z], fld, names=["X", "Y", "Z"])
    w1 = make_block("x", [X, Y, Z], p, label="W1")
    w2 = make_block("y", [X, [[0, i], [-i, 0]], Z], p, label="W2")
    chars = _char_blocks(g)
    irr = [w1, w2] + chars
    sign = _rename(_find_char(chars, (-1, -1, -1), fld), "t")
    mod = ModuleSpec(g, [w1, sign])
    hint = _poly("(x1^4 - x2^4)*x1*x2*t", mod)
    # (1, 1) is fixed by X, which negates t, so the base point needs (x1^4 - x2^4) x1 x2 != 0
    wp = WitnessPair(mod, (1, 2, 1), (1, 2, -1), 7, hint, name="pauli")
    return Built(entry, fld, g, irr, {"W1+sign": mod, "witness": mod}, [wp])


# ------------------------------------------------------------------- table

_ABELIAN = [
    ((8, 5), "C2xC2xC2", (2, 2, 2), 4, 4),
    ((9, 2), "C3xC3", (3, 3), 5, 4),
    ((16, 2), "C4xC4", (4, 4), 7, 6),
    ((16, 10), "C2xC2xC4", (2, 2, 4), 6, 6),
    ((16, 14), "C2xC2xC2xC2", (2, 2, 2, 2), 5, 5),
]

_NONABELIAN = [
    ((12, 3), "A4", 3, _build_a4, 6, 6, ("a4",)),
    ((16, 3), "(C2xC2):C4", 2, _build_16_3, 6, 6, ("c2xc2:c4",)),
    ((16, 4), "C4:C4", 2, _build_16_4, 7, 6, ("c4:c4",)),
    ((16, 12), "Dic8xC2", 2, _build_16_12, 7, 6, ("dic8xc2",)),
    ((16, 13), "Pauli", 2, _build_pauli, 7, 7, ("pauli",)),
]

ALIASES: dict = {}
_FIXED: dict = {}


def _gap_key(g):
    return f"({g[0]},{g[1]})"


def _register():
    for gap, name, orders, b, bs in _ABELIAN:
        e = CatalogEntry(_gap_key(gap), name, gap[0], b, bs, "cited (abelian); engine recomputes",
                         1, _build_abelian, gap=gap, abelian=orders)
        _FIXED[e.key] = e
        ALIASES[name.lower()] = e.key
    for gap, name, maxdim, builder, b, bs, al in _NONABELIAN:
        e = CatalogEntry(_gap_key(gap), name, gap[0], b, bs, "witness + radical membership",
                         maxdim, builder, gap=gap)
        _FIXED[e.key] = e
        for a in al:
            ALIASES[a] = e.key
    _FIXED["c2"] = CatalogEntry("c2", "C2", 2, 2, 2, "trivial", 1, _build_c2, gap=(2, 1))


_register()

FAMILIES = {
    "dic": "Dic_N, N = 4m with m > 1: dicyclic group; beta = beta_sep = 2m + 2 (literature value "
           "for groups with a cyclic subgroup of index two); witness [nu,1] vs [nu,-1] (m even), "
           "[1,1] vs [1,-1] (m odd)",
    "ic2": "ic2:<kind>:<2^n>, kind in ab|m|d|sd: C_{2^(n-1)} extended by C_2, 3-dim module W + sign; "
           "beta_sep = 2^(n-1) + 1 for the non-abelian kinds; witness [1,0,1] vs [1,0,-1]",
    "d2nxc2": "d2nxc2:<2n>, n even >= 4: D_2n x C_2; beta_sep = n + 2 = D(C_n x C_2) + 1; "
              "witness ([1,0],1,1) vs ([1,0],1,-1) on W1 + U(1,-1,-1) + U(1,1,-1)",
}

ALIASES.update({"dic8": "dic:8", "q8": "dic:8", "m16": "ic2:m:16", "sd16": "ic2:sd:16",
                "d16": "ic2:d:16"})


def get(key: str) -> CatalogEntry:
    k = key.strip().lower().replace(" ", "")
    k = ALIASES.get(k, k)
    if k in _FIXED:
        return _FIXED[k]
    m = re.fullmatch(r"dic:(\d+)", k)
    if m:
        order = int(m.group(1))
        mm = _dic_param(order)
        return CatalogEntry(k, f"Dic{order}", order, 2 * mm + 2, 2 * mm + 2,
                            "literature beta; witness + radical membership", 2, _build_dic, family="dic")
    m = re.fullmatch(r"ic2:(ab|m|d|sd):(\d+)", k)
    if m:
        kind, order = m.group(1), int(m.group(2))
        n = order.bit_length() - 1
        if order != 2 ** n or n < 4:
            raise BadParameter("ic2 family needs order 2^n with n >= 4")
        name = {"ab": f"C{order // 2}xC2", "m": f"M{order}", "d": f"D{order}", "sd": f"SD{order}"}[kind]
        bs = order // 2 + 1
        return CatalogEntry(k, name, order, bs, bs, "literature beta; witness + radical membership", 2,
                            _build_ic2, family="ic2")
    m = re.fullmatch(r"d2nxc2:(\d+)", k)
    if m:
        two_n = int(m.group(1))
        n = two_n // 2
        if two_n % 2 or n % 2 or n < 4:
            raise BadParameter("d2nxc2 needs 2n with n even, n >= 4")
        return CatalogEntry(k, f"D{two_n}xC2", 2 * two_n, n + 2, n + 2,
                            "literature beta = D(C_n x C_2) + 1; witness", 2, _build_d2nxc2,
                            family="d2nxc2")
    raise UnknownEntry(key)


def entries() -> list[CatalogEntry]:
    """Fixed entries plus the family members used by the checks."""
    fixed = [e for k, e in _FIXED.items() if k != "c2"]
    fam = [get(k) for k in ("dic:8", "dic:12", "dic:16", "ic2:m:16", "ic2:sd:16", "ic2:d:16",
                            "d2nxc2:8", "d2nxc2:12")]
    return fixed + fam + [_FIXED["c2"]]


def table_entries() -> list[CatalogEntry]:
    return sorted((e for e in _FIXED.values() if e.key != "c2"), key=lambda e: e.gap)


def expected_table() -> list[tuple]:
    return [(e.key, e.beta, e.betasep, e.source) for e in table_entries()]


def build(key: str, fld: PrimeField | int | None = None) -> Built:
    return get(key).build(fld)


def automorphisms(built: Built) -> list[tuple]:
    return grp.automorphisms(built.group)
