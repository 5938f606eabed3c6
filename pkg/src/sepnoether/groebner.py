"""Buchberger Groebner bases over F_p, ideal membership and radical membership.

Internally monomials are packed into single Python ints so that the integer
order is the term order and monomial multiplication is integer addition.
"""

from __future__ import annotations

import bisect
import hashlib
import heapq
from dataclasses import dataclass, field
from typing import Sequence

from .mpoly import GREVLEX, LEX, Polynomial, TermOrder, VariableContext


class _Packing:
    """Bit-packed monomials for one (nvars, order) pair."""

    def __init__(self, nvars: int, order: TermOrder):
        if order.priority is not None:
            self.perm = tuple(order.priority)
        else:
            self.perm = tuple(range(nvars))
        self.n = nvars
        self.kind = order.kind
        self.w = w = 8 if order.kind == "grevlex" else 16
        self.cap = (1 << (w - 1)) - 1
        self.guard = sum(1 << (w * i + w - 1) for i in range(nvars))
        self.low = (1 << (w * nvars)) - 1
        self.ones = sum(1 << (w * i) for i in range(nvars))
        mask = (1 << w) - 1
        self.mask = mask
        if self.kind == "grevlex":
            # complemented fields, x_1 least significant, degree on top
            self.K = sum(self.cap << (w * i) for i in range(nvars))
        else:
            self.K = 0

    def encode(self, m) -> int:
        e = [m[i] for i in self.perm]
        w, cap = self.w, self.cap
        if max(e, default=0) > cap:
            raise OverflowError("exponent too large for packed monomials")
        if self.kind == "grevlex":
            key = sum(e) << (w * self.n)
            for i, x in enumerate(e):
                key |= (cap - x) << (w * i)
            return key
        key = 0
        for i, x in enumerate(e):
            key |= x << (w * (self.n - 1 - i))
        return key

    def decode(self, key: int) -> tuple:
        w, mask, cap, n = self.w, self.mask, self.cap, self.n
        if self.kind == "grevlex":
            e = [cap - ((key >> (w * i)) & mask) for i in range(n)]
        else:
            e = [(key >> (w * (n - 1 - i))) & mask for i in range(n)]
        out = [0] * n
        for i, x in zip(self.perm, e):
            out[i] = x
        return tuple(out)

    def dkey(self, key: int) -> int:
        """Exponent pack used for divisibility tests (a | b iff guard test on dkeys)."""
        if self.kind == "grevlex":
            return self.K - (key & self.low)
        return key

    def degree(self, key: int) -> int:
        if self.kind == "grevlex":
            return key >> (self.w * self.n)
        return sum(self.decode(key))

    def lcm(self, a: int, b: int) -> int:
        ea, eb = self.decode(a), self.decode(b)
        return self.encode(tuple(max(x, y) for x, y in zip(ea, eb)))

    def coprime(self, a: int, b: int) -> bool:
        return not any(x and y for x, y in zip(self.decode(a), self.decode(b)))

    # exponent packs (dkeys): per-variable fields below the guard bits
    def dlcm(self, a: int, b: int) -> int:
        g = self.guard
        sel = ((b | g) - a) & g  # guard set where b_i >= a_i
        m = sel - (sel >> (self.w - 1))
        return (b & m) | (a & ~m & self.low)

    def support(self, a: int) -> int:
        return ((a | self.guard) - self.ones) & self.guard

    def from_dkey(self, d: int, degree: int) -> int:
        """Order key of the monomial with exponent pack d."""
        if self.kind == "grevlex":
            return (degree << (self.w * self.n)) | (self.K - d)
        return d


def _to_internal(f: Polynomial, pk: _Packing) -> list:
    terms = [(pk.encode(m), c) for m, c in f.terms.items()]
    terms.sort(reverse=True)
    return terms


def _from_internal(terms, pk: _Packing, ctx, fld) -> Polynomial:
    return Polynomial(ctx, fld, {pk.decode(m): c for m, c in terms}, _canonical=True)


def _monic(terms, p):
    inv = pow(terms[0][1], p - 2, p)
    if inv == 1:
        return terms
    return [(m, c * inv % p) for m, c in terms]


class _Reducer:
    """Division by a monic basis with full (tail) reduction."""

    def __init__(self, pk: _Packing, p: int):
        self.pk = pk
        self.p = p
        self.lm = []     # leading monomial (order key) per element
        self.tails = []  # tail terms of each monic element
        self.act_dk = []  # exponent packs of active elements, parallel to act_id
        self.act_id = []
        self.alive = []
        self.memo: dict = {}

    def add(self, terms):
        lm = terms[0][0]
        k = len(self.lm)
        self.lm.append(lm)
        self.tails.append(terms[1:])
        self.alive.append(True)
        self.act_dk.append(self.pk.dkey(lm))
        self.act_id.append(k)
        return k

    def deactivate(self, k: int):
        if self.alive[k]:
            self.alive[k] = False
            i = bisect.bisect_left(self.act_id, k)
            del self.act_id[i]
            del self.act_dk[i]

    def find(self, m: int) -> int:
        # memo[m] = (divisor or -1, number of elements when computed)
        hit = self.memo.get(m)
        start = 0
        if hit is not None:
            r, n = hit
            if r >= 0:
                if self.alive[r]:
                    return r
            elif n == len(self.lm):
                return -1
            else:
                start = bisect.bisect_left(self.act_id, n)
        guard = self.pk.guard
        dm = self.pk.dkey(m) | guard
        r = -1
        dks, ids = self.act_dk, self.act_id
        for i in range(start, len(ids)):
            if (dm - dks[i]) & guard == guard:
                r = ids[i]
                break
        self.memo[m] = (r, len(self.lm))
        return r

    def reduce(self, terms, full=True):
        if not terms:
            return []
        p = self.p
        K = self.pk.K
        lms, tails = self.lm, self.tails
        find = self.find
        acc = dict(terms)
        heap = [-m for m, _ in terms]
        heapq.heapify(heap)
        out = []
        push, pop = heapq.heappush, heapq.heappop
        while heap:
            m = -pop(heap)
            c = acc.pop(m, 0)
            if not c:
                continue
            r = find(m)
            if r < 0:
                out.append((m, c))
                if not full:
                    rest = sorted(((k, v) for k, v in acc.items() if v), reverse=True)
                    return out + rest
                continue
            q = m - lms[r]
            for mg, cg in tails[r]:
                mm = mg + q
                v = acc.get(mm)
                if v is None:
                    nv = (-c * cg) % p
                    if nv:
                        acc[mm] = nv
                        push(heap, -mm)
                else:
                    nv = (v - c * cg) % p
                    if nv:
                        acc[mm] = nv
                    else:
                        del acc[mm]
        return out


@dataclass
class IdealBasis:
    generators: list
    order: TermOrder = GREVLEX

    def __post_init__(self):
        self.generators = [g for g in self.generators if not g.is_zero()]
        ctxs = {(g.ctx, g.field) for g in self.generators}
        if len(ctxs) > 1:
            raise ValueError("generators must share one ring")


@dataclass
class GroebnerBasis:
    elements: list
    order: TermOrder
    reduced: bool = True
    stats: dict = field(default_factory=dict)

    def leading_monomials(self):
        return [g.leading_monomial(self.order) for g in self.elements]

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].degree() == 0


@dataclass
class _State:
    pk: _Packing
    p: int
    polys: list = field(default_factory=list)   # monic internal polys
    sugar: list = field(default_factory=list)
    basis: list = field(default_factory=list)   # indices currently in G
    pairs: list = field(default_factory=list)   # heap of (sugar, lcm key, lcm dkey, i, j)
    red: _Reducer | None = None
    dk: list = field(default_factory=list)      # exponent pack of each leading monomial
    supp: list = field(default_factory=list)
    deg: list = field(default_factory=list)

    def deg_of(self, d: int) -> int:
        w, mask = self.pk.w, self.pk.mask
        t = 0
        while d:
            t += d & mask
            d >>= w
        return t

    def add(self, poly, sugar):
        lm = poly[0][0]
        d = self.pk.dkey(lm)
        self.polys.append(poly)
        self.sugar.append(sugar)
        self.dk.append(d)
        self.supp.append(self.pk.support(d))
        self.deg.append(self.pk.degree(lm))
        self.red.add(poly)
        return len(self.polys) - 1


def _update(st: _State, h: int):
    """Gebauer-Moeller update: new pairs with minimal lcm, then prune old pairs and basis."""
    pk = st.pk
    guard = pk.guard
    dlcm = pk.dlcm
    dh = st.dk[h]
    sh = st.supp[h]
    # new pairs grouped by lcm; a coprime pair marks its lcm as useless
    by_lcm: dict = {}
    for g in st.basis:
        l = dlcm(dh, st.dk[g])
        cop = not (sh & st.supp[g])
        prev = by_lcm.get(l)
        if prev is None:
            by_lcm[l] = [g, cop]
        elif cop:
            prev[1] = True
    cands = sorted(by_lcm.items(), key=lambda kv: (st.deg_of(kv[0]), kv[0]))
    minimal = []
    new_pairs = []
    for l, (g, cop) in cands:
        lg = l | guard
        if any((lg - m) & guard == guard for m in minimal):
            continue
        minimal.append(l)
        if not cop:
            new_pairs.append((g, l))
    old = []
    for item in st.pairs:
        l = item[2]
        if ((l | guard) - dh) & guard == guard:
            i, j = item[3], item[4]
            if dlcm(st.dk[i], dh) != l and dlcm(st.dk[j], dh) != l:
                continue
        old.append(item)
    for g, l in new_pairs:
        dl = st.deg_of(l)
        s = max(st.sugar[g] + dl - st.deg[g], st.sugar[h] + dl - st.deg[h])
        old.append((s, st.pk.from_dkey(l, dl), l, g, h))
    heapq.heapify(old)
    st.pairs = old
    keep = []
    for g in st.basis:
        if ((st.dk[g] | guard) - dh) & guard == guard:
            st.red.deactivate(g)
        else:
            keep.append(g)
    keep.append(h)
    st.basis = keep


def _spoly(st: _State, i: int, j: int, l: int):
    pk, p = st.pk, st.p
    K = pk.K
    out: dict = {}
    for idx, sign in ((i, 1), (j, -1)):
        f = st.polys[idx]
        q = l - f[0][0] + K
        for m, c in f[1:]:
            mm = m + q - K
            v = (out.get(mm, 0) + sign * c) % p
            if v:
                out[mm] = v
            else:
                out.pop(mm, None)
    return sorted(out.items(), reverse=True)


def _interreduce(st: _State):
    pk, p = st.pk, st.p
    polys = [st.polys[i] for i in st.basis]
    polys.sort(key=lambda t: t[0][0])
    minimal = []
    dk = pk.dkey
    guard = pk.guard
    for f in polys:
        lf = f[0][0]
        if any(((dk(lf) | guard) - dk(g[0][0])) & guard == guard for g in minimal):
            continue
        minimal.append(f)
    out = []
    for k, f in enumerate(minimal):
        red = _Reducer(pk, p)
        for g in minimal[:k] + minimal[k + 1:]:
            red.add(g)
        tail = red.reduce(f[1:])
        out.append([f[0]] + tail)
    out.sort(key=lambda t: t[0][0], reverse=True)
    return out


def _groebner_internal(gens: list, pk: _Packing, p: int, stop_on_unit=False, stats=None):
    st = _State(pk, p)
    st.red = _Reducer(pk, p)
    stats = stats if stats is not None else {}
    stats.setdefault("pairs", 0)
    stats.setdefault("zero_reductions", 0)
    unit = [(pk.encode((0,) * pk.n), 1)]
    for f in sorted(gens, key=lambda t: t[0][0]):
        r = st.red.reduce(f)
        if not r:
            continue
        r = _monic(r, p)
        if pk.degree(r[0][0]) == 0:
            return [unit]
        _update(st, st.add(r, max(pk.degree(m) for m, _ in f)))
    while st.pairs:
        s, key, l, i, j = heapq.heappop(st.pairs)
        stats["pairs"] += 1
        sp = _spoly(st, i, j, key)
        r = st.red.reduce(sp)
        if not r:
            stats["zero_reductions"] += 1
            continue
        r = _monic(r, p)
        if pk.degree(r[0][0]) == 0:
            stats["unit"] = True
            if stop_on_unit:
                return [unit]
            return [unit]
        _update(st, st.add(r, s))
    return _interreduce(st)


def buchberger(ideal: IdealBasis, stop_on_unit: bool = False) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal (normal selection with sugar, Gebauer-Moeller criteria)."""
    order = ideal.order
    if not ideal.generators:
        return GroebnerBasis([], order)
    g0 = ideal.generators[0]
    ctx, fld = g0.ctx, g0.field
    pk = _Packing(ctx.nvars, order)
    stats: dict = {}
    res = _groebner_internal([_to_internal(g, pk) for g in ideal.generators], pk, fld.p,
                             stop_on_unit=stop_on_unit, stats=stats)
    elems = [_from_internal(t, pk, ctx, fld) for t in res]
    return GroebnerBasis(elems, order, reduced=True, stats=stats)


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    if f.is_zero() or not gb.elements:
        return f
    pk = _Packing(f.ctx.nvars, gb.order)
    red = _Reducer(pk, f.field.p)
    for g in gb.elements:
        red.add(_monic(_to_internal(g, pk), f.field.p))
    return _from_internal(red.reduce(_to_internal(f, pk)), pk, f.ctx, f.field)


def ideal_member(f: Polynomial, ideal: IdealBasis) -> bool:
    if f.is_zero():
        return True
    if not ideal.generators:
        return False
    return normal_form(f, buchberger(ideal)).is_zero()


def s_polynomials_reduce(gb: GroebnerBasis) -> bool:
    """Buchberger criterion: every pairwise S-polynomial reduces to zero."""
    els = gb.elements
    if not els:
        return True
    ctx, fld = els[0].ctx, els[0].field
    pk = _Packing(ctx.nvars, gb.order)
    st = _State(pk, fld.p)
    st.red = _Reducer(pk, fld.p)
    for g in els:
        t = _monic(_to_internal(g, pk), fld.p)
        st.polys.append(t)
        st.red.add(t)
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            l = pk.lcm(st.polys[i][0][0], st.polys[j][0][0])
            if st.red.reduce(_spoly(st, i, j, l)):
                return False
    return True


@dataclass
class RadicalTranscript:
    """Record of one Rabinowitsch test: 1 in (I, 1 - z f)?"""

    ideal: list
    f: str
    member: bool
    pairs: int = 0
    method: str = "rabinowitsch"

    def digest(self) -> str:
        h = hashlib.sha256()
        for g in self.ideal:
            h.update(g.encode())
            h.update(b";")
        h.update(b"|" + self.f.encode())
        return h.hexdigest()[:16]

    def as_dict(self):
        return {"ideal_hash": self.digest(), "generators": len(self.ideal), "f": self.f,
                "member": self.member, "pairs": self.pairs, "method": self.method}


def rabinowitsch_ideal(f: Polynomial, ideal: IdealBasis) -> IdealBasis:
    """(I, 1 - z f) in one extra variable z appended last."""
    ctx = f.ctx
    big = ctx.extended("_z")
    n = ctx.nvars
    pos = list(range(n))
    gens = [g.embed(big, pos) for g in ideal.generators]
    z = Polynomial.var(big, f.field, n)
    gens.append(Polynomial.constant(big, f.field, 1) - z * f.embed(big, pos))
    return IdealBasis(gens, GREVLEX)


def radical_member(f: Polynomial, ideal: IdealBasis, transcript: bool = False):
    """f in rad(I) over the algebraic closure of F_p, by the Rabinowitsch trick."""
    if f.is_zero():
        res, pairs = True, 0
    elif not ideal.generators:
        res, pairs = False, 0
    else:
        gb = buchberger(rabinowitsch_ideal(f, ideal), stop_on_unit=True)
        res, pairs = gb.is_unit(), gb.stats.get("pairs", 0)
    if transcript:
        return res, RadicalTranscript([str(g) for g in ideal.generators], str(f), res, pairs)
    return res
