"""Sparse multivariate polynomials over F_p with a block multigrading."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, Sequence

from .ffield import FieldElement, PrimeField

Monomial = tuple  # exponent vector, one entry per variable


class ContextMismatch(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class VariableContext:
    """Ordered variable blocks, e.g. (("x", 2), ("y", 2), ("t", 1))."""

    blocks: tuple

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple((str(n), int(s)) for n, s in self.blocks))
        names = [n for n, _ in self.blocks]
        if len(set(names)) != len(names):
            raise ValueError("block names must be unique")
        if any(s < 0 for _, s in self.blocks):
            raise ValueError("negative block size")

    @classmethod
    def flat(cls, n: int, name: str = "x") -> "VariableContext":
        return cls(((name, n),))

    @property
    def nvars(self) -> int:
        return sum(s for _, s in self.blocks)

    @property
    def nblocks(self) -> int:
        return len(self.blocks)

    def block_ranges(self) -> list[range]:
        out, start = [], 0
        for _, s in self.blocks:
            out.append(range(start, start + s))
            start += s
        return out

    def locate(self, i: int) -> tuple[int, int]:
        for b, r in enumerate(self.block_ranges()):
            if i in r:
                return b, i - r.start
        raise IndexError(i)

    def index(self, block: str | int, offset: int = 0) -> int:
        if isinstance(block, str):
            block = [n for n, _ in self.blocks].index(block)
        return self.block_ranges()[block][offset]

    @property
    def names(self) -> list[str]:
        out = []
        for n, s in self.blocks:
            if s == 1:
                out.append(n)
            else:
                out.extend(f"{n}{k + 1}" for k in range(s))
        return out

    def doubled(self, suffix: str = "'") -> "VariableContext":
        """Context with a primed copy of every block appended (for x -> y doubling)."""
        return VariableContext(self.blocks + tuple((n + suffix, s) for n, s in self.blocks))

    def extended(self, name: str, size: int = 1) -> "VariableContext":
        return VariableContext(self.blocks + ((name, size),))


@dataclass(frozen=True)
class TermOrder:
    kind: str = "grevlex"
    priority: tuple | None = None  # priority[k] = index of the k-th largest variable

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex"):
            raise ValueError(f"unknown term order {self.kind!r}")

    def key(self, m: Monomial):
        if self.priority is not None:
            m = tuple(m[i] for i in self.priority)
        if self.kind == "lex":
            return m
        return (sum(m), tuple(-e for e in reversed(m)))


LEX = TermOrder("lex")
GREVLEX = TermOrder("grevlex")


def _add(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


class Polynomial:
    """Immutable sparse polynomial; terms maps exponent tuples to residues in (0, p)."""

    __slots__ = ("ctx", "field", "terms", "_hash")

    def __init__(self, ctx: VariableContext, field: PrimeField, terms=None, _canonical=False):
        self.ctx = ctx
        self.field = field
        self._hash = None
        if _canonical:
            self.terms = terms
            return
        p = field.p
        n = ctx.nvars
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != n:
                raise DimensionMismatch(f"monomial {m} has wrong length for {n} variables")
            c = int(c) % p
            if c:
                clean[m] = (clean.get(m, 0) + c) % p
                if not clean[m]:
                    del clean[m]
        self.terms = clean

    # construction helpers
    @classmethod
    def zero(cls, ctx, field):
        return cls(ctx, field, {}, _canonical=True)

    @classmethod
    def constant(cls, ctx, field, c):
        c = int(c) % field.p
        return cls(ctx, field, {(0,) * ctx.nvars: c} if c else {}, _canonical=True)

    @classmethod
    def var(cls, ctx, field, i: int, power: int = 1):
        e = [0] * ctx.nvars
        e[i] = power
        return cls(ctx, field, {tuple(e): 1}, _canonical=True)

    @classmethod
    def monomial(cls, ctx, field, m: Monomial, c: int = 1):
        return cls(ctx, field, {tuple(m): c})

    @classmethod
    def from_vector(cls, ctx, field, monomials: Sequence[Monomial], vec):
        return cls(ctx, field, {m: int(c) for m, c in zip(monomials, vec) if int(c)})

    def to_vector(self, monomials: Sequence[Monomial]) -> list[int]:
        return [self.terms.get(m, 0) for m in monomials]

    # basic queries
    def _check(self, other: "Polynomial"):
        if self.ctx != other.ctx or self.field != other.field:
            raise ContextMismatch("polynomials live in different rings")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ctx == other.ctx and self.field == other.field and self.terms == other.terms
        if isinstance(other, int):
            return self == Polynomial.constant(self.ctx, self.field, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, self.field.p, frozenset(self.terms.items())))
        return self._hash

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def block_degree(self, m: Monomial) -> tuple:
        return tuple(sum(m[i] for i in r) for r in self.ctx.block_ranges())

    def multidegree(self):
        """Common block-degree vector of all terms, or None when not multihomogeneous."""
        degs = {self.block_degree(m) for m in self.terms}
        if len(degs) == 1:
            return degs.pop()
        if not degs:
            return (0,) * self.ctx.nblocks
        return None

    def coefficient(self, m: Monomial) -> FieldElement:
        return self.field(self.terms.get(tuple(m), 0))

    def sorted_terms(self, order: TermOrder = GREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_monomial(self, order: TermOrder = GREVLEX) -> Monomial:
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: TermOrder = GREVLEX) -> int:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: TermOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.field.inv(self.leading_coefficient(order)))

    # arithmetic
    def __add__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = Polynomial.constant(self.ctx, self.field, int(other))
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        p = self.field.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ctx, self.field, out, _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return Polynomial(self.ctx, self.field, {m: p - c for m, c in self.terms.items()}, _canonical=True)

    def __sub__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = Polynomial.constant(self.ctx, self.field, int(other))
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = int(c) % self.field.p
        if not c:
            return Polynomial.zero(self.ctx, self.field)
        p = self.field.p
        return Polynomial(self.ctx, self.field, {m: v * c % p for m, v in self.terms.items()}, _canonical=True)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(int(other))
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        p = self.field.p
        out: dict = {}
        get = out.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                out[m] = (get(m, 0) + c1 * c2) % p
        return Polynomial(self.ctx, self.field, {m: c for m, c in out.items() if c}, _canonical=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.ctx, self.field, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, m: Monomial, c: int = 1) -> "Polynomial":
        p = self.field.p
        c %= p
        if not c:
            return Polynomial.zero(self.ctx, self.field)
        return Polynomial(self.ctx, self.field,
                          {_add(k, m): v * c % p for k, v in self.terms.items()}, _canonical=True)

    # evaluation and substitution
    def evaluate(self, point) -> FieldElement:
        if len(point) != self.ctx.nvars:
            raise DimensionMismatch(f"point has {len(point)} coordinates, ring has {self.ctx.nvars}")
        p = self.field.p
        vals = [int(v) % p for v in point]
        total = 0
        for m, c in self.terms.items():
            t = c
            for v, e in zip(vals, m):
                if e:
                    t = t * pow(v, e, p) % p
            total += t
        return self.field(total)

    __call__ = evaluate

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Algebra map x_i -> images[i]; images may live in another context."""
        if len(images) != self.ctx.nvars:
            raise DimensionMismatch("need one image per variable")
        tgt = images[0].ctx if images else self.ctx
        result = Polynomial.zero(tgt, self.field)
        cache: dict = {}

        def power(i, e):
            if (i, e) not in cache:
                cache[(i, e)] = images[i] ** e
            return cache[(i, e)]

        for m, c in self.terms.items():
            t = Polynomial.constant(tgt, self.field, c)
            for i, e in enumerate(m):
                if e:
                    t = t * power(i, e)
            result = result + t
        return result

    def embed(self, ctx: VariableContext, positions: Sequence[int]) -> "Polynomial":
        """Rename variable i to positions[i] inside a larger context."""
        n = ctx.nvars
        out = {}
        for m, c in self.terms.items():
            e = [0] * n
            for i, k in enumerate(m):
                e[positions[i]] += k
            out[tuple(e)] = c
        return Polynomial(ctx, self.field, out, _canonical=True)

    # text form
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r}, F_{self.field.p})"


def variables(ctx: VariableContext, field: PrimeField) -> list[Polynomial]:
    return [Polynomial.var(ctx, field, i) for i in range(ctx.nvars)]


@lru_cache(maxsize=4096)
def _compositions(d: int, k: int) -> tuple:
    """Exponent vectors of length k and sum d in lex-decreasing order."""
    if k == 0:
        return ((),) if d == 0 else ()
    if k == 1:
        return ((d,),)
    out = []
    for first in range(d, -1, -1):
        for rest in _compositions(d - first, k - 1):
            out.append((first,) + rest)
    return tuple(out)


def monomials_of_degree(ctx: VariableContext, d, order: TermOrder = GREVLEX) -> list[Monomial]:
    """All monomials of total degree d (int) or block multidegree d (tuple), decreasing in order."""
    if isinstance(d, int):
        if d < 0:
            raise ValueError("negative degree")
        mons = list(_compositions(d, ctx.nvars))
    else:
        d = tuple(d)
        if len(d) != ctx.nblocks or min(d, default=0) < 0:
            raise ValueError("bad multidegree")
        parts = [_compositions(di, s) for di, (_, s) in zip(d, ctx.blocks)]
        mons = [sum(ms, ()) for ms in itertools.product(*parts)]
    return sorted(mons, key=order.key, reverse=True)


def multidegrees_of_total(ctx: VariableContext, d: int, skip_blocks=()) -> list[tuple]:
    """Block multidegrees summing to d, graded-lex decreasing; blocks in skip_blocks stay at 0."""
    active = [b for b in range(ctx.nblocks) if b not in set(skip_blocks) and ctx.blocks[b][1] > 0]
    out = []
    for comp in _compositions(d, len(active)):
        md = [0] * ctx.nblocks
        for b, e in zip(active, comp):
            md[b] = e
        out.append(tuple(md))
    return out


# ---------------------------------------------------------------- text grammar

def _fmt_coeff(c: int, p: int) -> tuple[str, int]:
    s = c - p if c > p // 2 else c
    return ("-" if s < 0 else "+"), abs(s)


def format_polynomial(f: Polynomial, order: TermOrder = GREVLEX) -> str:
    if not f.terms:
        return "0"
    names = f.ctx.names
    parts = []
    for m, c in f.sorted_terms(order):
        sign, a = _fmt_coeff(c, f.field.p)
        factors = []
        for name, e in zip(names, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mono = "*".join(factors)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_NUM = re.compile(r"\d+")


class _Parser:
    def __init__(self, text: str, ctx: VariableContext, field: PrimeField):
        self.s = text.replace(" ", "").replace("−", "-").replace("**", "^")
        self.i = 0
        self.ctx = ctx
        self.field = field
        self.names = sorted(((n, k) for k, n in enumerate(ctx.names)), key=lambda t: -len(t[0]))

    def peek(self):
        return self.s[self.i] if self.i < len(self.s) else ""

    def parse(self) -> Polynomial:
        if not self.s:
            raise ParseError("empty polynomial")
        f = self.expr()
        if self.i != len(self.s):
            raise ParseError(f"unexpected {self.s[self.i:]!r}")
        return f

    def expr(self):
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.peek() == "-" else 1
            self.i += 1
        f = self.term().scale(sign)
        while self.peek() in ("+", "-") and self.peek():
            sign = -1 if self.peek() == "-" else 1
            self.i += 1
            f = f + self.term().scale(sign)
        return f

    def term(self):
        f = self.factor()
        while True:
            c = self.peek()
            if c == "*":
                self.i += 1
                f = f * self.factor()
            elif c and (c == "(" or c.isdigit() or self._match_name()):
                f = f * self.factor()
            else:
                return f

    def _match_name(self):
        for n, k in self.names:
            if self.s.startswith(n, self.i):
                return n, k
        return None

    def factor(self):
        f = self.atom()
        if self.peek() == "^":
            self.i += 1
            m = _NUM.match(self.s, self.i)
            if not m:
                raise ParseError("exponent expected")
            self.i = m.end()
            f = f ** int(m.group())
        return f

    def atom(self):
        c = self.peek()
        if c == "(":
            self.i += 1
            f = self.expr()
            if self.peek() != ")":
                raise ParseError("missing )")
            self.i += 1
            return f
        if c == "-":
            self.i += 1
            return -self.factor()
        m = _NUM.match(self.s, self.i)
        if m:
            self.i = m.end()
            return Polynomial.constant(self.ctx, self.field, int(m.group()))
        hit = self._match_name()
        if hit:
            self.i += len(hit[0])
            return Polynomial.var(self.ctx, self.field, hit[1])
        raise ParseError(f"cannot parse at {self.s[self.i:]!r}")


def parse_polynomial(text: str, ctx: VariableContext, field: PrimeField) -> Polynomial:
    return _Parser(text, ctx, field).parse()
