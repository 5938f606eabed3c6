"""Separating degrees: witness scans (lower bounds) and radical membership (exact values)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import grp, invar
from .groebner import IdealBasis, radical_member
from .invar import Block, ModuleSpec, _basis_array, _piece
from .mpoly import Polynomial, _compositions, format_polynomial

FORMAT_VERSION = 1


class SeptoolError(ValueError):
    pass


class OrbitCollision(SeptoolError):
    pass


class ClaimMismatch(SeptoolError):
    pass


class IrreducibleListUnverified(SeptoolError):
    pass


class PrimeTooSmall(SeptoolError):
    pass


class CapExceeded(SeptoolError):
    pass


@dataclass(frozen=True)
class NotSeparatedUpTo:
    cap: int


@dataclass
class WitnessPair:
    module: ModuleSpec
    v: tuple
    w: tuple  # the second point v'
    claimed: int | None = None
    hint: Polynomial | None = None
    name: str = ""


@dataclass
class SeparationCertificate:
    module: str
    kind: str  # witness-lower-bound | radical-upper-bound | radical-exact | pairwise-scan
    degree: int | None
    evidence: list = field(default_factory=list)
    invariant: str | None = None
    points: tuple | None = None

    def as_dict(self) -> dict:
        d = {"version": FORMAT_VERSION, "module": self.module, "kind": self.kind,
             "degree": self.degree, "evidence": self.evidence}
        if self.invariant is not None:
            d["invariant"] = self.invariant
        if self.points is not None:
            d["points"] = [list(x) for x in self.points]
        return d


# ------------------------------------------------------------ witness scan

def _block_values(point, module: ModuleSpec):
    p = module.field.p
    out = []
    for r in module.ctx.block_ranges():
        out.append([int(point[i]) % p for i in r])
    return out


def _monomial_values(vals: Sequence[int], d: int, p: int) -> np.ndarray:
    res = []
    for e in _compositions(d, len(vals)):
        t = 1
        for x, k in zip(vals, e):
            if k:
                t = t * pow(x, k, p) % p
        res.append(t)
    return np.array(res, dtype=np.int64)


def _piece_values(bvals, md, p) -> np.ndarray:
    out = np.ones(1, dtype=np.int64)
    for vals, d in zip(bvals, md):
        if d > 0:
            out = np.kron(out, _monomial_values(vals, d, p)) % p
    return out


@dataclass
class ScanResult:
    degree: int | None
    invariant: Polynomial | None
    table: list  # per degree: list of [multidegree, dim, agree]
    cap: int


def scan_separation(module: ModuleSpec, v, w, cap: int | None = None) -> ScanResult:
    """Graded scan for the least degree with an invariant taking different values at v and w."""
    p = module.field.p
    n = module.dim
    if len(v) != n or len(w) != n:
        raise SeptoolError("points must match the module dimension")
    cap = module.order if cap is None else cap
    bv, bw = _block_values(v, module), _block_values(w, module)
    # a block zero at both points only contributes invariants vanishing at both
    skip = {i for i, (a, b) in enumerate(zip(bv, bw)) if not any(a) and not any(b)}
    table = []
    for d in range(1, cap + 1):
        rows = []
        for md in invar._multidegrees(module, d):
            if any(md[i] for i in skip):
                continue
            pc = _piece(module.blocks, md)
            basis = _basis_array(pc, p)
            if basis.shape[0] == 0:
                continue
            fv = basis @ _piece_values(bv, md, p) % p
            fw = basis @ _piece_values(bw, md, p) % p
            diff = np.nonzero(fv != fw)[0]
            rows.append([list(md), int(basis.shape[0]), not diff.size])
            if diff.size:
                f = invar._to_polys(basis[diff[:1]], pc, module, md)[0]
                table.append({"degree": d, "pieces": rows})
                return ScanResult(d, f, table, cap)
        table.append({"degree": d, "pieces": rows})
    return ScanResult(None, None, table, cap)


def min_separating_degree(pair: WitnessPair, cap: int | None = None):
    res = scan_separation(pair.module, pair.v, pair.w, cap)
    return res.degree if res.degree is not None else NotSeparatedUpTo(res.cap)


def _is_invariant(f: Polynomial, module: ModuleSpec) -> bool:
    return all(invar.act(g, f, module) == f for g in module.group.gen_index)


def verify_witness(pair: WitnessPair, cap: int | None = None) -> SeparationCertificate:
    module = pair.module
    same, g = grp.same_orbit(module.rep, pair.v, pair.w)
    if same:
        raise OrbitCollision(f"{pair.name or 'pair'}: points are related by {module.rep.word_of(g)}")
    res = scan_separation(module, pair.v, pair.w, cap)
    if pair.claimed is not None and res.degree != pair.claimed:
        raise ClaimMismatch(f"{pair.name or 'pair'}: separates in degree {res.degree}, claimed {pair.claimed}")
    if res.degree is None:
        raise ClaimMismatch(f"{pair.name or 'pair'}: not separated up to degree {res.cap}")
    evidence = list(res.table)
    if pair.hint is not None:
        h = pair.hint
        hv, hw = int(h.evaluate(pair.v)), int(h.evaluate(pair.w))
        ok = _is_invariant(h, module) and hv != hw and h.degree() == res.degree
        evidence.append({"hint": format_polynomial(h), "invariant_and_separates": ok,
                         "values": [hv, hw]})
        if not ok:
            raise ClaimMismatch(f"{pair.name or 'pair'}: hint invariant does not certify the claim")
    return SeparationCertificate(module.describe(), "witness-lower-bound", res.degree, evidence,
                                 format_polynomial(res.invariant), (tuple(pair.v), tuple(pair.w)))


# ---------------------------------------------------------- radical method

def delta_map(module: ModuleSpec):
    """f -> f(x) - f(y) into the doubled context."""
    ctx = module.ctx
    dctx = ctx.doubled()
    n = ctx.nvars
    xs, ys = list(range(n)), list(range(n, 2 * n))

    def delta(f: Polynomial) -> Polynomial:
        return f.embed(dctx, xs) - f.embed(dctx, ys)

    return delta


@dataclass
class RadicalResult:
    value: int          # exact beta_sep, or the bound when exact is False
    exact: bool
    certificate: SeparationCertificate
    gb_runs: int = 0


def betasep_via_radical(module: ModuleSpec, generators: invar.GeneratingSet | None = None,
                        at_most: int | None = None) -> RadicalResult:
    """beta_sep over the algebraic closure from the doubled-variable radical criterion.

    With at_most = M the answer may stop at "beta_sep <= M" once that is certified;
    otherwise the exact value is found by lowering d through the generator degrees
    until some delta(f) leaves the radical.
    """
    gs = generators if generators is not None else invar.minimal_generators(module)
    gens = sorted(gs.generators, key=lambda t: sum(t[1]))
    name = module.describe()
    degs = sorted({sum(md) for _, md in gens})
    if not degs:
        cert = SeparationCertificate(name, "radical-exact", 0, [{"note": "no invariants of positive degree"}])
        return RadicalResult(0, True, cert)
    delta = delta_map(module)
    dpolys = [(delta(f), sum(md), f) for f, md in gens]
    evidence = []
    runs = 0

    def test(d: int, lo: int, hi: int):
        """All delta(f) with lo < deg f <= hi in rad(delta(h) : deg h <= d)? Returns failing f."""
        nonlocal runs
        ideal = IdealBasis([q for q, k, _ in dpolys if k <= d])
        for q, k, f in dpolys:
            if lo < k <= hi:
                runs += 1
                ok, tr = radical_member(q, ideal, transcript=True)
                rec = tr.as_dict()
                rec.update({"d": d, "generator": format_polynomial(f), "generator_degree": k})
                rec.pop("f")
                evidence.append(rec)
                if not ok:
                    return f
        return None

    top = degs[-1]
    floor = -1  # every d <= floor is known to fail
    if at_most is not None:
        if top <= at_most:
            cert = SeparationCertificate(name, "radical-upper-bound", at_most,
                                         [{"note": f"no generator above degree {at_most}"}])
            return RadicalResult(at_most, False, cert)
        if at_most > 0 and test(at_most, at_most, top) is None:
            cert = SeparationCertificate(name, "radical-upper-bound", at_most, evidence)
            return RadicalResult(at_most, False, cert, runs)
        floor = at_most
    cur = top
    cands = [d for d in sorted({0, *degs}, reverse=True) if d < top]
    for d in cands:
        if d <= floor:
            break
        # gens above cur are already in rad(J_cur) which lies inside rad(J_d) once these pass
        if test(d, d, cur) is not None:
            break
        cur = d
    cert = SeparationCertificate(name, "radical-exact", cur, evidence)
    return RadicalResult(cur, True, cert, runs)


# -------------------------------------------------------- group level

def verify_irreducibles(group: grp.MatrixRep, blocks: Sequence[Block]) -> dict:
    p = group.field.p
    for b in blocks:
        group.images(b.matrices)
        if not invar.is_irreducible(b, p):
            raise IrreducibleListUnverified(f"block {b.label} is reducible")
    for a, b in itertools.combinations(blocks, 2):
        if a.size == b.size and invar.intertwiner_dim(a, b, p):
            raise IrreducibleListUnverified(f"blocks {a.label} and {b.label} are isomorphic")
    total = sum(b.size ** 2 for b in blocks)
    if total != group.order:
        raise IrreducibleListUnverified(f"sum of squared dimensions {total} != |G| = {group.order}")
    return {"blocks": len(blocks), "sum_dim_squared": total}


def _traces(group: grp.MatrixRep, block: Block) -> tuple:
    p = group.field.p
    return tuple(sum(m[i][i] for i in range(len(m))) % p for m in group.images(block.matrices))


def irreducible_permutations(group: grp.MatrixRep, blocks: Sequence[Block], autos) -> list[tuple]:
    """Distinct permutations of the blocks induced by rho -> rho o alpha."""
    tr = [_traces(group, b) for b in blocks]
    where = {t: i for i, t in enumerate(tr)}
    perms = set()
    for a in autos:
        perm = tuple(where[tuple(t[a[g]] for g in range(group.order))] for t in tr)
        perms.add(perm)
    return sorted(perms)


def subset_orbits(items: Sequence[int], k: int, perms: Sequence[tuple]) -> list[tuple]:
    """Orbit representatives (lexicographically least) of k-subsets of items."""
    seen = set()
    reps = []
    for s in itertools.combinations(items, k):
        if s in seen:
            continue
        orb = {tuple(sorted(pm[i] for i in s)) for pm in perms} | {s}
        seen |= orb
        reps.append(min(orb))
    return reps


@dataclass
class SubsetResult:
    blocks: list
    value: int
    relation: str  # "=" or "<="
    orbit_size: int = 1


@dataclass
class BetaSepReport:
    group: str
    prime: int
    mu: int
    k: int
    value: int | None
    lower_bound: int | None
    witness: str | None
    subsets: list = field(default_factory=list)
    trail: list = field(default_factory=list)
    certificates: list = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return self.value is not None and self.value == self.lower_bound

    def as_dict(self) -> dict:
        return {
            "version": FORMAT_VERSION, "group": self.group, "prime": self.prime, "mu": self.mu,
            "k": self.k, "betasep": self.value, "lower_bound": self.lower_bound,
            "witness": self.witness, "agree": self.agree,
            "subsets": [{"blocks": s.blocks, "value": s.value, "relation": s.relation,
                         "orbit_size": s.orbit_size} for s in self.subsets],
            "trail": self.trail, "certificates": self.certificates,
            "field_note": "upper bounds hold over the algebraic closure of F_p; "
                          "witness lower bounds are exhibited over F_p",
        }


def betasep_group(name: str, group: grp.MatrixRep, irreducibles: Sequence[Block],
                  witnesses: Sequence[WitnessPair] = (), subset_size: int | None = None,
                  automorphisms=None, keep_certificates: bool = False, progress=None) -> BetaSepReport:
    """beta_sep^K(G) as the max over (mu(G)+1)-subsets of nontrivial irreducibles."""
    p = group.field.p
    info = verify_irreducibles(group, irreducibles)
    maxdim = max(b.size for b in irreducibles)
    if p <= (maxdim - 1) * group.order:
        raise PrimeTooSmall(f"need p > (maxdim - 1)|G| = {(maxdim - 1) * group.order}")
    m = grp.mu(group)
    k = subset_size if subset_size is not None else m + 1
    trail = [f"irreducibles verified: {info['blocks']} blocks, sum of squares {info['sum_dim_squared']}",
             f"mu(G) = {m}; subsets of size k = {k}"]
    ident = grp.identity_matrix(1)
    nontriv = [i for i, b in enumerate(irreducibles) if not (b.size == 1 and all(x == ident for x in b.matrices))]
    if len(nontriv) < len(irreducibles):
        trail.append("trivial summand dropped: beta_sep(V + trivial) = max(beta_sep(V), 1)")
    k = min(k, len(nontriv))
    autos = automorphisms if automorphisms is not None else grp.automorphisms(group)
    perms = irreducible_permutations(group, irreducibles, autos)
    trail.append(f"|Aut(G)| = {len(autos)}; subsets identified along automorphism orbits")

    def module_of(idx):
        return ModuleSpec(group, [irreducibles[i] for i in idx])

    report = BetaSepReport(name, p, m, k, None, None, None, trail=trail)
    best = 0
    # singletons fix an initial exact value; k-subsets are then tested against it
    stages = [1] if k > 1 else []
    stages.append(k)
    for size in stages:
        reps = subset_orbits(nontriv, size, perms)
        for s in reps:
            mod = module_of(s)
            res = betasep_via_radical(mod, at_most=best if size == k and best > 0 else None)
            if res.exact:
                best = max(best, res.value)
            orbit = len({tuple(sorted(pm[i] for i in s)) for pm in perms} | {s})
            if size == k:
                report.subsets.append(SubsetResult([irreducibles[i].label for i in s], res.value,
                                                   "=" if res.exact else "<=", orbit))
            if keep_certificates:
                report.certificates.append(res.certificate.as_dict())
            if progress:
                progress(size, [irreducibles[i].label for i in s], res)
    if not nontriv:
        best = 1 if irreducibles else 0
    report.value = best
    lower = None
    for wp in witnesses:
        cert = verify_witness(wp)
        if lower is None or cert.degree > lower:
            lower = cert.degree
            report.witness = wp.name
        report.certificates.append(cert.as_dict())
    report.lower_bound = lower
    return report


# --------------------------------------------------------------- Davenport

def davenport(cyclic_orders: Sequence[int], cap: int = 256) -> int:
    """Largest length of a minimal zero-sum sequence over the product of cyclic groups."""
    orders = [int(o) for o in cyclic_orders]
    if any(o < 1 for o in orders):
        raise ValueError("cyclic orders must be positive")
    n = 1
    for o in orders:
        n *= o
    if n > cap:
        raise CapExceeded(f"group order {n} exceeds {cap}")
    elems = list(itertools.product(*[range(o) for o in orders]))
    index = {e: i for i, e in enumerate(elems)}
    add = [[index[tuple((a + b) % o for a, b, o in zip(x, y, orders))] for y in elems] for x in elems]
    if n == 1:
        return 1
    best = 0

    # zero-sum-free sequences; each extends to a minimal zero-sum sequence by one element
    def dfs(start: int, sums: int, length: int):
        nonlocal best
        best = max(best, length)
        for g in range(max(start, 1), n):
            row = add[g]
            new = sums | (1 << g)
            s = sums
            while s:
                low = s & -s
                new |= 1 << row[low.bit_length() - 1]
                s ^= low
            if not new & 1:
                dfs(g, new, length + 1)

    dfs(1, 0, 0)
    return best + 1
