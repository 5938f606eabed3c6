"""Naive reference implementations used only as test oracles.

Everything here works on plain dicts {exponent tuple: residue} and Python ints,
sharing no code with the package beyond what the tests pass in.
"""

from itertools import combinations, product


def padd(f, g, p):
    h = dict(f)
    for m, c in g.items():
        h[m] = (h.get(m, 0) + c) % p
        if not h[m]:
            del h[m]
    return h


def pscale(f, c, m, p):
    return {tuple(a + b for a, b in zip(k, m)): v * c % p for k, v in f.items() if v * c % p}


def lex_lead(f):
    return max(f)


def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def naive_reduce(f, G, p):
    """Full reduction of f by G under lex, one term at a time."""
    f = dict(f)
    r = {}
    while f:
        m = lex_lead(f)
        c = f[m]
        for g in G:
            lm = lex_lead(g)
            if divides(lm, m):
                q = tuple(a - b for a, b in zip(m, lm))
                f = padd(f, pscale(g, (-c * pow(g[lm], p - 2, p)) % p, q, p), p)
                break
        else:
            r[m] = c
            del f[m]
    return r


def naive_groebner_lex(F, p, limit=400):
    """Textbook Buchberger with no criteria, then reduction to the reduced basis."""
    G = [dict(f) for f in F if f]
    pairs = list(combinations(range(len(G)), 2))
    steps = 0
    while pairs:
        steps += 1
        if steps > limit:
            raise RuntimeError("oracle step limit")
        i, j = pairs.pop(0)
        f, g = G[i], G[j]
        a, b = lex_lead(f), lex_lead(g)
        l = tuple(max(x, y) for x, y in zip(a, b))
        s = padd(pscale(f, pow(f[a], p - 2, p), tuple(x - y for x, y in zip(l, a)), p),
                 pscale(g, (-pow(g[b], p - 2, p)) % p, tuple(x - y for x, y in zip(l, b)), p), p)
        h = naive_reduce(s, G, p)
        if h:
            G.append(h)
            pairs.extend((k, len(G) - 1) for k in range(len(G) - 1))
    # minimalize and reduce
    G = [g for g in G if g]
    keep = []
    for i, g in enumerate(G):
        lg = lex_lead(g)
        dominated = False
        for j, h in enumerate(G):
            if j == i:
                continue
            lh = lex_lead(h)
            if divides(lh, lg) and (lh != lg or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        r = naive_reduce(g, keep[:i] + keep[i + 1:], p)
        inv = pow(r[lex_lead(r)], p - 2, p)
        out.append({m: c * inv % p for m, c in r.items()})
    return sorted(out, key=lex_lead)


def matvec(M, v, p):
    return tuple(sum(a * b for a, b in zip(row, v)) % p for row in M)


def matmul(A, B, p):
    n = len(B[0])
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(len(B))) % p for j in range(n))
                 for i in range(len(A)))


def closure(gens, p):
    """All products of the generating matrices (set-based BFS)."""
    n = len(gens[0])
    e = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = matmul(a, g, p)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def brute_orbit(mats, v, p):
    return {matvec(M, v, p) for M in mats}


def eval_poly(f, point, p):
    s = 0
    for m, c in f.items():
        t = c
        for x, e in zip(point, m):
            t = t * pow(x, e, p) % p
        s = (s + t) % p
    return s


def brute_mu(elements, mul, identity):
    """Largest intersection-independent family of subgroups by exhaustive search."""
    n = len(elements)
    subs = set()
    # subgroups generated by at most two elements suffice for the small groups used
    for a, b in product(range(n), repeat=2):
        S = {identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in (a, b):
                    y = mul(x, g)
                    if y not in S:
                        S.add(y)
                        nxt.append(y)
            frontier = nxt
        subs.add(frozenset(S))
    # close under joins of pairs to pick up 3-generated subgroups
    changed = True
    while changed:
        changed = False
        for A, B in list(combinations(subs, 2)):
            S = set(A | B)
            frontier = list(S)
            while frontier:
                nxt = []
                for x in frontier:
                    for g in A | B:
                        y = mul(x, g)
                        if y not in S:
                            S.add(y)
                            nxt.append(y)
                frontier = nxt
            if frozenset(S) not in subs:
                subs.add(frozenset(S))
                changed = True
    proper = [S for S in subs if len(S) < n]
    best = 0

    def indep(fam):
        for i in range(len(fam)):
            rest = frozenset(range(n))
            for j, T in enumerate(fam):
                if j != i:
                    rest = rest & T
            if rest <= fam[i]:
                return False
        return True

    for k in range(1, 6):
        if any(indep(list(c)) for c in combinations(proper, k)):
            best = k
        else:
            break
    return best


def zero_sum_free_max(orders):
    """Longest zero-sum-free sequence over a product of cyclic groups, by plain recursion."""
    elems = [e for e in product(*[range(n) for n in orders]) if any(e)]

    def add(a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, orders))

    zero = tuple(0 for _ in orders)
    best = 0

    def rec(start, sums, length):
        nonlocal best
        best = max(best, length)
        for i in range(start, len(elems)):
            g = elems[i]
            new = {add(s, g) for s in sums} | {g}
            if zero in new:
                continue
            rec(i, sums | new, length + 1)

    rec(0, frozenset(), 0)
    return best
