"""Dense exact linear algebra over F_p on int64 numpy arrays.

All routines require p < 2^31 so that a product of two residues fits in int64.
"""

from __future__ import annotations

import numpy as np


def as_mod(a, p: int) -> np.ndarray:
    return np.asarray(a, dtype=np.int64) % p


def rref(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns. Zero rows are dropped."""
    m = as_mod(a, p).copy()
    if m.ndim != 2:
        raise ValueError("expected a 2-d array")
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = m[r] * inv % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            m[hit] = (m[hit] - np.outer(col[hit], m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(a, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a, p: int) -> np.ndarray:
    """Basis of {x : a x = 0} as rows, in the canonical form dual to the RREF of a.

    Each basis vector has a 1 in exactly one free column and 0 in the other free
    columns, ordered by free column, so the result is deterministic.
    """
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    r, piv = rref(a, p)
    free = [c for c in range(cols) if c not in set(piv)]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        out[i, f] = 1
        for j, pc in enumerate(piv):
            out[i, pc] = (-r[j, f]) % p
    return out


def row_space_basis(a, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return np.zeros((0, a.shape[1] if a.ndim == 2 else 0), dtype=np.int64)
    return rref(a, p)[0]


def extend_basis(span: np.ndarray, candidates: np.ndarray, p: int) -> list[int]:
    """Indices of candidate rows that, taken greedily in order, enlarge span's row space."""
    cur, piv = (rref(span, p) if span.shape[0] else (np.zeros((0, candidates.shape[1]), np.int64), []))
    chosen = []
    for i in range(candidates.shape[0]):
        v = candidates[i] % p
        # reduce v against current echelon rows
        for j, pc in enumerate(piv):
            if v[pc]:
                v = (v - v[pc] * cur[j]) % p
        if v.any():
            chosen.append(i)
            cur, piv = rref(np.vstack([cur, v]), p)
    return chosen


def solve(a, b, p: int):
    """One solution x of a x = b, or None when inconsistent."""
    a = as_mod(a, p)
    b = as_mod(b, p).reshape(-1, 1)
    aug = np.hstack([a, b])
    r, piv = rref(aug, p)
    n = a.shape[1]
    if n in piv:
        return None
    x = np.zeros(n, dtype=np.int64)
    for j, pc in enumerate(piv):
        x[pc] = r[j, n]
    return x


def matmul(a, b, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape[1] * (p - 1) ** 2 < 2**63:
        return (a @ b) % p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(a.shape[1]):
        out = (out + np.outer(a[:, k], b[k]) % p) % p
    return out


def inverse(a, p: int) -> np.ndarray:
    a = as_mod(a, p)
    n = a.shape[0]
    r, piv = rref(np.hstack([a, np.eye(n, dtype=np.int64)]), p)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return r[:, n:]
