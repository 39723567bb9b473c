"""Linear algebra over the prime field F_p, sized for small exact systems."""

from __future__ import annotations

import numpy as np

SMALL_PRIMES = (2, 3, 5, 7)


def check_prime(p: int) -> int:
    if p not in SMALL_PRIMES:
        raise ValueError(f"field characteristic must be one of {SMALL_PRIMES}, got {p}")
    return p


def rank_mod_p(A: np.ndarray, p: int) -> int:
    """Rank of an integer matrix reduced mod ``p`` (vectorized row reduction)."""
    M = np.array(A, dtype=np.int64) % p
    rows, cols = M.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        inv = pow(int(M[r, c]), -1, p)
        M[r] = (M[r] * inv) % p
        col = M[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            M[hit] = (M[hit] - np.outer(col[hit], M[r])) % p
        r += 1
    return r


def solve_lexmin(rows: list[list[int]], rhs: list[int], n: int, p: int) -> list[int] | None:
    """Lexicographically smallest solution of ``rows @ x = rhs`` over F_p, or None.

    Columns are eliminated from the last variable backwards, so each pivot
    variable depends only on free variables of smaller index; setting every
    free variable to 0 then yields the lexicographic minimum.
    """
    aug = [[c % p for c in row] + [b % p] for row, b in zip(rows, rhs)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(n - 1, -1, -1):
        piv = next((i for i in range(r, len(aug)) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], -1, p)
        aug[r] = [(v * inv) % p for v in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(a - f * b) % p for a, b in zip(aug[i], aug[r])]
        pivots.append((r, c))
        r += 1
    for i in range(r, len(aug)):
        if aug[i][n]:
            return None
    x = [0] * n
    for row, c in pivots:
        x[c] = aug[row][n]
    return x
