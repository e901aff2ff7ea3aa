"""Matrix permanent by Ryser's inclusion-exclusion formula."""

from __future__ import annotations

import numpy as np

MAX_ORDER = 20


def permanent(matrix):
    """
    Permanent of a square matrix, Ryser's formula with Gray-code updates.

    Parameters
    ----------
    matrix : array_like, shape (n, n)
        Square matrix, n <= 20.  Integer input is evaluated in exact
        integer arithmetic.

    Returns
    -------
    permanent : number
        ``int`` for integer input, otherwise float or complex.
    """
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("permanent needs a square matrix")
    n = m.shape[0]
    if n > MAX_ORDER:
        raise ValueError(f"matrix of order {n} exceeds the limit {MAX_ORDER}")
    if n == 0:
        return 1
    exact = m.dtype.kind in "iub" or (m.dtype == object)
    if exact:
        cols = [[m[i, j] if m.dtype == object else int(m[i, j]) for i in range(n)] for j in range(n)]
        row_sums = [0] * n
        total = 0
    else:
        cols = [m[:, j] for j in range(n)]
        row_sums = np.zeros(n, dtype=np.result_type(m.dtype, float))
        total = row_sums.dtype.type(0)

    # visit subsets S of columns in Gray-code order; sign (-1)^|S|
    gray_prev = 0
    for k in range(1, 1 << n):
        gray = k ^ (k >> 1)
        changed = gray ^ gray_prev
        j = changed.bit_length() - 1
        col = cols[j]
        if gray & changed:
            if exact:
                row_sums = [r + c for r, c in zip(row_sums, col)]
            else:
                row_sums = row_sums + col
        else:
            if exact:
                row_sums = [r - c for r, c in zip(row_sums, col)]
            else:
                row_sums = row_sums - col
        gray_prev = gray
        if exact:
            p = 1
            for r in row_sums:
                p *= r
                if p == 0:
                    break
        else:
            p = np.prod(row_sums)
        if bin(gray).count("1") % 2:
            total -= p
        else:
            total += p
    return total if n % 2 == 0 else -total
