"""Integer lattice helpers: Hermite normal form, integer kernels, integer solves.

All routines work on plain Python ints (arbitrary precision) and return
tuples so results can be hashed and compared directly.
"""

from __future__ import annotations

from typing import Optional, Sequence

IntVec = tuple[int, ...]


def _sub_mul(a: list[int], q: int, b: list[int]) -> list[int]:
    return [x - q * y for x, y in zip(a, b)]


def _echelon(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Row-echelonize ``rows`` on their first ``ncols`` entries with unimodular ops.

    Returns the transformed rows (zero rows moved below the pivot rows) and the
    pivot column of each of the leading ``len(pivots)`` rows. Pivots are positive.
    """
    A = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r >= len(A):
            break
        while True:
            nz = [i for i in range(r, len(A)) if A[i][col] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(A[i][col]))
            A[r], A[p] = A[p], A[r]
            clean = True
            for i in range(r + 1, len(A)):
                if A[i][col]:
                    A[i] = _sub_mul(A[i], A[i][col] // A[r][col], A[r])
                    if A[i][col]:
                        clean = False
            if clean:
                break
        if A[r][col] != 0:
            if A[r][col] < 0:
                A[r] = [-x for x in A[r]]
            pivots.append(col)
            r += 1
    return A, pivots


def hnf(rows: Sequence[Sequence[int]], n: int) -> tuple[IntVec, ...]:
    """Row-style Hermite normal form of the lattice generated by ``rows``.

    Zero rows are dropped; pivots are positive and entries above a pivot lie in
    ``[0, pivot)``. Equal lattices give identical output.
    """
    A = [list(r) for r in rows if any(r)]
    for r in A:
        if len(r) != n:
            raise ValueError(f"row of length {len(r)} in a lattice of dimension {n}")
    A, pivots = _echelon(A, n)
    for r, col in enumerate(pivots):
        p = A[r][col]
        for i in range(r):
            q = A[i][col] // p
            if q:
                A[i] = _sub_mul(A[i], q, A[r])
    return tuple(tuple(row) for row in A[: len(pivots)])


def pivot_columns(basis: Sequence[Sequence[int]]) -> list[int]:
    return [next(j for j, x in enumerate(row) if x) for row in basis]


def integer_kernel(M: Sequence[Sequence[int]], n: int) -> tuple[IntVec, ...]:
    """HNF basis of ``{r in Z^n : M r = 0}`` for an integer matrix ``M`` (p x n)."""
    p = len(M)
    rows = [[M[j][i] for j in range(p)] + [int(i == t) for t in range(n)] for i in range(n)]
    A, pivots = _echelon(rows, p)
    kernel = [row[p:] for row in A[len(pivots):]]
    return hnf(kernel, n)


def solve_integer(M: Sequence[Sequence[int]], rhs: Sequence[int], n: int) -> Optional[IntVec]:
    """Some integer ``x`` with ``M x = rhs``, or ``None`` when no solution exists."""
    p = len(M)
    rows = [[M[j][i] for j in range(p)] + [int(i == t) for t in range(n)] for i in range(n)]
    A, pivots = _echelon(rows, p)
    res = list(rhs)
    x = [0] * n
    for i, col in enumerate(pivots):
        piv = A[i][col]
        if res[col] % piv:
            return None
        y = res[col] // piv
        if y:
            res = _sub_mul(res, y, A[i][:p])
            x = [a + y * b for a, b in zip(x, A[i][p:])]
    if any(res):
        return None
    return tuple(x)


def reduce_mod(basis: Sequence[Sequence[int]], v: Sequence[int]) -> IntVec:
    """Canonical coset representative of ``v`` modulo an HNF basis.

    Each pivot coordinate of the result lies in ``[0, pivot)``.
    """
    w = list(v)
    for row, col in zip(basis, pivot_columns(basis)):
        q = w[col] // row[col]
        if q:
            w = _sub_mul(w, q, row)
    return tuple(w)


def is_member(basis: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Exact membership by back-substitution against an HNF basis."""
    w = list(v)
    piv = dict(zip(pivot_columns(basis), basis))
    for col in range(len(w)):
        if not w[col]:
            continue
        row = piv.get(col)
        if row is None or w[col] % row[col]:
            return False
        w = _sub_mul(w, w[col] // row[col], row)
    return True
