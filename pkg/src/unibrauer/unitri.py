"""Unitriangular shapes for nonnegative integer matrices.

Lower unitriangular means ones on the diagonal and zeros above it. Permuting
the columns of A by sigma gives the matrix whose column j is A's column
sigma[j].

Both searches are greedy and, it turns out, complete. In a column permutation
making A lower unitriangular, row 0 must meet its diagonal column in a 1 and
every other column in a 0. So the column for row 0 is forced, and the argument
repeats on the rows below. For simultaneous row and column orders, any row
whose only nonzero entry among the remaining columns is a single 1 can come
first: deleting a diagonal pair from a lower unitriangular matrix leaves one.
The exhaustive searches are kept as referees and fallbacks.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

Matrix = list[list[int]]

EXHAUSTIVE_LIMIT = 8


class MatrixError(ValueError):
    pass


def _check_square(A, name="A") -> int:
    n = len(A)
    if any(len(row) != n for row in A):
        raise MatrixError(f"{name} is not square")
    if any(x < 0 for row in A for x in row):
        raise MatrixError(f"{name} has a negative entry")
    return n


def is_lower_unitriangular(C) -> bool:
    n = len(C)
    return all(len(row) == n for row in C) and all(
        C[i][j] == (1 if i == j else C[i][j] if j < i else 0) for i in range(n) for j in range(n)
    )


def matmul(A, B) -> Matrix:
    if not A or len(A[0]) != len(B):
        raise MatrixError("size mismatch")
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def verify_factorization(A, B, C) -> bool:
    """True iff AB = C exactly and C is lower unitriangular."""
    n = len(C)
    if len(A) != n or len(B) != n or any(len(r) != n for r in (*A, *B, *C)):
        raise MatrixError("size mismatch")
    return matmul(A, B) == [list(r) for r in C] and is_lower_unitriangular(C)


def permute_columns(A, sigma) -> Matrix:
    return [[row[sigma[j]] for j in range(len(sigma))] for row in A]


def permute(A, rows, cols) -> Matrix:
    return [[A[r][c] for c in cols] for r in rows]


@dataclass(frozen=True)
class ColumnResult:
    sigma: tuple[int, ...] | None
    path: str  # greedy | exhaustive | none

    @property
    def ok(self) -> bool:
        return self.sigma is not None


def _greedy_columns(A) -> tuple[int, ...] | None:
    n = len(A)
    free = list(range(n))
    sigma = []
    for i in range(n):
        nz = [k for k in free if A[i][k]]
        cand = [k for k in nz if A[i][k] == 1]
        if not cand:
            return None
        k = min(cand)  # ties are broken by column index, then validated
        sigma.append(k)
        free.remove(k)
    sigma = tuple(sigma)
    return sigma if is_lower_unitriangular(permute_columns(A, sigma)) else None


def exhaustive_columns(A) -> tuple[int, ...] | None:
    n = len(A)
    for sigma in permutations(range(n)):
        if is_lower_unitriangular(permute_columns(A, sigma)):
            return sigma
    return None


def column_unitriangularize(A) -> ColumnResult:
    """A column permutation making A lower unitriangular, if one exists."""
    n = _check_square(A)
    sigma = _greedy_columns(A)
    if sigma is not None:
        return ColumnResult(sigma, "greedy")
    if n <= EXHAUSTIVE_LIMIT:
        sigma = exhaustive_columns(A)
        if sigma is not None:
            return ColumnResult(sigma, "exhaustive")
    return ColumnResult(None, "none")


@dataclass(frozen=True)
class Certificate:
    unitriangular: bool
    rows: tuple[int, ...] | None
    cols: tuple[int, ...] | None
    path: str
    reordered: tuple[tuple[int, ...], ...] | None = None

    def text(self) -> str:
        if not self.unitriangular:
            return f"unitriangular: no\npath: {self.path}\n"
        lines = [
            "unitriangular: yes",
            "row order: " + " ".join(map(str, self.rows)),
            "column order: " + " ".join(map(str, self.cols)),
            f"path: {self.path}",
            "reordered:",
        ]
        lines += ["  " + " ".join(map(str, r)) for r in self.reordered]
        return "\n".join(lines) + "\n"


def _greedy_certificate(S):
    n = len(S)
    rows_left, cols_left = list(range(n)), list(range(n))
    rows, cols = [], []
    while rows_left:
        pick = None
        for r in rows_left:
            nz = [c for c in cols_left if S[r][c]]
            if len(nz) == 1 and S[r][nz[0]] == 1:
                pick = (r, nz[0])
                break
        if pick is None:
            return None
        rows.append(pick[0])
        cols.append(pick[1])
        rows_left.remove(pick[0])
        cols_left.remove(pick[1])
    # the picks are in top-to-bottom order: row k has its one in column k and
    # zeros in every later column
    return tuple(rows), tuple(cols)


def exhaustive_certificate(S):
    """Referee: try every row order; the column order is then forced."""
    n = len(S)
    for rows in permutations(range(n)):
        M = [S[r] for r in rows]
        sigma = _greedy_columns(M)
        if sigma is not None:
            return tuple(rows), sigma
    return None


def basic_set_certificate(S) -> Certificate:
    """Do row and column orders exist making S lower unitriangular?"""
    n = _check_square(S, "S")
    found = _greedy_certificate(S)
    path = "greedy"
    if found is None and n <= EXHAUSTIVE_LIMIT:
        found = exhaustive_certificate(S)
        path = "exhaustive"
    if found is None:
        return Certificate(False, None, None, "none")
    rows, cols = found
    M = permute(S, rows, cols)
    if not is_lower_unitriangular(M):
        raise AssertionError("certificate failed its own check")
    return Certificate(True, rows, cols, path, tuple(tuple(r) for r in M))


def parse_matrix(text: str) -> Matrix:
    rows = [[int(x) for x in line.split()] for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    if not rows:
        raise MatrixError("empty matrix")
    return rows
