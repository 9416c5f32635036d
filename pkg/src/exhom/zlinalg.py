"""Exact integer linear algebra: Smith normal form and cokernel structure.

Entries are Python ints (arbitrary precision).  The Smith reduction picks
the minimal-absolute-value nonzero entry as pivot to keep coefficient growth
in check; a "first nonzero" strategy is also available so tests can confirm
the invariant factors do not depend on the elimination path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .qlinalg import RatMatrix


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, row-major, immutable."""

    rows: int
    cols: int
    entries: Tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"entry count {len(self.entries)} != {self.rows}x{self.cols}"
            )
        if not all(isinstance(e, int) for e in self.entries):
            raise ValueError("IntMatrix entries must be ints")

    @staticmethod
    def from_rows(data: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        data = [list(r) for r in data]
        if cols is None:
            cols = len(data[0]) if data else 0
        for r in data:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return IntMatrix(len(data), cols, tuple(int(x) for r in data for x in r))

    @staticmethod
    def zero(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix(rows, cols, (0,) * (rows * cols))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, tuple(1 if i == j else 0
                                     for i in range(n) for j in range(n)))

    def __getitem__(self, rc: Tuple[int, int]) -> int:
        i, j = rc
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(self[i, j] for i in range(self.rows))

    def to_lists(self) -> List[List[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(self[i, j] for j in range(self.cols)
                               for i in range(self.rows)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matmul")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum(ri[k] * other[k, j] for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def to_rational(self) -> RatMatrix:
        return RatMatrix(self.rows, self.cols,
                         tuple(Fraction(e) for e in self.entries))


@dataclass(frozen=True)
class SmithForm:
    """Decomposition U.A.V = D with U, V unimodular and D in Smith form."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    diagonal: Tuple[int, ...]


@dataclass(frozen=True)
class FinAbGroup:
    """Finitely generated abelian group Z^free_rank + sum of Z/t_i.

    Torsion entries are >= 2 and form a divisibility chain t_1 | t_2 | ...
    """

    free_rank: int
    torsion: Tuple[int, ...]

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError("torsion is not a divisibility chain")
        if any(t < 2 for t in self.torsion):
            raise ValueError("torsion entries must be >= 2")

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def determinant(A: IntMatrix) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    if A.rows != A.cols:
        raise ValueError("determinant of non-square matrix")
    n = A.rows
    if n == 0:
        return 1
    m = A.to_lists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pr = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pr is None:
                return 0
            m[k], m[pr] = m[pr], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _find_pivot(m, t, rows, cols, strategy):
    """Minimal-absolute-value nonzero entry of the block m[t:, t:].

    Re-selected on every reduction pass; this is what keeps coefficient
    growth polynomial instead of doubly exponential.  "rev" breaks ties
    from the opposite corner, giving an independent elimination path.
    """
    best = None
    ii = range(t, rows) if strategy == "min" else range(rows - 1, t - 1, -1)
    jj = range(t, cols) if strategy == "min" else range(cols - 1, t - 1, -1)
    for i in ii:
        for j in jj:
            if m[i][j] != 0:
                if best is None or abs(m[i][j]) < abs(m[best[0]][best[1]]):
                    best = (i, j)
    return best


def smith_normal_form(A: IntMatrix, pivot: str = "min") -> SmithForm:
    """Smith normal form U.A.V = D with invariant-factor diagonal.

    pivot="min" (default) and pivot="rev" scan the block in opposite orders
    when choosing among minimal entries; both yield the same diagonal.
    """
    if pivot not in ("min", "rev"):
        raise ValueError("pivot must be 'min' or 'rev'")
    rows, cols = A.rows, A.cols
    m = A.to_lists()
    u = IntMatrix.identity(rows).to_lists()
    v = IntMatrix.identity(cols).to_lists()
    k = min(rows, cols)

    def row_op(i, t, q):  # row_i -= q * row_t
        m[i] = [a - q * b for a, b in zip(m[i], m[t])]
        u[i] = [a - q * b for a, b in zip(u[i], u[t])]

    def col_op(j, t, q):  # col_j -= q * col_t
        for r in range(rows):
            m[r][j] -= q * m[r][t]
        for r in range(cols):
            v[r][j] -= q * v[r][t]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in range(rows):
            m[r][i], m[r][j] = m[r][j], m[r][i]
        for r in range(cols):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    for t in range(k):
        while True:
            pos = _find_pivot(m, t, rows, cols, pivot)
            if pos is None:
                break
            if pos != (t, t):
                swap_rows(t, pos[0])
                swap_cols(t, pos[1])
            # one reduction pass against the current (minimal) pivot
            changed = False
            for i in range(t + 1, rows):
                if m[i][t] != 0:
                    q = m[i][t] // m[t][t]
                    row_op(i, t, q)
                    if m[i][t] != 0:
                        changed = True
            for j in range(t + 1, cols):
                if m[t][j] != 0:
                    q = m[t][j] // m[t][t]
                    col_op(j, t, q)
                    if m[t][j] != 0:
                        changed = True
            if changed:
                continue  # leftover remainders are smaller; re-pick the pivot
            offender = None
            p = m[t][t]
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if m[i][j] % p != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_op(t, offender, -1)  # add offending row to the pivot row

    # normalize diagonal signs
    for t in range(k):
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            u[t] = [-x for x in u[t]]

    U = IntMatrix.from_rows(u, rows)
    V = IntMatrix.from_rows(v, cols)
    D = IntMatrix.from_rows(m, cols)
    diagonal = tuple(m[t][t] for t in range(k))
    return SmithForm(U=U, D=D, V=V, diagonal=diagonal)


def cokernel_structure(A: IntMatrix) -> FinAbGroup:
    """Structure of Z^rows / image(A), A acting on column vectors."""
    snf = smith_normal_form(A)
    nonzero = [d for d in snf.diagonal if d != 0]
    return FinAbGroup(free_rank=A.rows - len(nonzero),
                      torsion=tuple(d for d in nonzero if d > 1))


def kernel_lattice(A: IntMatrix) -> List[Tuple[int, ...]]:
    """Basis of the integer kernel {x in Z^cols : Ax = 0} (a saturated lattice)."""
    snf = smith_normal_form(A)
    out = []
    for j in range(A.cols):
        d = snf.diagonal[j] if j < len(snf.diagonal) else 0
        if d == 0:
            out.append(snf.V.column(j))
    return out


def rank_mod_p(A: IntMatrix, p: int) -> int:
    """Rank of A over the field Z/p (p prime)."""
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    m = [[e % p for e in A.row(i)] for i in range(A.rows)]
    r = 0
    for c in range(A.cols):
        if r == A.rows:
            break
        pr = next((i for i in range(r, A.rows) if m[i][c] % p != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(A.rows):
            if i != r and m[i][c] % p != 0:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        r += 1
    return r


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True
