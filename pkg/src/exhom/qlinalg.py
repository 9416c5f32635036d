"""Exact linear algebra over the rationals.

Matrices carry arbitrary-precision ``Fraction`` entries and every operation
is exact; there is no floating point anywhere in this module.  Subspaces are
stored as reduced row echelon bases with zero rows dropped, so two equal
subspaces are equal as values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class RatMatrix:
    """Dense rational matrix, row-major, immutable."""

    rows: int
    cols: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"entry count {len(self.entries)} != {self.rows}x{self.cols}"
            )

    @staticmethod
    def from_rows(data: Sequence[Sequence], cols: int | None = None) -> "RatMatrix":
        data = [list(r) for r in data]
        if cols is None:
            cols = len(data[0]) if data else 0
        for r in data:
            if len(r) != cols:
                raise ValueError("ragged rows")
        flat = tuple(_frac(x) for r in data for x in r)
        return RatMatrix(len(data), cols, flat)

    @staticmethod
    def zero(rows: int, cols: int) -> "RatMatrix":
        return RatMatrix(rows, cols, (Fraction(0),) * (rows * cols))

    @staticmethod
    def identity(n: int) -> "RatMatrix":
        return RatMatrix(
            n, n,
            tuple(Fraction(1 if i == j else 0) for i in range(n) for j in range(n)),
        )

    def __getitem__(self, rc: Tuple[int, int]) -> Fraction:
        i, j = rc
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_lists(self) -> List[List[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(
            self.cols, self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ "
                             f"{other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum((ri[k] * other[k, j] for k in range(self.cols)),
                               Fraction(0)))
        return RatMatrix(self.rows, other.cols, tuple(out))

    def vstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch in vstack")
        return RatMatrix(self.rows + other.rows, self.cols,
                         self.entries + other.entries)

    def hstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        flat = []
        for i in range(self.rows):
            flat.extend(self.row(i))
            flat.extend(other.row(i))
        return RatMatrix(self.rows, self.cols + other.cols, tuple(flat))

    def scale(self, c) -> "RatMatrix":
        c = _frac(c)
        return RatMatrix(self.rows, self.cols, tuple(c * e for e in self.entries))

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def apply(self, vector: Sequence) -> Tuple[Fraction, ...]:
        """Matrix times column vector, returned as a flat tuple."""
        v = [_frac(x) for x in vector]
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(
            sum((self.row(i)[k] * v[k] for k in range(self.cols)), Fraction(0))
            for i in range(self.rows)
        )


def rref(M: RatMatrix) -> Tuple[RatMatrix, List[int]]:
    """Reduced row echelon form of M, keeping dimensions.

    Returns (R, pivot_cols) with pivot columns in increasing order; the rank
    of M is the number of pivots.
    """
    rows = M.to_lists()
    pivots: List[int] = []
    r = 0
    for c in range(M.cols):
        if r == M.rows:
            break
        pr = next((i for i in range(r, M.rows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        if pv != 1:
            rows[r] = [x / pv for x in rows[r]]
        for i in range(M.rows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return RatMatrix.from_rows(rows, M.cols), pivots


def rank(M: RatMatrix) -> int:
    return len(rref(M)[1])


@dataclass(frozen=True)
class Subspace:
    """Linear subspace of Q^ambient_dim in canonical (RREF, no zero rows) form."""

    ambient_dim: int
    basis: RatMatrix

    def __post_init__(self):
        if self.basis.cols != self.ambient_dim:
            raise ValueError("basis width != ambient dimension")

    @staticmethod
    def span(ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        vecs = [list(v) for v in vectors]
        if not vecs:
            return Subspace(ambient_dim, RatMatrix.zero(0, ambient_dim))
        R, pivots = rref(RatMatrix.from_rows(vecs, ambient_dim))
        basis = RatMatrix.from_rows([R.row(i) for i in range(len(pivots))],
                                    ambient_dim)
        return Subspace(ambient_dim, basis)

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, RatMatrix.zero(0, ambient_dim))

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, RatMatrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def vectors(self) -> List[Tuple[Fraction, ...]]:
        return [self.basis.row(i) for i in range(self.basis.rows)]

    def contains(self, vector: Sequence) -> bool:
        v = [_frac(x) for x in vector]
        if len(v) != self.ambient_dim:
            raise ValueError("vector length mismatch")
        stacked = self.basis.vstack(RatMatrix.from_rows([v], self.ambient_dim))
        return rank(stacked) == self.dim

    def contains_space(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        if other.dim == 0:
            return True
        return rank(self.basis.vstack(other.basis)) == self.dim


def kernel_basis(M: RatMatrix) -> Subspace:
    """Null space {x : Mx = 0} as a canonical subspace of Q^cols."""
    R, pivots = rref(M)
    pivot_set = set(pivots)
    free_cols = [c for c in range(M.cols) if c not in pivot_set]
    vecs = []
    for f in free_cols:
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -R[r, f]
        vecs.append(v)
    return Subspace.span(M.cols, vecs)


def subspace_sum(U: Subspace, W: Subspace) -> Subspace:
    """Canonical subspace spanned by both bases."""
    if U.ambient_dim != W.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    return Subspace.span(U.ambient_dim, U.vectors() + W.vectors())


def subspace_intersect(U: Subspace, W: Subspace) -> Subspace:
    """Canonical intersection of two subspaces of the same ambient space."""
    if U.ambient_dim != W.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    if U.dim == 0 or W.dim == 0:
        return Subspace.zero(U.ambient_dim)
    # Solve a.B_U = b.B_W: kernel of [B_U^T | -B_W^T], take the a-part.
    M = U.basis.transpose().hstack(W.basis.transpose().scale(-1))
    K = kernel_basis(M)
    vecs = []
    for k in K.vectors():
        a = k[:U.dim]
        vec = [Fraction(0)] * U.ambient_dim
        for coeff, brow in zip(a, U.vectors()):
            if coeff != 0:
                vec = [x + coeff * y for x, y in zip(vec, brow)]
        vecs.append(vec)
    return Subspace.span(U.ambient_dim, vecs)


def is_complementary(U: Subspace, W: Subspace) -> bool:
    """True iff U and W intersect trivially and together span the ambient space."""
    if U.ambient_dim != W.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    if U.dim + W.dim != U.ambient_dim:
        return False
    return subspace_intersect(U, W).dim == 0


def annihilator(S: Subspace) -> Subspace:
    """Functionals vanishing on S, as row vectors (the orthogonal complement)."""
    return kernel_basis(S.basis)


def map_subspace(M: RatMatrix, S: Subspace) -> Subspace:
    """Image M(S) as a subspace of Q^{M.rows}."""
    if S.ambient_dim != M.cols:
        raise ValueError("ambient dimension mismatch")
    return Subspace.span(M.rows, [M.apply(v) for v in S.vectors()])


def preimage_subspace(M: RatMatrix, W: Subspace) -> Subspace:
    """Preimage {x : Mx in W} as a subspace of Q^{M.cols}."""
    if W.ambient_dim != M.rows:
        raise ValueError("ambient dimension mismatch")
    A = annihilator(W)
    if A.dim == 0:
        return Subspace.full(M.cols)
    return kernel_basis(A.basis @ M)


def column_space(M: RatMatrix) -> Subspace:
    """Image of M acting on column vectors, as a subspace of Q^{M.rows}."""
    return Subspace.span(M.rows, M.transpose().to_lists())


def extend_basis(inner: Subspace, outer: Subspace) -> List[Tuple[Fraction, ...]]:
    """Vectors of outer extending a basis of inner to one of outer.

    Requires inner to be contained in outer; returns dim(outer)-dim(inner)
    vectors drawn greedily from outer's canonical basis.
    """
    if not outer.contains_space(inner):
        raise ValueError("inner subspace not contained in outer")
    current = inner
    out = []
    for v in outer.vectors():
        grown = subspace_sum(current, Subspace.span(outer.ambient_dim, [v]))
        if grown.dim > current.dim:
            out.append(v)
            current = grown
    return out


def solve(M: RatMatrix, b: Sequence) -> Tuple[Fraction, ...] | None:
    """One solution x of Mx = b, or None if inconsistent."""
    bb = [_frac(x) for x in b]
    if len(bb) != M.rows:
        raise ValueError("right-hand side length mismatch")
    aug = M.hstack(RatMatrix.from_rows([[x] for x in bb], 1))
    R, pivots = rref(aug)
    if M.cols in pivots:
        return None
    x = [Fraction(0)] * M.cols
    for r, pc in enumerate(pivots):
        x[pc] = R[r, M.cols]
    return tuple(x)
