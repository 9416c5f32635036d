"""First-quadrant double complexes and their two spectral sequences.

The engine totalizes a grid of commuting squares (inserting the (-1)^r sign
itself), filters the total complex by column or by row, and computes every
page by exact subspace arithmetic:

    Z_r^{p,q} = F^p T^{p+q}  intersect  D^{-1}(F^{p+r} T^{p+q+1})
    E_r^{p,q} = Z_r^{p,q} / (Z_{r-1}^{p+1,q-1} + D Z_{r-1}^{p-r+1,q+r-2})

Filtrations on total cohomology, the oppositeness test, the dimension
criterion implying it, and degeneration detection live here too.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .complexes import CochainComplex, cochain_complex
from .qlinalg import (
    RatMatrix,
    Subspace,
    column_space,
    extend_basis,
    is_complementary,
    kernel_basis,
    map_subspace,
    preimage_subspace,
    solve,
    subspace_intersect,
    subspace_sum,
)

COLUMN = "column"
ROW = "row"


class DoubleComplexError(ValueError):
    """Raised when a double complex violates its structural invariants."""


@dataclass(frozen=True)
class DoubleComplex:
    """Grid K^{r,s} for 0 <= r <= max_r, 0 <= s <= max_c with commuting
    horizontal (r+1) and vertical (s+1) differentials."""

    max_r: int
    max_c: int
    dims: Dict[Tuple[int, int], int]
    horiz: Dict[Tuple[int, int], RatMatrix]
    vert: Dict[Tuple[int, int], RatMatrix]

    def dim(self, r: int, s: int) -> int:
        return self.dims.get((r, s), 0)

    def horiz_at(self, r: int, s: int) -> RatMatrix:
        d = self.horiz.get((r, s))
        if d is None:
            return RatMatrix.zero(self.dim(r + 1, s), self.dim(r, s))
        return d

    def vert_at(self, r: int, s: int) -> RatMatrix:
        d = self.vert.get((r, s))
        if d is None:
            return RatMatrix.zero(self.dim(r, s + 1), self.dim(r, s))
        return d

    def cells(self):
        for r in range(self.max_r + 1):
            for s in range(self.max_c + 1):
                if self.dim(r, s):
                    yield r, s


def double_complex(max_r: int, max_c: int,
                   dims: Dict[Tuple[int, int], int],
                   horiz: Dict[Tuple[int, int], RatMatrix],
                   vert: Dict[Tuple[int, int], RatMatrix]) -> DoubleComplex:
    """Build and validate a DoubleComplex (shapes, d'd'=0, d''d''=0, squares)."""
    dims = {c: d for c, d in dims.items() if d > 0}
    for (r, s) in dims:
        if not (0 <= r <= max_r and 0 <= s <= max_c):
            raise DoubleComplexError(f"cell ({r},{s}) outside declared rectangle")
    K = DoubleComplex(max_r, max_c,
                      dims,
                      {c: m for c, m in horiz.items() if m.rows and m.cols},
                      {c: m for c, m in vert.items() if m.rows and m.cols})
    for (r, s), M in K.horiz.items():
        want = (K.dim(r + 1, s), K.dim(r, s))
        if (M.rows, M.cols) != want:
            raise DoubleComplexError(
                f"horiz at ({r},{s}) has shape {M.rows}x{M.cols}, expected "
                f"{want[0]}x{want[1]}")
    for (r, s), M in K.vert.items():
        want = (K.dim(r, s + 1), K.dim(r, s))
        if (M.rows, M.cols) != want:
            raise DoubleComplexError(
                f"vert at ({r},{s}) has shape {M.rows}x{M.cols}, expected "
                f"{want[0]}x{want[1]}")
    for r, s in K.cells():
        if not (K.horiz_at(r + 1, s) @ K.horiz_at(r, s)).is_zero():
            raise DoubleComplexError(f"horiz composite nonzero at ({r},{s})")
        if not (K.vert_at(r, s + 1) @ K.vert_at(r, s)).is_zero():
            raise DoubleComplexError(f"vert composite nonzero at ({r},{s})")
        sq1 = K.vert_at(r + 1, s) @ K.horiz_at(r, s)
        sq2 = K.horiz_at(r, s + 1) @ K.vert_at(r, s)
        if sq1.entries != sq2.entries:
            raise DoubleComplexError(f"square does not commute at ({r},{s})")
    return K


def _layout(K: DoubleComplex, n: int) -> List[Tuple[int, int, int, int]]:
    """Blocks (r, s, offset, dim) of T^n, ordered by increasing r."""
    out, off = [], 0
    for r in range(max(0, n - K.max_c), min(K.max_r, n) + 1):
        s = n - r
        d = K.dim(r, s)
        if d:
            out.append((r, s, off, d))
            off += d
    return out


def _total_dim(K: DoubleComplex, n: int) -> int:
    lay = _layout(K, n)
    return lay[-1][2] + lay[-1][3] if lay else 0


def _total_differential(K: DoubleComplex, n: int) -> RatMatrix:
    src = _layout(K, n)
    dst = _layout(K, n + 1)
    sd = _total_dim(K, n)
    dd = _total_dim(K, n + 1)
    rows = [[Fraction(0)] * sd for _ in range(dd)]
    dst_off = {(r, s): off for r, s, off, _ in dst}
    for r, s, off, d in src:
        h = K.horiz_at(r, s)
        if (r + 1, s) in dst_off and h.rows:
            to = dst_off[(r + 1, s)]
            for a in range(h.rows):
                for b in range(h.cols):
                    rows[to + a][off + b] = h[a, b]
        v = K.vert_at(r, s)
        if (r, s + 1) in dst_off and v.rows:
            to = dst_off[(r, s + 1)]
            sign = Fraction(-1 if r % 2 else 1)
            for a in range(v.rows):
                for b in range(v.cols):
                    rows[to + a][off + b] = sign * v[a, b]
    return RatMatrix.from_rows(rows, sd)


def total_complex(K: DoubleComplex) -> CochainComplex:
    """Totalization T^n = sum_{r+s=n} K^{r,s} with D = d' + (-1)^r d''."""
    top = K.max_r + K.max_c
    dims = {n: _total_dim(K, n) for n in range(top + 1)}
    diffs = {n: _total_differential(K, n) for n in range(top)
             if dims.get(n, 0) and dims.get(n + 1, 0)}
    return cochain_complex(0, dims, diffs)


@dataclass(frozen=True)
class SpectralPages:
    """All computed pages of one of the two spectral sequences.

    pages[r][(p,q)] = (dim, representative subspace in T^{p+q} coordinates);
    d_ranks[(r,p,q)] = rank of d_r out of (p,q) (zero entries omitted);
    limit[(p,q)] = E_infinity dimension; stable_page = first page equal to
    the limit with all later differentials zero.
    """

    filtration_axis: str
    pages: Dict[int, Dict[Tuple[int, int], Tuple[int, Subspace]]]
    d_ranks: Dict[Tuple[int, int, int], int]
    limit: Dict[Tuple[int, int], int]
    stable_page: int

    def dim(self, r: int, p: int, q: int) -> int:
        cell = self.pages.get(r, {}).get((p, q))
        return cell[0] if cell else 0

    def d_rank(self, r: int, p: int, q: int) -> int:
        return self.d_ranks.get((r, p, q), 0)


@dataclass(frozen=True)
class FiltrationChain:
    """Descending filtration F^0 >= ... >= F^{n+1} on H^n, in H^n coordinates."""

    n: int
    spaces: Tuple[Subspace, ...]

    def __post_init__(self):
        if len(self.spaces) != self.n + 2:
            raise ValueError("filtration chain must have n+2 steps")
        amb = self.spaces[0].ambient_dim
        if self.spaces[0].dim != amb:
            raise ValueError("F^0 must be the full space")
        if self.spaces[-1].dim != 0:
            raise ValueError("F^{n+1} must be zero")
        for a, b in zip(self.spaces, self.spaces[1:]):
            if not a.contains_space(b):
                raise ValueError("filtration steps are not nested")

    @property
    def ambient_dim(self) -> int:
        return self.spaces[0].ambient_dim

    def dims(self) -> Tuple[int, ...]:
        return tuple(s.dim for s in self.spaces)


class _Engine:
    """Shared filtered-complex machinery for one (double complex, axis) pair."""

    def __init__(self, K: DoubleComplex, axis: str):
        if axis not in (COLUMN, ROW):
            raise ValueError(f"axis must be '{COLUMN}' or '{ROW}'")
        self.K = K
        self.axis = axis
        self.top = K.max_r + K.max_c
        self.max_level = K.max_r if axis == COLUMN else K.max_c
        self.co_max = K.max_c if axis == COLUMN else K.max_r
        self.D = {n: _total_differential(K, n) for n in range(self.top + 1)}
        self.tdim = {n: _total_dim(K, n) for n in range(self.top + 2)}
        self._filt: Dict[Tuple[int, int], Subspace] = {}
        self._z: Dict[Tuple[int, int, int], Subspace] = {}

    def level(self, r: int, s: int) -> int:
        return r if self.axis == COLUMN else s

    def filt(self, p: int, n: int) -> Subspace:
        """F^p T^n: coordinates of blocks with filtration level >= p."""
        amb = self.tdim.get(n, 0)
        if n < 0 or n > self.top:
            return Subspace.zero(max(amb, 0))
        p = max(p, 0)
        key = (p, n)
        if key not in self._filt:
            vecs = []
            for r, s, off, d in _layout(self.K, n):
                if self.level(r, s) >= p:
                    for i in range(d):
                        v = [Fraction(0)] * amb
                        v[off + i] = Fraction(1)
                        vecs.append(v)
            self._filt[key] = Subspace.span(amb, vecs)
        return self._filt[key]

    def Z(self, r: int, p: int, n: int) -> Subspace:
        """Approximation subspace {x in F^p T^n : Dx in F^{p+r} T^{n+1}}."""
        amb = self.tdim.get(n, 0)
        if amb == 0:
            return Subspace.zero(0)
        start = max(p, 0)
        target = min(max(p + r, 0), self.max_level + 1)
        key = (start, target, n)
        if key not in self._z:
            F = self.filt(start, n)
            if n + 1 > self.top or self.tdim.get(n + 1, 0) == 0:
                self._z[key] = F
            else:
                W = self.filt(target, n + 1)
                pre = preimage_subspace(self.D[n], W)
                self._z[key] = subspace_intersect(F, pre)
        return self._z[key]

    def boundary_part(self, r: int, p: int, q: int) -> Subspace:
        """Denominator Z_{r-1}^{p+1,q-1} + D Z_{r-1}^{p-r+1,q+r-2} of E_r^{p,q}."""
        n = p + q
        amb = self.tdim.get(n, 0)
        first = self.Z(r - 1, p + 1, n)
        prev_n = n - 1
        if prev_n < 0 or self.tdim.get(prev_n, 0) == 0 or amb == 0:
            return first
        src = self.Z(r - 1, p - r + 1, prev_n)
        mapped = map_subspace(self.D[prev_n], src)
        return subspace_sum(first, mapped)

    def e_cell(self, r: int, p: int, q: int) -> Tuple[int, Subspace]:
        n = p + q
        amb = self.tdim.get(n, 0)
        if amb == 0:
            return 0, Subspace.zero(max(amb, 0))
        num = self.Z(r, p, n)
        den = self.boundary_part(r, p, q)
        dim = num.dim - den.dim
        if dim == 0:
            return 0, Subspace.zero(amb)
        reps = extend_basis(den, subspace_sum(num, den))
        return dim, Subspace.span(amb, reps)


def spectral_pages(K: DoubleComplex, axis: str) -> SpectralPages:
    """Pages E_1, E_2, ... of the chosen filtration, with d_r ranks and limit."""
    eng = _Engine(K, axis)
    last = eng.top + 1  # beyond this every d_r vanishes (first quadrant)
    pages: Dict[int, Dict[Tuple[int, int], Tuple[int, Subspace]]] = {}
    d_ranks: Dict[Tuple[int, int, int], int] = {}
    cells = [(p, q) for p in range(eng.max_level + 1)
             for q in range(eng.co_max + 1)]
    for r in range(1, last + 2):
        grid = {}
        for p, q in cells:
            dim, reps = eng.e_cell(r, p, q)
            if dim:
                grid[(p, q)] = (dim, reps)
        pages[r] = grid
        if r <= last:
            for p, q in list(grid):
                tp, tq = p + r, q - r + 1
                if tq < 0 or tp > eng.max_level:
                    continue
                src = eng.Z(r, p, p + q)
                n_src = p + q
                if eng.tdim.get(n_src + 1, 0) == 0:
                    continue
                image = map_subspace(eng.D[n_src], src)
                den_t = eng.boundary_part(r, tp, tq)
                rk = subspace_sum(image, den_t).dim - den_t.dim
                if rk:
                    d_ranks[(r, p, q)] = rk
    limit = {pq: dim for pq, (dim, _) in pages[last + 1].items()}
    stable = last + 1
    for r in range(last, 0, -1):
        same_dims = {pq: d for pq, (d, _) in pages[r].items()} == limit
        later_ranks = any(rr >= r for (rr, _, _) in d_ranks)
        if same_dims and not later_ranks:
            stable = r
        else:
            break
    return SpectralPages(filtration_axis=axis, pages=pages, d_ranks=d_ranks,
                         limit=limit, stable_page=stable)


def _quotient_map(K: DoubleComplex, n: int):
    """Coordinates on H^n(Tot): returns (b, to_coords) where to_coords maps a
    vector in ker D^n to its class in Q^b."""
    eng_dim = _total_dim(K, n)
    D_n = _total_differential(K, n) if n < K.max_r + K.max_c else \
        RatMatrix.zero(0, eng_dim)
    ker = kernel_basis(D_n) if D_n.rows else Subspace.full(eng_dim)
    if n == 0:
        img = Subspace.zero(eng_dim)
    else:
        img = column_space(_total_differential(K, n - 1))
    reps = extend_basis(img, ker)
    b = len(reps)
    basis_rows = img.vectors() + list(reps)
    if basis_rows:
        M = RatMatrix.from_rows([list(v) for v in basis_rows], eng_dim).transpose()
    else:
        M = RatMatrix.zero(eng_dim, 0)

    def to_coords(v):
        if b == 0:
            return ()
        x = solve(M, v)
        if x is None:
            raise ValueError("vector not in ker D")
        return x[img.dim:]

    return b, to_coords


def filtration_on_total(K: DoubleComplex, axis: str, n: int) -> FiltrationChain:
    """Filtration F^p H^n(Tot) induced by the chosen axis."""
    eng = _Engine(K, axis)
    if n < 0 or n > eng.top:
        return FiltrationChain(max(n, 0), tuple(
            Subspace.zero(0) for _ in range(max(n, 0) + 2)))
    b, to_coords = _quotient_map(K, n)
    spaces = []
    for p in range(0, n + 2):
        zinf = eng.Z(eng.top + 2, p, n)  # F^p intersect ker D
        vecs = [to_coords(v) for v in zinf.vectors()]
        spaces.append(Subspace.span(b, vecs))
    return FiltrationChain(n, tuple(spaces))


def opposite_check(F: FiltrationChain, G: FiltrationChain) -> bool:
    """True iff F^p and G^{n+1-p} are complementary in H^n for every p."""
    if F.n != G.n or F.ambient_dim != G.ambient_dim:
        raise ValueError("filtration degree or ambient dimension mismatch")
    n = F.n
    return all(is_complementary(F.spaces[p], G.spaces[n + 1 - p])
               for p in range(n + 2))


def dimension_criterion(F: FiltrationChain, G: FiltrationChain) -> bool:
    """Sum condition plus the two dimension symmetries; implies oppositeness."""
    if F.n != G.n or F.ambient_dim != G.ambient_dim:
        raise ValueError("filtration degree or ambient dimension mismatch")
    n, h = F.n, F.ambient_dim
    for p in range(n + 2):
        if subspace_sum(F.spaces[p], G.spaces[n + 1 - p]).dim != h:
            return False
        if F.spaces[p].dim + F.spaces[n + 1 - p].dim != h:
            return False
        if G.spaces[p].dim + G.spaces[n + 1 - p].dim != h:
            return False
    return True


def degenerates_at(P: SpectralPages, r: int) -> bool:
    """True iff every differential on pages >= r has rank zero."""
    return not any(rk and page >= r for (page, _, _), rk in P.d_ranks.items())
