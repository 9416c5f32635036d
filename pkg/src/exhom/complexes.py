"""Finite cochain complexes over Q and chain complexes over Z.

Provides cohomology with representatives, total tensor products with the
Leibniz sign, a Kunneth dimension check, integral homology via Smith normal
form, a universal-coefficient dimension check, and degreewise dualization.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .qlinalg import (
    RatMatrix,
    Subspace,
    column_space,
    extend_basis,
    kernel_basis,
    rank,
    solve,
    subspace_sum,
)
from .zlinalg import (
    FinAbGroup,
    IntMatrix,
    cokernel_structure,
    is_prime,
    kernel_lattice,
    rank_mod_p,
)


class ComplexError(ValueError):
    """Raised when a complex fails its structural invariants."""


@dataclass(frozen=True)
class CochainComplex:
    """Graded Q-vector spaces with differentials d^n: C^n -> C^{n+1}.

    dims holds only nonzero degrees; differentials hold only nonzero maps,
    each a matrix of shape dims(n+1) x dims(n).
    """

    min_deg: int
    max_deg: int
    dims: Dict[int, int]
    differentials: Dict[int, RatMatrix]

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def differential(self, n: int) -> RatMatrix:
        d = self.differentials.get(n)
        if d is None:
            return RatMatrix.zero(self.dim(n + 1), self.dim(n))
        return d

    def degrees(self):
        return range(self.min_deg, self.max_deg + 1)


@dataclass(frozen=True)
class IntChainComplex:
    """Free Z-modules with differentials d_n: C_n -> C_{n-1} (homological)."""

    min_deg: int
    max_deg: int
    dims: Dict[int, int]
    differentials: Dict[int, IntMatrix]

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def differential(self, n: int) -> IntMatrix:
        d = self.differentials.get(n)
        if d is None:
            return IntMatrix.zero(self.dim(n - 1), self.dim(n))
        return d

    def degrees(self):
        return range(self.min_deg, self.max_deg + 1)


def cochain_complex(min_deg: int, dims: Dict[int, int],
                    differentials: Dict[int, RatMatrix]) -> CochainComplex:
    """Build a CochainComplex, checking shapes and dropping zero data."""
    dims = {n: d for n, d in dims.items() if d > 0}
    max_deg = max(dims) if dims else min_deg
    min_deg = min(dims) if dims else min_deg
    diffs = {}
    for n, M in differentials.items():
        want = (dims.get(n + 1, 0), dims.get(n, 0))
        if (M.rows, M.cols) != want:
            raise ComplexError(
                f"differential at degree {n} has shape {M.rows}x{M.cols}, "
                f"expected {want[0]}x{want[1]}")
        if M.rows and M.cols and not M.is_zero():
            diffs[n] = M
    return CochainComplex(min_deg, max_deg, dims, diffs)


def int_chain_complex(min_deg: int, dims: Dict[int, int],
                      differentials: Dict[int, IntMatrix]) -> IntChainComplex:
    """Build an IntChainComplex, checking shapes and dropping zero data."""
    dims = {n: d for n, d in dims.items() if d > 0}
    max_deg = max(dims) if dims else min_deg
    min_deg = min(dims) if dims else min_deg
    diffs = {}
    for n, M in differentials.items():
        want = (dims.get(n - 1, 0), dims.get(n, 0))
        if (M.rows, M.cols) != want:
            raise ComplexError(
                f"differential at degree {n} has shape {M.rows}x{M.cols}, "
                f"expected {want[0]}x{want[1]}")
        if M.rows and M.cols and any(e != 0 for e in M.entries):
            diffs[n] = M
    return IntChainComplex(min_deg, max_deg, dims, diffs)


def validate_complex(C) -> bool:
    """True iff adjacent differentials compose to zero."""
    if isinstance(C, CochainComplex):
        for n in C.degrees():
            prod = C.differential(n + 1) @ C.differential(n)
            if not prod.is_zero():
                return False
        return True
    if isinstance(C, IntChainComplex):
        for n in C.degrees():
            prod = C.differential(n) @ C.differential(n + 1)
            if any(e != 0 for e in prod.entries):
                return False
        return True
    raise TypeError(f"not a complex: {type(C)!r}")


def cohomology(C: CochainComplex, n: int) -> Tuple[int, Subspace]:
    """(dim H^n, representative subspace of ker d^n mapping onto H^n)."""
    cn = C.dim(n)
    if cn == 0:
        return 0, Subspace.zero(0)
    ker = kernel_basis(C.differential(n))
    img = column_space(C.differential(n - 1))
    reps = extend_basis(img, ker) if img.dim else ker.vectors()
    return ker.dim - img.dim, Subspace.span(cn, reps)


def cohomology_dims(C: CochainComplex) -> Dict[int, int]:
    return {n: cohomology(C, n)[0] for n in C.degrees()}


def tensor_product(C: CochainComplex, D: CochainComplex) -> CochainComplex:
    """Total tensor complex with differential dx (x) y + (-1)^i x (x) dy.

    Degree-n basis is ordered lexicographically in (i, C^i index, D^{n-i} index).
    """
    dims: Dict[int, int] = {}
    lo, hi = C.min_deg + D.min_deg, C.max_deg + D.max_deg
    for n in range(lo, hi + 1):
        dims[n] = sum(C.dim(i) * D.dim(n - i) for i in C.degrees())

    def offsets(n):
        out, off = {}, 0
        for i in C.degrees():
            j = n - i
            b = C.dim(i) * D.dim(j)
            if b:
                out[i] = off
                off += b
        return out, off

    diffs: Dict[int, RatMatrix] = {}
    for n in range(lo, hi):
        src_off, src_dim = offsets(n)
        dst_off, dst_dim = offsets(n + 1)
        if src_dim == 0 or dst_dim == 0:
            continue
        rows = [[Fraction(0)] * src_dim for _ in range(dst_dim)]
        for i, so in src_off.items():
            j = n - i
            dc, dd = C.differential(i), D.differential(j)
            # dC (x) id : block (i+1, j)
            if (i + 1) in dst_off and dc.rows:
                to = dst_off[i + 1]
                for a in range(dc.rows):
                    for b in range(dc.cols):
                        if dc[a, b] != 0:
                            for y in range(D.dim(j)):
                                rows[to + a * D.dim(j) + y][so + b * D.dim(j) + y] = dc[a, b]
            # (-1)^i id (x) dD : block (i, j+1)
            if i in dst_off and dd.rows:
                to = dst_off[i]
                sign = Fraction(-1 if i % 2 else 1)
                for x in range(C.dim(i)):
                    for a in range(dd.rows):
                        for b in range(dd.cols):
                            if dd[a, b] != 0:
                                rows[to + x * dd.rows + a][so + x * dd.cols + b] = sign * dd[a, b]
        diffs[n] = RatMatrix.from_rows(rows, src_dim)
    return cochain_complex(lo, dims, diffs)


@dataclass(frozen=True)
class CheckReport:
    """Per-degree comparison of two dimension computations."""

    name: str
    rows: Tuple[Tuple[int, int, int], ...]  # (degree, lhs, rhs)
    passed: bool
    note: str = ""

    def render(self) -> str:
        lines = [f"{self.name}: {'PASS' if self.passed else 'FAIL'}"
                 + (f" ({self.note})" if self.note else "")]
        for n, lhs, rhs in self.rows:
            mark = "ok" if lhs == rhs else "MISMATCH"
            lines.append(f"  degree {n}: {lhs} vs {rhs}  {mark}")
        return "\n".join(lines)


def kunneth_check(C: CochainComplex, D: CochainComplex) -> CheckReport:
    """Compare dim H^n(C (x) D) against the Kunneth convolution of dims."""
    hc = cohomology_dims(C)
    hd = cohomology_dims(D)
    T = tensor_product(C, D)
    rows = []
    for n in T.degrees():
        lhs = cohomology(T, n)[0]
        rhs = sum(hc.get(i, 0) * hd.get(n - i, 0) for i in hc)
        rows.append((n, lhs, rhs))
    return CheckReport("kunneth", tuple(rows),
                       all(l == r for _, l, r in rows))


def homology_int(C: IntChainComplex, n: int) -> FinAbGroup:
    """H_n = ker d_n / im d_{n+1} as a finitely generated abelian group."""
    cn = C.dim(n)
    if cn == 0:
        return FinAbGroup(0, ())
    kbasis = kernel_lattice(C.differential(n))
    k = len(kbasis)
    if k == 0:
        return FinAbGroup(0, ())
    dnext = C.differential(n + 1)
    if dnext.cols == 0:
        return FinAbGroup(k, ())
    # express the columns of d_{n+1} in the kernel basis (saturated, so the
    # rational solution is integral)
    K = RatMatrix.from_rows([[Fraction(x) for x in row] for row in
                             zip(*kbasis)], k)
    cols = []
    for j in range(dnext.cols):
        y = solve(K, [Fraction(x) for x in dnext.column(j)])
        if y is None:
            raise ComplexError(f"image of d_{n + 1} not inside ker d_{n}")
        col = []
        for f in y:
            if f.denominator != 1:
                raise ComplexError("non-integral coordinates in kernel basis")
            col.append(f.numerator)
        cols.append(col)
    rel = IntMatrix.from_rows([list(r) for r in zip(*cols)], dnext.cols)
    return cokernel_structure(rel)


def _dim_tensor_mod(G: FinAbGroup, m: int) -> int:
    """dim over Z/m of G (x) Z/m, from invariant factors (m prime)."""
    return G.free_rank + sum(1 for t in G.torsion if t % m == 0)


def _dim_tor_mod(G: FinAbGroup, m: int) -> int:
    """dim over Z/m of Tor(G, Z/m), from invariant factors (m prime)."""
    return sum(1 for t in G.torsion if t % m == 0)


def uct_check(C: IntChainComplex, m: int) -> CheckReport:
    """Check the universal-coefficient dimension identity mod m.

    For prime m the left side dim H_n(C (x) Z/m) comes from an independent
    mod-m Gaussian elimination; the right side is
    dim(H_n (x) Z/m) + dim Tor(H_{n-1}, Z/m) from invariant factors.
    Composite m: only the invariant-factor side is tabulated, no cross-check.
    """
    if m < 2:
        raise ValueError("modulus must be >= 2")
    groups = {n: homology_int(C, n) for n in C.degrees()}
    if not is_prime(m):
        from math import gcd
        dims = {n: groups[n].free_rank
                + sum(1 for t in groups[n].torsion if gcd(t, m) > 1)
                + sum(1 for t in groups.get(n - 1, FinAbGroup(0, ())).torsion
                      if gcd(t, m) > 1)
                for n in C.degrees()}
        return CheckReport(
            "uct", (), True,
            note=f"modulus {m} not prime; invariant-factor side only: {dims}")
    rows = []
    for n in C.degrees():
        lhs = (C.dim(n)
               - rank_mod_p(C.differential(n), m)
               - rank_mod_p(C.differential(n + 1), m))
        rhs = (_dim_tensor_mod(groups[n], m)
               + _dim_tor_mod(groups.get(n - 1, FinAbGroup(0, ())), m))
        rows.append((n, lhs, rhs))
    return CheckReport("uct", tuple(rows), all(l == r for _, l, r in rows))


def hom_dual(C: CochainComplex) -> CochainComplex:
    """Degreewise dual with transposed differentials, re-indexed as a cochain
    complex: dual^n = (C^{m-n})* for m = min_deg + max_deg."""
    m = C.min_deg + C.max_deg
    dims = {m - n: C.dim(n) for n in C.degrees()}
    diffs = {}
    for n in C.degrees():
        d = C.differentials.get(n)
        if d is not None:
            # (d^n)^T : (C^{n+1})* -> (C^n)*, i.e. dual^{m-n-1} -> dual^{m-n}
            diffs[m - n - 1] = d.transpose()
    return cochain_complex(min(dims) if dims else 0, dims, diffs)
