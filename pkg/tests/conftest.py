"""Shared randomized generators for the test suite.

Random complexes are built as direct sums of elementary two-term complexes
and lone summands, then conjugated by random invertible (over Q) or
unimodular (over Z) changes of basis so the matrices look generic while
d o d = 0 holds exactly.  Double complexes come from tensor bicomplexes of
two random complexes, which have commuting squares by construction.
"""

import random
from fractions import Fraction

from exhom.complexes import (
    CochainComplex,
    cochain_complex,
    int_chain_complex,
)
from exhom.qlinalg import RatMatrix, rank, solve
from exhom.spectral import double_complex
from exhom.zlinalg import IntMatrix


def random_cochain(rng, max_deg=3, max_pieces=4, scale=3):
    """Random rational cochain complex with degrees in [0, max_deg]."""
    dims = {n: 0 for n in range(max_deg + 1)}
    pieces = []
    for _ in range(rng.randint(1, max_pieces)):
        if rng.random() < 0.55 and max_deg >= 1:
            d = rng.randint(0, max_deg - 1)
            pieces.append((d, "arrow", dims[d], dims[d + 1]))
            dims[d] += 1
            dims[d + 1] += 1
        else:
            d = rng.randint(0, max_deg)
            pieces.append((d, "point", dims[d], None))
            dims[d] += 1
    diffs = {}
    for n in range(max_deg):
        if dims[n] and dims[n + 1]:
            rows = [[Fraction(0)] * dims[n] for _ in range(dims[n + 1])]
            for d, kind, src, dst in pieces:
                if kind == "arrow" and d == n:
                    rows[dst][src] = Fraction(rng.choice(
                        [x for x in range(-scale, scale + 1) if x]))
            diffs[n] = RatMatrix.from_rows(rows, dims[n])
    return cochain_complex(0, dims, diffs)


def _rat_inverse(M):
    d = M.rows
    cols = [solve(M, [Fraction(1) if i == j else Fraction(0)
                      for i in range(d)]) for j in range(d)]
    return RatMatrix.from_rows([list(r) for r in zip(*cols)], d)


def conjugate_cochain(rng, C: CochainComplex, spread=2) -> CochainComplex:
    """Apply a random invertible change of basis in every degree."""
    P = {}
    for n in C.degrees():
        d = C.dim(n)
        while True:
            M = RatMatrix.from_rows(
                [[Fraction(rng.randint(-spread, spread)) for _ in range(d)]
                 for _ in range(d)], d)
            if rank(M) == d:
                break
        P[n] = M
    diffs = {}
    for n in C.degrees():
        dn = C.differential(n)
        if dn.rows and dn.cols:
            diffs[n] = P[n + 1] @ dn @ _rat_inverse(P[n])
    return cochain_complex(C.min_deg, dict(C.dims), diffs)


def random_dense_cochain(rng, max_deg=3, max_pieces=4):
    return conjugate_cochain(rng, random_cochain(rng, max_deg, max_pieces))


def random_unimodular(rng, n, ops=6):
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(ops):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-2, 2)
        m[i] = [a + c * b for a, b in zip(m[i], m[j])]
    return IntMatrix.from_rows(m, n)


def random_int_chain(rng, max_deg=3, max_pieces=4, max_mult=6):
    """Random integer chain complex, conjugated by unimodular matrices."""
    dims = {n: 0 for n in range(max_deg + 1)}
    pieces = []
    for _ in range(rng.randint(1, max_pieces)):
        if rng.random() < 0.6 and max_deg >= 1:
            d = rng.randint(1, max_deg)
            pieces.append((d, "arrow", dims[d], dims[d - 1],
                           rng.randint(1, max_mult) * rng.choice([1, -1])))
            dims[d] += 1
            dims[d - 1] += 1
        else:
            d = rng.randint(0, max_deg)
            pieces.append((d, "point", dims[d], None, 0))
            dims[d] += 1
    U = {n: random_unimodular(rng, dims[n]) for n in dims}
    Uinv = {}
    for n, M in U.items():
        # invert the unimodular matrix exactly over Q; the result is integral
        inv = _rat_inverse(M.to_rational()) if M.rows else None
        Uinv[n] = (IntMatrix.from_rows(
            [[f.numerator for f in inv.row(i)] for i in range(inv.rows)],
            inv.cols) if inv is not None else IntMatrix.zero(0, 0))
    diffs = {}
    for n in range(1, max_deg + 1):
        if dims[n] and dims[n - 1]:
            rows = [[0] * dims[n] for _ in range(dims[n - 1])]
            for d, kind, src, dst, mult in pieces:
                if kind == "arrow" and d == n:
                    rows[dst][src] = mult
            D = IntMatrix.from_rows(rows, dims[n])
            diffs[n] = U[n - 1] @ D @ Uinv[n]
    return int_chain_complex(0, dims, diffs)


def tensor_double_complex(C: CochainComplex, D: CochainComplex):
    """Tensor bicomplex K^{r,s} = C^r (x) D^s with commuting squares."""
    dims = {}
    horiz = {}
    vert = {}
    for r in C.degrees():
        for s in D.degrees():
            dims[(r, s)] = C.dim(r) * D.dim(s)
    for r in C.degrees():
        for s in D.degrees():
            m, k = C.dim(r), D.dim(s)
            if not dims.get((r, s)):
                continue
            dc, dd = C.differential(r), D.differential(s)
            if dims.get((r + 1, s)):
                rows = [[Fraction(0)] * (m * k) for _ in range(dc.rows * k)]
                for a in range(dc.rows):
                    for b in range(dc.cols):
                        if dc[a, b]:
                            for y in range(k):
                                rows[a * k + y][b * k + y] = dc[a, b]
                horiz[(r, s)] = RatMatrix.from_rows(rows, m * k)
            if dims.get((r, s + 1)):
                rows = [[Fraction(0)] * (m * k) for _ in range(m * dd.rows)]
                for x in range(m):
                    for a in range(dd.rows):
                        for b in range(dd.cols):
                            if dd[a, b]:
                                rows[x * dd.rows + a][x * dd.cols + b] = dd[a, b]
                vert[(r, s)] = RatMatrix.from_rows(rows, m * k)
    return double_complex(C.max_deg, D.max_deg, dims, horiz, vert)


def random_double_complex(rng, max_r=3, max_c=3):
    """Random first-quadrant double complex with cell dims <= 3."""
    C = random_dense_cochain(rng, max_deg=max_r, max_pieces=3)
    D = random_cochain(rng, max_deg=max_c, max_pieces=2)
    return tensor_double_complex(C, D)


def random_int_matrix(rng, max_size=6, bound=20):
    r = rng.randint(0, max_size)
    c = rng.randint(0, max_size)
    return IntMatrix.from_rows(
        [[rng.randint(-bound, bound) for _ in range(c)] for _ in range(r)], c)
