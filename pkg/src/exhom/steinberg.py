"""Closed-form Ext / E2 / Betti calculus for quotients of a product of two
Drinfeld symmetric spaces of dimensions d and d'.

Ext dimensions between generalized Steinberg tensor factors are governed by
symmetric differences of parabolic labels.  The second page of the covering
spectral sequence is assembled as a four-term sum over Kunneth pairs (i, j),
one term per unitary constituent of the induced representation, weighted by
the multiplicity vector (m10, m01, m11); the trivial constituent always has
multiplicity one.  A separate emitter tabulates the published case-analysis
table side by side with the four-term sum and reports every difference
without judging which is intended.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Tuple


@dataclass(frozen=True)
class SteinbergLabel:
    """Subset I of {1..d} labelling a generalized Steinberg representation."""

    d: int
    subset: FrozenSet[int]

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("dimension must be >= 1")
        if not all(1 <= x <= self.d for x in self.subset):
            raise ValueError("label elements must lie in [1, d]")

    @staticmethod
    def of(d: int, elements) -> "SteinbergLabel":
        return SteinbergLabel(d, frozenset(elements))


@dataclass(frozen=True)
class InducedSpectrum:
    """Multiplicities of the nontrivial unitary constituents.

    m10: Steinberg (x) trivial, m01: trivial (x) Steinberg,
    m11: Steinberg (x) Steinberg.  The trivial (x) trivial multiplicity is
    always one and is not configurable.
    """

    m10: int
    m01: int
    m11: int

    def __post_init__(self):
        if min(self.m10, self.m01, self.m11) < 0:
            raise ValueError("multiplicities must be nonnegative")

    @property
    def m00(self) -> int:
        return 1


ZERO_SPECTRUM = InducedSpectrum(0, 0, 0)


def delta(I1: SteinbergLabel, I2: SteinbergLabel) -> int:
    """Size of the symmetric difference |I1 u I2| - |I1 n I2|."""
    if I1.d != I2.d:
        raise ValueError("labels live over different dimensions")
    return len(I1.subset ^ I2.subset)


def ext_dim(I1: SteinbergLabel, J1: SteinbergLabel,
            I2: SteinbergLabel, J2: SteinbergLabel, i: int) -> int:
    """Dimension of the degree-i Ext between two Steinberg tensor factors:
    1 exactly when i equals delta(I1,I2) + delta(J1,J2), else 0."""
    return 1 if i == delta(I1, I2) + delta(J1, J2) else 0


def e2_dim(d: int, dp: int, spectrum: InducedSpectrum, r: int, s: int) -> int:
    """Second-page dimension at (r, s) from the four-term sum over Kunneth
    pairs i + j = s, 0 <= i <= d, 0 <= j <= dp."""
    if d < 1 or dp < 1:
        raise ValueError("dimensions must be >= 1")
    total = 0
    for i in range(max(0, s - dp), min(d, s) + 1):
        j = s - i
        total += (
            (1 if r == i + j else 0)
            + (spectrum.m10 if r == (d - i) + j else 0)
            + (spectrum.m01 if r == i + (dp - j) else 0)
            + (spectrum.m11 if r == (d - i) + (dp - j) else 0)
        )
    return total


@dataclass(frozen=True)
class E2Table:
    """Second-page grid over 0 <= r, s <= d + dp."""

    d: int
    dp: int
    spectrum: InducedSpectrum
    grid: Dict[Tuple[int, int], int]

    def at(self, r: int, s: int) -> int:
        return self.grid.get((r, s), 0)

    @property
    def size(self) -> int:
        return self.d + self.dp


def e2_table(d: int, dp: int, spectrum: InducedSpectrum) -> E2Table:
    """Tabulate e2_dim over the supported square."""
    top = d + dp
    grid = {}
    for r in range(top + 1):
        for s in range(top + 1):
            v = e2_dim(d, dp, spectrum, r, s)
            if v:
                grid[(r, s)] = v
    return E2Table(d, dp, spectrum, grid)


def betti(d: int, dp: int, spectrum: InducedSpectrum, n: int) -> int:
    """Betti number b_n as the anti-diagonal sum of the second page
    (the sequence degenerates there)."""
    if n < 0 or n > 2 * (d + dp):
        return 0
    return sum(e2_dim(d, dp, spectrum, r, n - r)
               for r in range(max(0, n - (d + dp)), min(d + dp, n) + 1))


def covering_filtration_dims(d: int, dp: int, spectrum: InducedSpectrum,
                             n: int) -> List[int]:
    """Dims of the covering filtration F^0 >= ... >= F^{n+1} on H^n:
    dim F^i = sum over r >= i of the degree-n anti-diagonal of the grid."""
    if n < 0 or n > 2 * (d + dp):
        raise ValueError(f"degree {n} outside [0, {2 * (d + dp)}]")
    diag = {r: e2_dim(d, dp, spectrum, r, n - r)
            for r in range(max(0, n - (d + dp)), min(d + dp, n) + 1)}
    return [sum(v for r, v in diag.items() if r >= i) for i in range(n + 2)]


@dataclass(frozen=True)
class BettiProfile:
    """Betti numbers b_0..b_{2(d+dp)} with per-degree filtration dims."""

    d: int
    dp: int
    spectrum: InducedSpectrum
    b: Tuple[int, ...]
    filtrations: Tuple[Tuple[int, ...], ...]


def betti_profile(d: int, dp: int, spectrum: InducedSpectrum) -> BettiProfile:
    top = 2 * (d + dp)
    return BettiProfile(
        d, dp, spectrum,
        b=tuple(betti(d, dp, spectrum, n) for n in range(top + 1)),
        filtrations=tuple(tuple(covering_filtration_dims(d, dp, spectrum, n))
                          for n in range(top + 1)),
    )


def _stated_e2(d: int, dp: int, spectrum: InducedSpectrum,
               r: int, s: int) -> int:
    """The published case-analysis table for even d <= dp."""
    m10, m01, m11 = spectrum.m10, spectrum.m01, spectrum.m11
    half = (d + dp) // 2
    if r == s:
        if r < d // 2:
            return 1
        if d // 2 <= r < dp // 2:
            return m10 + 1
        if r == half:
            return m11 + m10 + m01 + 1
        if r >= dp // 2:
            return m10 + m01 + 1
        return 0
    if r + s == d + dp:
        return m11 + m10 + m01
    if (r + s) % 2 == 0 and d <= r + s < dp:
        return m10
    if (r + s) % 2 == 0 and r + s >= dp:
        return m10 + m01
    return 0


def _stated_betti(d: int, dp: int, spectrum: InducedSpectrum, n: int) -> int:
    """The published closed-form Betti numbers for even d <= dp."""
    m10, m01, m11 = spectrum.m10, spectrum.m01, spectrum.m11
    if n == d + dp:
        return (d + dp + 1) * (m11 + m10 + m01) + 1
    if n < 0 or n > 2 * (d + dp) or n % 2:
        return 0
    if n < d:
        return 1
    if n < dp:
        return (n + 1) * m10 + 1
    if n < d + dp:
        return (n + 1) * (m10 + m01) + 1
    return (2 * d + 2 * dp + 1 - n) * (m10 + m01) + 1


@dataclass(frozen=True)
class PaperTableDiff:
    """Side-by-side comparison of the four-term sum with the published table.

    Makes no judgment of which is correct; cell and Betti differences are
    simply reported.
    """

    d: int
    dp: int
    spectrum: InducedSpectrum
    computed: E2Table
    stated: Dict[Tuple[int, int], int]
    cell_diffs: Dict[Tuple[int, int], Tuple[int, int]]  # (computed, stated)
    betti_computed: Tuple[int, ...]
    betti_stated: Tuple[int, ...]
    betti_diffs: Dict[int, Tuple[int, int]]

    def render(self) -> str:
        top = self.d + self.dp
        width = max(3, max((len(str(v)) for v in
                            list(self.computed.grid.values())
                            + list(self.stated.values())), default=1) + 1)

        def grid_lines(title, lookup):
            lines = [title]
            header = "  s\\r " + "".join(str(r).rjust(width)
                                         for r in range(top + 1))
            lines.append(header)
            for s in range(top, -1, -1):
                lines.append("  " + str(s).rjust(3) + " "
                             + "".join(str(lookup(r, s)).rjust(width)
                                       for r in range(top + 1)))
            return lines

        lines = [f"second-page comparison  d={self.d} d'={self.dp} "
                 f"m10={self.spectrum.m10} m01={self.spectrum.m01} "
                 f"m11={self.spectrum.m11}"]
        lines += grid_lines("computed (four-term sum):", self.computed.at)
        lines += grid_lines("stated (case table):",
                            lambda r, s: self.stated.get((r, s), 0))
        lines += grid_lines("difference (computed - stated):",
                            lambda r, s: self.computed.at(r, s)
                            - self.stated.get((r, s), 0))
        lines.append("cell differences: "
                     + (", ".join(f"({r},{s}): {c} vs {st}"
                                  for (r, s), (c, st)
                                  in sorted(self.cell_diffs.items()))
                        or "none"))
        lines.append("betti computed: " + " ".join(map(str, self.betti_computed)))
        lines.append("betti stated:   " + " ".join(map(str, self.betti_stated)))
        lines.append("betti differences: "
                     + (", ".join(f"n={n}: {c} vs {st}"
                                  for n, (c, st)
                                  in sorted(self.betti_diffs.items()))
                        or "none"))
        return "\n".join(lines)


def paper_table_diff(d: int, dp: int, spectrum: InducedSpectrum) -> PaperTableDiff:
    """Compare the four-term-sum grid and Betti numbers against the published
    case tables.  Only even d <= dp is accepted: no table is stated otherwise."""
    if d % 2 or dp % 2 or d > dp:
        raise ValueError(
            "no stated table for this case: it requires even d, d' with d <= d'")
    computed = e2_table(d, dp, spectrum)
    top = d + dp
    stated = {}
    for r in range(top + 1):
        for s in range(top + 1):
            v = _stated_e2(d, dp, spectrum, r, s)
            if v:
                stated[(r, s)] = v
    cell_diffs = {}
    for r in range(top + 1):
        for s in range(top + 1):
            c, st = computed.at(r, s), stated.get((r, s), 0)
            if c != st:
                cell_diffs[(r, s)] = (c, st)
    bc = tuple(betti(d, dp, spectrum, n) for n in range(2 * top + 1))
    bs = tuple(_stated_betti(d, dp, spectrum, n) for n in range(2 * top + 1))
    betti_diffs = {n: (c, st) for n, (c, st) in enumerate(zip(bc, bs))
                   if c != st}
    return PaperTableDiff(d, dp, spectrum, computed, stated, cell_diffs,
                          bc, bs, betti_diffs)
