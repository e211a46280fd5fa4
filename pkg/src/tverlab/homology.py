"""Reduced homology with Z_p coefficients for simplicial and product-cell
complexes: augmented chain complexes, Betti profiles, and homological
connectivity.

Homological connectivity is one less than the least degree carrying
nonvanishing reduced Z_p homology.  It is a computational proxy for
topological connectivity: the two agree for simply connected spaces, but a
complex whose bottom homology is pure torsion at some other prime will look
"more connected" than it is over Z_p.  Results are therefore reported with
an explicit lower-bound marker when homology vanishes through the top
dimension.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexes import ProductCellComplex, SimplicialComplex, is_prime

# At or below this many entries a boundary matrix is eliminated densely;
# larger matrices take the sparse path (bitsets over Z_2, pivoting by
# minimal column count otherwise).
DENSE_CELL_LIMIT = 200_000


class ModMatrix:
    """Sparse matrix over Z_p stored column-major as (row, value) pairs."""

    __slots__ = ("nrows", "ncols", "p", "cols")

    def __init__(self, nrows, ncols, p, cols=None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.nrows = nrows
        self.ncols = ncols
        self.p = p
        if cols is None:
            cols = [[] for _ in range(ncols)]
        self.cols = cols

    def set_column(self, j, entries):
        col = []
        for i, v in entries:
            v %= self.p
            if v:
                if not 0 <= i < self.nrows:
                    raise ValueError(f"row {i} out of range")
                col.append((i, v))
        col.sort()
        self.cols[j] = col

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def to_dense(self) -> np.ndarray:
        A = np.zeros((self.nrows, self.ncols), dtype=np.int64)
        for j, col in enumerate(self.cols):
            for i, v in col:
                A[i, j] = v
        return A

    def row_dicts(self) -> list[dict[int, int]]:
        rows: list[dict[int, int]] = [dict() for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, v in col:
                rows[i][j] = v
        return rows

    def composes_to_zero(self, next_boundary: "ModMatrix") -> bool:
        """True iff self @ next_boundary is the zero matrix."""
        if self.ncols != next_boundary.nrows:
            raise ValueError("boundary shapes do not chain")
        for col in next_boundary.cols:
            acc: dict[int, int] = {}
            for r, v in col:
                for i, w in self.cols[r]:
                    acc[i] = (acc.get(i, 0) + v * w) % self.p
            if any(acc.values()):
                return False
        return True

    def rank(self) -> int:
        if self.nrows == 0 or self.ncols == 0 or self.nnz == 0:
            return 0
        if self.nrows * self.ncols <= DENSE_CELL_LIMIT:
            return _rank_dense(self.to_dense(), self.p)
        if self.p == 2:
            bits = [0] * self.nrows
            for j, col in enumerate(self.cols):
                mask = 1 << j
                for i, _ in col:
                    bits[i] |= mask
            return _rank_gf2([b for b in bits if b])
        return _rank_sparse(self.row_dicts(), self.p)


def _rank_dense(A: np.ndarray, p: int) -> int:
    A = A % p
    m, n = A.shape
    r = 0
    for c in range(n):
        pivot = None
        for i in range(r, m):
            if A[i, c]:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != r:
            A[[r, pivot]] = A[[pivot, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        below = A[r + 1:, c]
        nz = np.nonzero(below)[0]
        if len(nz):
            A[r + 1 + nz] = (A[r + 1 + nz] - np.outer(below[nz], A[r])) % p
        r += 1
        if r == m:
            break
    return r


def _rank_gf2(rows: list[int]) -> int:
    pivots: dict[int, int] = {}
    rank = 0
    for row in rows:
        while row:
            msb = row.bit_length() - 1
            other = pivots.get(msb)
            if other is None:
                pivots[msb] = row
                rank += 1
                break
            row ^= other
    return rank


def _rank_sparse(rows: list[dict[int, int]], p: int) -> int:
    """Gaussian elimination on row dicts, pivot column chosen by minimal
    active row count, pivot row within it by minimal fill."""
    rows = [r for r in rows if r]
    col_rows: dict[int, set[int]] = {}
    for i, r in enumerate(rows):
        for c in r:
            col_rows.setdefault(c, set()).add(i)
    rank = 0
    while col_rows:
        c = min(col_rows, key=lambda cc: (len(col_rows[cc]), cc))
        members = col_rows[c]
        piv = min(members, key=lambda i: (len(rows[i]), i))
        prow = rows[piv]
        inv = pow(prow[c], -1, p)
        prow = {cc: (v * inv) % p for cc, v in prow.items()}
        for i in list(members):
            if i == piv:
                continue
            r = rows[i]
            factor = r[c]
            for cc, v in prow.items():
                nv = (r.get(cc, 0) - factor * v) % p
                if nv:
                    if cc not in r:
                        col_rows.setdefault(cc, set()).add(i)
                    r[cc] = nv
                elif cc in r:
                    del r[cc]
                    bucket = col_rows.get(cc)
                    if bucket is not None:
                        bucket.discard(i)
                        if not bucket:
                            del col_rows[cc]
        for cc in prow:
            bucket = col_rows.get(cc)
            if bucket is not None:
                bucket.discard(piv)
                if not bucket:
                    del col_rows[cc]
        rows[piv] = {}
        rank += 1
    return rank


@dataclass
class ChainComplexModP:
    """Graded boundary matrices over Z_p, augmented in degree -1.

    ``dims[d]`` counts the cells in degree d; ``boundaries[d]`` maps degree d
    to degree d-1, with ``boundaries[0]`` the 1-row augmentation sending every
    0-cell to the point class.
    """

    p: int
    dims: list[int]
    boundaries: list[ModMatrix]

    def __post_init__(self):
        self._rank_cache: dict[int, int] = {}

    @property
    def top_dim(self) -> int:
        return len(self.dims) - 1

    def rank_boundary(self, d: int) -> int:
        """Rank of the boundary map leaving degree d (0 above the top)."""
        if d < 0 or d > self.top_dim:
            return 0
        if d not in self._rank_cache:
            self._rank_cache[d] = self.boundaries[d].rank()
        return self._rank_cache[d]

    def betti_number(self, d: int) -> int:
        if d < 0 or d > self.top_dim:
            return 0
        return self.dims[d] - self.rank_boundary(d) - self.rank_boundary(d + 1)

    def verify(self) -> None:
        """Assert shapes chain correctly and that consecutive boundaries
        compose to zero (augmentation included)."""
        for d in range(self.top_dim + 1):
            mat = self.boundaries[d]
            expect_rows = 1 if d == 0 else self.dims[d - 1]
            if mat.nrows != expect_rows or mat.ncols != self.dims[d]:
                raise AssertionError(f"boundary {d} has shape {mat.nrows}x{mat.ncols}")
        for d in range(self.top_dim):
            if not self.boundaries[d].composes_to_zero(self.boundaries[d + 1]):
                raise AssertionError(f"boundary composition {d} o {d + 1} is nonzero")


@dataclass(frozen=True)
class BettiProfile:
    """Reduced Betti numbers over Z_p, degrees 0..top."""

    p: int
    betti: tuple[int, ...]

    def first_nonzero_degree(self):
        for d, b in enumerate(self.betti):
            if b:
                return d
        return None


@dataclass(frozen=True)
class HConn:
    """Homological connectivity: the honest value, or a lower bound when
    reduced homology vanishes through the top dimension (the complex may be
    more connected than Z_p homology can certify).  -2 is the empty complex.
    """

    value: int
    is_lower_bound: bool = False

    def __str__(self):
        return f">= {self.value}" if self.is_lower_bound else str(self.value)


def chain_complex(complex_: SimplicialComplex, p: int) -> ChainComplexModP:
    """Simplicial chain complex with the standard alternating-sign boundary
    in the canonical vertex order, augmented over Z_p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    top = complex_.dim
    if top < 0:
        return ChainComplexModP(p, [], [])
    graded = [complex_.faces_of_dim(d) for d in range(top + 1)]
    index = [{f: i for i, f in enumerate(fs)} for fs in graded]
    dims = [len(fs) for fs in graded]

    aug = ModMatrix(1, dims[0], p)
    for j in range(dims[0]):
        aug.set_column(j, [(0, 1)])
    boundaries = [aug]
    for d in range(1, top + 1):
        mat = ModMatrix(dims[d - 1], dims[d], p)
        lower = index[d - 1]
        for j, f in enumerate(graded[d]):
            mat.set_column(
                j,
                (
                    (lower[f[:t] + f[t + 1:]], -1 if t % 2 else 1)
                    for t in range(len(f))
                ),
            )
        boundaries.append(mat)
    return ChainComplexModP(p, dims, boundaries)


def cellular_chain_complex(product: ProductCellComplex, p: int) -> ChainComplexModP:
    """Cellular chain complex of a product-cell complex.

    The boundary of a cell is the signed sum over factors of the simplicial
    boundary of that factor, the sign of factor i being (-1) to the total
    dimension of the preceding factors; summands whose factor would become
    empty are dropped, so 0-dimensional factors contribute nothing.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    top = product.dim
    if top < 0:
        return ChainComplexModP(p, [], [])
    graded = [product.cells_of_dim(d) for d in range(top + 1)]
    index = [{c: i for i, c in enumerate(cs)} for cs in graded]
    dims = [len(cs) for cs in graded]

    aug = ModMatrix(1, dims[0], p)
    for j in range(dims[0]):
        aug.set_column(j, [(0, 1)])
    boundaries = [aug]
    for d in range(1, top + 1):
        mat = ModMatrix(dims[d - 1], dims[d], p)
        lower = index[d - 1]
        for j, cell in enumerate(graded[d]):
            entries = []
            prefix_sign = 1
            for i, factor in enumerate(cell):
                if len(factor) >= 2:
                    for t in range(len(factor)):
                        child = cell[:i] + (factor[:t] + factor[t + 1:],) + cell[i + 1:]
                        sign = prefix_sign * (-1 if t % 2 else 1)
                        entries.append((lower[child], sign))
                prefix_sign *= -1 if (len(factor) - 1) % 2 else 1
            mat.set_column(j, entries)
        boundaries.append(mat)
    return ChainComplexModP(p, dims, boundaries)


def _as_chain_complex(obj, p: int) -> ChainComplexModP:
    if isinstance(obj, ChainComplexModP):
        return obj
    if isinstance(obj, ProductCellComplex):
        return cellular_chain_complex(obj, p)
    if isinstance(obj, SimplicialComplex):
        return chain_complex(obj, p)
    raise TypeError(f"cannot take homology of {type(obj).__name__}")


def betti(cc: ChainComplexModP) -> BettiProfile:
    """Reduced Betti numbers from boundary ranks."""
    return BettiProfile(
        cc.p, tuple(cc.betti_number(d) for d in range(cc.top_dim + 1))
    )


def betti_numbers(complex_, p: int = 2) -> BettiProfile:
    """Reduced Betti numbers of a simplicial or product-cell complex."""
    return betti(_as_chain_complex(complex_, p))


def hconn(complex_, p: int = 2) -> HConn:
    """Homological connectivity over Z_p.

    Ranks are computed degree by degree and the scan stops at the first
    nonvanishing reduced Betti number, so low-connectivity answers never pay
    for the top-dimensional boundaries.
    """
    cc = _as_chain_complex(complex_, p)
    if not cc.dims:
        return HConn(-2)
    for d in range(cc.top_dim + 1):
        if cc.betti_number(d) > 0:
            return HConn(d - 1)
    return HConn(cc.top_dim, is_lower_bound=True)
