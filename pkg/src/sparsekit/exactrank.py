"""Subset-inclusion matrices and deterministic column bases over the rationals.

For a hypergraph and an edge size r, the inclusion matrix has one row per
(r-1)-vertex subset that is contained in at least one size-r edge, and one
column per size-r edge (parent edge order preserved).  The greedy-leftmost
column basis keeps a column exactly when it is not a rational linear
combination of kept columns with smaller index.

Two elimination modes:

* ``exact``   fraction-free (Bareiss) elimination over Python integers;
  error-free.
* ``modular`` Gaussian elimination over GF(p) for a uniformly chosen
  prime p >= 2^61.  It can only err by dropping a column that is
  independent over the rationals, never by keeping a dependent one.

Row pivoting always picks the first candidate row in the colexicographic
order on subsets, so runs are reproducible bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .instances import Hypergraph, InvariantError
from .rng import Rng


class DependencyError(ValueError):
    """The target column is not dependent on the given basis.

    Only possible when the basis came from a faulty modular run; the caller
    should recompute the basis in exact mode.
    """


@dataclass(frozen=True)
class InclusionMatrix:
    r: int
    row_keys: tuple[tuple[int, ...], ...]     # realized (r-1)-subsets, colex order
    columns: tuple[int, ...]                  # edge indices into the parent
    entries: tuple[frozenset[int], ...]       # per column: nonzero row indices

    @property
    def num_rows(self) -> int:
        return len(self.row_keys)

    @property
    def num_columns(self) -> int:
        return len(self.columns)

    def dense(self) -> list[list[int]]:
        mat = [[0] * self.num_columns for _ in range(self.num_rows)]
        for j, rows in enumerate(self.entries):
            for i in rows:
                mat[i][j] = 1
        return mat

    def pretty(self) -> str:
        lines = [f"M_{self.r}: {self.num_rows} rows x {self.num_columns} columns"]
        for i, key in enumerate(self.row_keys):
            bits = "".join("1" if i in rows else "." for rows in self.entries)
            lines.append(f"  {{{','.join(map(str, key))}}}: {bits}")
        return "\n".join(lines)


def _colex_key(subset: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(reversed(subset))


def build_inclusion_matrix(h: Hypergraph, r: int) -> InclusionMatrix:
    """Rows are materialized only for subsets realized by some edge; a
    size-r edge contributes exactly r nonzero rows."""
    if not 1 <= r <= h.num_vertices:
        raise InvariantError(f"edge size r={r} out of range 1..{h.num_vertices}")
    columns = [j for j, e in enumerate(h.edges) if len(e) == r]
    realized: set[tuple[int, ...]] = set()
    for j in columns:
        realized.update(combinations(h.edges[j], r - 1))
    row_keys = tuple(sorted(realized, key=_colex_key))
    row_index = {key: i for i, key in enumerate(row_keys)}
    entries = tuple(
        frozenset(row_index[a] for a in combinations(h.edges[j], r - 1))
        for j in columns)
    return InclusionMatrix(r, row_keys, tuple(columns), entries)


@dataclass(frozen=True)
class ColumnBasis:
    r: int
    kept: tuple[int, ...]   # parent edge indices, ascending
    mode: str               # "exact" or "modular"

    @property
    def rank_value(self) -> int:
        return len(self.kept)


def _pivot_choice(mat: list[list[int]], col: int, start_row: int,
                  row_order: list[int]) -> int | None:
    """Physical row of the pivot: smallest original row key among nonzeros."""
    best = None
    for phys in range(start_row, len(mat)):
        if mat[phys][col]:
            if best is None or row_order[phys] < row_order[best]:
                best = phys
    return best


def _basis_positions_exact(mat: list[list[int]]) -> list[int]:
    """Greedy-leftmost pivot columns via fraction-free Bareiss elimination."""
    if not mat:
        return []
    num_rows, num_cols = len(mat), len(mat[0])
    row_order = list(range(num_rows))
    kept: list[int] = []
    prev = 1
    pr = 0
    for j in range(num_cols):
        if pr >= num_rows:
            break
        piv = _pivot_choice(mat, j, pr, row_order)
        if piv is None:
            continue
        if piv != pr:
            mat[pr], mat[piv] = mat[piv], mat[pr]
            row_order[pr], row_order[piv] = row_order[piv], row_order[pr]
        pivot = mat[pr][j]
        for i in range(pr + 1, num_rows):
            # the multiply-and-divide applies to every row, even where the
            # leading entry is already zero (Bareiss keeps entries integral)
            factor = mat[i][j]
            row_i, row_p = mat[i], mat[pr]
            for c in range(j + 1, num_cols):
                row_i[c] = (row_i[c] * pivot - factor * row_p[c]) // prev
            row_i[j] = 0
        prev = pivot
        kept.append(j)
        pr += 1
    return kept


def _basis_positions_modular(mat: list[list[int]], p: int) -> list[int]:
    """Greedy-leftmost pivot columns by Gaussian elimination over GF(p)."""
    if not mat:
        return []
    num_rows, num_cols = len(mat), len(mat[0])
    row_order = list(range(num_rows))
    kept: list[int] = []
    pr = 0
    for j in range(num_cols):
        if pr >= num_rows:
            break
        piv = _pivot_choice(mat, j, pr, row_order)
        if piv is None:
            continue
        if piv != pr:
            mat[pr], mat[piv] = mat[piv], mat[pr]
            row_order[pr], row_order[piv] = row_order[piv], row_order[pr]
        inv = pow(mat[pr][j], p - 2, p)
        row_p = mat[pr]
        for c in range(j, num_cols):
            row_p[c] = row_p[c] * inv % p
        for i in range(pr + 1, num_rows):
            factor = mat[i][j]
            if factor:
                row_i = mat[i]
                for c in range(j, num_cols):
                    row_i[c] = (row_i[c] - factor * row_p[c]) % p
        kept.append(j)
        pr += 1
    return kept


def _is_probable_prime(n: int) -> bool:
    # deterministic Miller-Rabin for n < 3.3e24
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(rng: Rng) -> int:
    """Uniformly chosen prime in [2^61, 2^62)."""
    while True:
        candidate = (1 << 61) | rng.randrange(1 << 61) | 1
        if _is_probable_prime(candidate):
            return candidate


def column_basis(matrix: InclusionMatrix, mode: str = "modular",
                 seed: int = 0) -> ColumnBasis:
    """Greedy-leftmost column basis in the requested elimination mode."""
    dense = matrix.dense()
    if mode == "exact":
        positions = _basis_positions_exact(dense)
    elif mode == "modular":
        p = random_prime(Rng(seed))
        positions = _basis_positions_modular(dense, p)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    kept = tuple(matrix.columns[pos] for pos in positions)
    return ColumnBasis(matrix.r, kept, mode)


@dataclass(frozen=True)
class DependencyCertificate:
    """Coefficients beta witnessing a dropped column's linear dependency.

    With the convention beta[target] = -1 and beta[i] for every basis
    column, the columns satisfy sum_i beta_i * m_i = 0 exactly; hence for
    every (r-1)-subset A the signed count over edges containing A is zero.
    """

    r: int
    target: int
    coefficients: tuple[tuple[int, Fraction], ...]   # (basis edge index, beta)

    def beta(self) -> dict[int, Fraction]:
        out = {edge: coeff for edge, coeff in self.coefficients}
        out[self.target] = Fraction(-1)
        return out


def _solve_rational(cols: list[frozenset[int]], target: frozenset[int],
                    num_rows: int) -> list[Fraction] | None:
    """Solve sum x_j * col_j = target by rational Gauss-Jordan; None if
    inconsistent."""
    width = len(cols)
    aug = [[Fraction(0)] * (width + 1) for _ in range(num_rows)]
    for j, rows in enumerate(cols):
        for i in rows:
            aug[i][j] = Fraction(1)
    for i in target:
        aug[i][width] = Fraction(1)
    pivot_of_col: list[int | None] = [None] * width
    pr = 0
    for j in range(width):
        piv = next((i for i in range(pr, num_rows) if aug[i][j]), None)
        if piv is None:
            continue
        aug[pr], aug[piv] = aug[piv], aug[pr]
        inv = 1 / aug[pr][j]
        aug[pr] = [x * inv for x in aug[pr]]
        for i in range(num_rows):
            if i != pr and aug[i][j]:
                factor = aug[i][j]
                aug[i] = [a - factor * b for a, b in zip(aug[i], aug[pr])]
        pivot_of_col[j] = pr
        pr += 1
    if any(row[width] and all(x == 0 for x in row[:width]) for row in aug):
        return None
    solution = [Fraction(0)] * width
    for j, piv in enumerate(pivot_of_col):
        if piv is not None:
            solution[j] = aug[piv][width]
    return solution


def dependency_certificate(matrix: InclusionMatrix, basis: ColumnBasis,
                           dropped: int) -> DependencyCertificate:
    """Exact rational dependency of a dropped column on the basis columns.

    Requires an exact-mode basis.  Raises DependencyError if the dropped
    column turns out to be independent (a faulty modular basis upstream).
    """
    if basis.mode != "exact":
        raise ValueError("dependency certificates require an exact-mode basis")
    if dropped in basis.kept:
        raise ValueError(f"column {dropped} is a basis column, not a dropped one")
    if dropped not in matrix.columns:
        raise ValueError(f"column {dropped} is not a column of this matrix")
    pos = {edge: i for i, edge in enumerate(matrix.columns)}
    basis_cols = [matrix.entries[pos[e]] for e in basis.kept]
    target = matrix.entries[pos[dropped]]
    solution = _solve_rational(basis_cols, target, matrix.num_rows)
    if solution is None:
        raise DependencyError(
            f"column {dropped} is independent of the basis; recompute exactly")
    cert = DependencyCertificate(
        matrix.r, dropped,
        tuple((e, coeff) for e, coeff in zip(basis.kept, solution)))
    # defensive: the defining identity must hold on every materialized row
    beta = cert.beta()
    for i in range(matrix.num_rows):
        total = Fraction(0)
        for e in beta:
            if i in matrix.entries[pos[e]]:
                total += beta[e]
        assert total == 0, "dependency certificate fails its defining identity"
    return cert


def bipartition_identity_holds(h: Hypergraph, cert: DependencyCertificate,
                          part_one: Iterable[int]) -> bool:
    """Exact check of the bipartition identity implied by the certificate.

    For a partition (V1, V2) of the vertices, the beta-weighted count of
    size-r edges inside V1 must equal (-1)^r times the count inside V2.
    """
    v1 = set(part_one)
    beta = cert.beta()
    lhs = Fraction(0)
    rhs = Fraction(0)
    for edge_index, coeff in beta.items():
        vertices = set(h.edges[edge_index])
        if vertices <= v1:
            lhs += coeff
        elif not (vertices & v1):
            rhs += coeff
    return lhs == (-1) ** cert.r * rhs
