"""Matrices of polynomials: maps between free modules, their minors and ranks."""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement, PolyRing

from ideal_duality.algebra import format_polynomial, parse_polynomial
from ideal_duality.exceptions import RingMismatchError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PolyMatrix:
    """
    A map E_source -> E_target of free modules, stored as ``target_rank`` rows
    of ``source_rank`` entries. Columns are the images of the source basis.
    """
    ring: PolyRing
    entries: Tuple[Tuple[PolyElement, ...], ...]
    target_rank: int
    source_rank: int

    def __post_init__(self):
        if len(self.entries) != self.target_rank or any(len(row) != self.source_rank for row in self.entries):
            raise RingMismatchError(
                f"Matrix entries do not match the declared shape {self.target_rank}x{self.source_rank}.")

    @classmethod
    def from_rows(cls, ring: PolyRing, rows: Sequence[Sequence[PolyElement]], source_rank: Optional[int] = None):
        rows = tuple(tuple(ring(entry) for entry in row) for row in rows)
        if source_rank is None:
            source_rank = len(rows[0]) if rows else 0
        return cls(ring, rows, len(rows), source_rank)

    @classmethod
    def from_columns(cls, ring: PolyRing, columns: Sequence[Sequence[PolyElement]], target_rank: int):
        columns = [tuple(column) for column in columns]
        for column in columns:
            if len(column) != target_rank:
                raise RingMismatchError(f"Column of length {len(column)} in a matrix with {target_rank} rows.")
        rows = tuple(tuple(ring(column[i]) for column in columns) for i in range(target_rank))
        return cls(ring, rows, target_rank, len(columns))

    @classmethod
    def zero(cls, ring: PolyRing, target_rank: int, source_rank: int):
        return cls(ring, tuple((ring.zero,) * source_rank for _ in range(target_rank)), target_rank, source_rank)

    @classmethod
    def identity(cls, ring: PolyRing, rank: int):
        rows = tuple(tuple(ring.one if i == j else ring.zero for j in range(rank)) for i in range(rank))
        return cls(ring, rows, rank, rank)

    @classmethod
    def parse(cls, ring: PolyRing, rows: Sequence[Sequence[str]], source_rank: Optional[int] = None):
        return cls.from_rows(ring, [[parse_polynomial(text, ring) for text in row] for row in rows], source_rank)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.target_rank, self.source_rank

    def entry(self, i: int, j: int) -> PolyElement:
        return self.entries[i][j]

    def column(self, j: int) -> Tuple[PolyElement, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> List[Tuple[PolyElement, ...]]:
        return [self.column(j) for j in range(self.source_rank)]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix.from_columns(self.ring, self.entries, self.source_rank)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ring != other.ring:
            raise RingMismatchError("Cannot compose matrices over different rings.")
        if self.source_rank != other.target_rank:
            raise RingMismatchError(f"Cannot compose {self.shape} with {other.shape}.")
        zero = self.ring.zero
        rows = []
        for row in self.entries:
            new_row = []
            for j in range(other.source_rank):
                total = zero
                for k, a in enumerate(row):
                    if a:
                        total += a * other.entries[k][j]
                new_row.append(total)
            rows.append(tuple(new_row))
        return PolyMatrix(self.ring, tuple(rows), self.target_rank, other.source_rank)

    def is_zero(self) -> bool:
        return all(not entry for row in self.entries for entry in row)

    def without(self, rows: Iterable[int] = (), cols: Iterable[int] = ()) -> "PolyMatrix":
        rows, cols = set(rows), set(cols)
        kept_cols = [j for j in range(self.source_rank) if j not in cols]
        new_rows = tuple(tuple(row[j] for j in kept_cols)
                         for i, row in enumerate(self.entries) if i not in rows)
        return PolyMatrix(self.ring, new_rows, len(new_rows), len(kept_cols))

    def unit_entries(self):
        """Positions (row-major) of nonzero constant entries."""
        for i, row in enumerate(self.entries):
            for j, entry in enumerate(row):
                if entry and entry.is_ground:
                    yield i, j

    def as_strings(self) -> List[List[str]]:
        return [[format_polynomial(entry) for entry in row] for row in self.entries]


def eliminate_pivot(matrix: PolyMatrix, i: int, j: int) -> PolyMatrix:
    """
    Remove row ``i`` and column ``j`` around the unit entry (i, j):
    the rest becomes D - c * u^-1 * b, with b the rest of row i and c the rest of column j.
    """
    unit = matrix.entry(i, j)
    if not (unit and unit.is_ground):
        raise ValueError(f"Entry ({i}, {j}) is not a unit.")
    inverse = matrix.ring.domain.quo(matrix.ring.domain.one, unit.LC)
    rows = []
    for r, row in enumerate(matrix.entries):
        if r == i:
            continue
        factor = row[j].mul_ground(inverse)
        new_row = []
        for c, entry in enumerate(row):
            if c == j:
                continue
            new_row.append(entry - factor * matrix.entries[i][c] if factor else entry)
        rows.append(tuple(new_row))
    return PolyMatrix(matrix.ring, tuple(rows), matrix.target_rank - 1, matrix.source_rank - 1)


def eliminate_unit_pivots(presentation: PolyMatrix) -> PolyMatrix:
    """Cancel generators of coker(presentation) that a relation with a unit coefficient makes redundant."""
    current = presentation
    while True:
        pivot = next(current.unit_entries(), None)
        if pivot is None:
            return current
        current = eliminate_pivot(current, *pivot)


def _domain_matrix(rows, ring: PolyRing) -> DomainMatrix:
    size = (len(rows), len(rows[0]) if rows else 0)
    return DomainMatrix([list(row) for row in rows], size, ring.to_domain())


def determinant(rows: Sequence[Sequence[PolyElement]], ring: PolyRing) -> PolyElement:
    if not rows:
        return ring.one
    if len(rows) == 1:
        return rows[0][0]
    return _domain_matrix(rows, ring).det()


def matrix_rank(matrix: PolyMatrix) -> int:
    """Rank over the fraction field: the largest r with a nonzero r x r minor."""
    if matrix.target_rank == 0 or matrix.source_rank == 0 or matrix.is_zero():
        return 0
    domain = matrix.ring.to_domain()
    return _domain_matrix(matrix.entries, matrix.ring).convert_to(domain.get_field()).rank()


def minors(matrix: PolyMatrix, size: int) -> List[PolyElement]:
    """All nonzero ``size`` x ``size`` minors, rows and columns enumerated in lexicographic order."""
    ring = matrix.ring
    if size == 0:
        return [ring.one]
    if size > min(matrix.shape):
        return []
    result = []
    for row_set in combinations(range(matrix.target_rank), size):
        for col_set in combinations(range(matrix.source_rank), size):
            block = [[matrix.entries[i][j] for j in col_set] for i in row_set]
            value = determinant(block, ring)
            if value:
                result.append(value)
    return result


def normalize_generators(polys: Iterable[PolyElement]) -> List[PolyElement]:
    """Drop zeros and repeats, make monic, keep first-seen order."""
    seen = []
    for p in polys:
        if not p:
            continue
        monic = p.monic()
        if monic not in seen:
            seen.append(monic)
    return seen


def minor_ideal(matrix: PolyMatrix, size: int) -> List[PolyElement]:
    """Generators of I_size(matrix); [1] for size 0, [] (the zero ideal) when no minor survives."""
    generators = normalize_generators(minors(matrix, size))
    logger.debug(f"I_{size} of a {matrix.shape} matrix has {len(generators)} generator(s).")
    return generators


def fitting_ideal(presentation: PolyMatrix) -> List[PolyElement]:
    """0th Fitting ideal of coker(presentation): maximal minors of size = number of generators."""
    return minor_ideal(presentation, presentation.target_rank)
