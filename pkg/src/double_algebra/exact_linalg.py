"""Exact scalar and linear algebra kernel.

Scalars are elements of a sympy ground domain (``QQ`` or ``GF(p)``); vectors
are plain tuples of such elements and matrices are sequences of row vectors.
Every rank, echelon form and solve goes through ``DomainMatrix.rref``, so the
results are exact and the pivot choice is sympy's left-to-right one.
"""
import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

from .models import AlgebraError

logger = logging.getLogger(__name__)

Scalar = Any
Vector = Tuple[Scalar, ...]
Matrix = Sequence[Vector]

_SCALAR_PATTERN = re.compile(r"^-?\d+(/\d+)?$")


@lru_cache(maxsize=None)
def _ground_domain(characteristic: int):
    if characteristic == 0:
        return QQ
    return GF(characteristic, symmetric=False)


@dataclass(frozen=True)
class Field:
    """The ground field: the rationals (characteristic 0) or F_p"""
    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not isprime(self.characteristic):
            raise AlgebraError(f"Field characteristic must be 0 or prime, got {self.characteristic}")

    @property
    def domain(self):
        return _ground_domain(self.characteristic)

    @property
    def descriptor(self) -> str:
        return "Q" if self.characteristic == 0 else f"Fp:{self.characteristic}"

    @classmethod
    def parse_descriptor(cls, text: str) -> "Field":
        text = text.strip()
        if text == "Q":
            return cls(0)
        if text.startswith("Fp:") and text[3:].isdigit():
            return cls(int(text[3:]))
        raise AlgebraError(f"Unknown field descriptor: {text!r}")

    @property
    def zero(self) -> Scalar:
        return self.domain.zero

    @property
    def one(self) -> Scalar:
        return self.domain.one

    def __call__(self, value: int) -> Scalar:
        return self.domain(value)

    def fraction(self, numerator: int, denominator: int) -> Scalar:
        vanishes = denominator == 0 or (self.characteristic and denominator % self.characteristic == 0)
        if vanishes:
            raise AlgebraError(f"Denominator {denominator} vanishes in {self.descriptor}")
        return self.domain.quo(self.domain(numerator), self.domain(denominator))

    def parse(self, text: str) -> Scalar:
        """Parse "p/q" or "p" into a field element"""
        text = str(text).strip()
        if not _SCALAR_PATTERN.match(text):
            raise AlgebraError(f"Not a scalar literal: {text!r}")
        numerator, _, denominator = text.partition("/")
        return self.fraction(int(numerator), int(denominator or 1))

    def format(self, value: Scalar) -> str:
        return str(self.domain.to_sympy(value))


# Vectors

def zero_vector(field: Field, n: int) -> Vector:
    return (field.zero,) * n


def basis_vector(field: Field, n: int, k: int) -> Vector:
    zero = field.zero
    return tuple(field.one if j == k else zero for j in range(n))


def add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c: Scalar, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def linear_combination(field: Field, n: int, terms: Iterable[Tuple[Scalar, Vector]]) -> Vector:
    out = [field.zero] * n
    for c, v in terms:
        if not c:
            continue
        for k, a in enumerate(v):
            if a:
                out[k] += c * a
    return tuple(out)


def format_vector(field: Field, v: Vector) -> Tuple[str, ...]:
    return tuple(field.format(a) for a in v)


# Echelon forms and solving

def rref(field: Field, rows: Matrix, ncols: int) -> Tuple[List[Vector], Tuple[int, ...]]:
    """Nonzero rows of the reduced row echelon form, with their pivot columns"""
    data: Dict[int, Dict[int, Scalar]] = {}
    for r, row in enumerate(rows):
        if len(row) != ncols:
            raise AlgebraError(f"Row {r} has length {len(row)}, expected {ncols}")
        entries = {c: a for c, a in enumerate(row) if a}
        if entries:
            data[len(data)] = entries
    if not data or ncols == 0:
        return [], ()
    matrix = DomainMatrix(data, (len(data), ncols), field.domain)
    reduced, pivots = matrix.rref()
    sparse = reduced.to_sparse().rep
    zero = field.zero
    out = []
    for r in range(len(pivots)):
        entries = sparse.get(r, {})
        out.append(tuple(entries.get(c, zero) for c in range(ncols)))
    return out, tuple(pivots)


def rank(field: Field, rows: Matrix, ncols: int) -> int:
    return len(rref(field, rows, ncols)[1])


def _kernel_vectors(field: Field, reduced: List[Vector], pivots: Tuple[int, ...], ncols: int) -> List[Vector]:
    pivot_set = set(pivots)
    vectors = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [field.zero] * ncols
        v[f] = field.one
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        vectors.append(tuple(v))
    return vectors


def kernel(field: Field, rows: Matrix, ncols: int) -> "Subspace":
    """Null space of the matrix with the given rows; dimension ncols - rank"""
    reduced, pivots = rref(field, rows, ncols)
    return Subspace.span(field, ncols, _kernel_vectors(field, reduced, pivots, ncols))


def solve_many(field: Field, coeffs: Matrix, ncols: int, rhs_columns: Sequence[Vector]) -> List[Optional[Vector]]:
    """Solve coeffs x = b for every b; free variables are set to zero"""
    m = len(coeffs)
    for b in rhs_columns:
        if len(b) != m:
            raise AlgebraError("Right-hand side length does not match the number of equations")
    width = ncols + len(rhs_columns)
    augmented = [tuple(coeffs[r]) + tuple(b[r] for b in rhs_columns) for r in range(m)]
    reduced, pivots = rref(field, augmented, width)
    solutions: List[Optional[Vector]] = []
    for c in range(len(rhs_columns)):
        column = ncols + c
        x = [field.zero] * ncols
        consistent = True
        for row, p in zip(reduced, pivots):
            if p >= ncols:
                # zero coefficient part: any nonzero entry here is an inconsistency
                if row[column]:
                    consistent = False
                    break
                continue
            x[p] = row[column]
        solutions.append(tuple(x) if consistent else None)
    return solutions


def solve_linear(field: Field, coeffs: Matrix, rhs: Vector, ncols: Optional[int] = None) -> Optional[Vector]:
    """One exact solution of coeffs x = rhs, or None when inconsistent"""
    if ncols is None:
        ncols = len(coeffs[0]) if coeffs else 0
    if len(coeffs) != len(rhs):
        raise AlgebraError(f"{len(coeffs)} equations but {len(rhs)} right-hand sides")
    return solve_many(field, coeffs, ncols, [rhs])[0]


def mat_vec(field: Field, rows: Matrix, v: Vector) -> Vector:
    return tuple(sum((a * b for a, b in zip(row, v) if a and b), field.zero) for row in rows)


# Subspaces

@dataclass(frozen=True)
class Subspace:
    """A subspace given by its reduced row echelon basis"""
    field: Field
    ambient: int
    basis: Tuple[Vector, ...]
    pivots: Tuple[int, ...]

    @classmethod
    def span(cls, field: Field, ambient: int, vectors: Iterable[Vector]) -> "Subspace":
        reduced, pivots = rref(field, list(vectors), ambient)
        return cls(field, ambient, tuple(reduced), pivots)

    @classmethod
    def zero(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, (), ())

    @classmethod
    def full(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, tuple(basis_vector(field, ambient, k) for k in range(ambient)), tuple(range(ambient)))

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def coordinates(self, v: Vector) -> Optional[Vector]:
        """Coordinates of v in the echelon basis, or None when v is outside"""
        coords = tuple(v[p] for p in self.pivots)
        rebuilt = linear_combination(self.field, self.ambient, zip(coords, self.basis))
        return coords if rebuilt == tuple(v) else None

    def contains(self, v: Vector) -> bool:
        return self.coordinates(v) is not None

    def element(self, coords: Vector) -> Vector:
        return linear_combination(self.field, self.ambient, zip(coords, self.basis))

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.field, self.ambient, self.basis + other.basis)

    def intersection(self, other: "Subspace") -> "Subspace":
        d1, d2 = self.dimension, other.dimension
        if d1 == 0 or d2 == 0:
            return Subspace.zero(self.field, self.ambient)
        # columns: basis of self, then minus basis of other
        rows = [
            tuple(b[k] for b in self.basis) + tuple(-b[k] for b in other.basis)
            for k in range(self.ambient)
        ]
        solutions = kernel(self.field, rows, d1 + d2)
        vectors = [self.element(s[:d1]) for s in solutions.basis]
        return Subspace.span(self.field, self.ambient, vectors)


# Quotients

@dataclass(frozen=True)
class Quotient:
    """V / relations, represented on the non-pivot coordinates of the relation basis"""
    relations: Subspace

    @property
    def field(self) -> Field:
        return self.relations.field

    @property
    def ambient(self) -> int:
        return self.relations.ambient

    @property
    def free(self) -> Tuple[int, ...]:
        pivots = set(self.relations.pivots)
        return tuple(c for c in range(self.ambient) if c not in pivots)

    @property
    def dimension(self) -> int:
        return self.ambient - self.relations.dimension

    def project(self, v: Vector) -> Vector:
        out = [v[f] for f in self.free]
        for row, p in zip(self.relations.basis, self.relations.pivots):
            c = v[p]
            if not c:
                continue
            for idx, f in enumerate(self.free):
                if row[f]:
                    out[idx] -= c * row[f]
        return tuple(out)

    def section(self, q: Vector) -> Vector:
        v = [self.field.zero] * self.ambient
        for f, c in zip(self.free, q):
            v[f] = c
        return tuple(v)

    @property
    def projection_map(self) -> "LinearMap":
        return LinearMap.from_function(self.field, self.ambient, self.dimension, self.project)

    @property
    def section_map(self) -> "LinearMap":
        return LinearMap.from_function(self.field, self.dimension, self.ambient, self.section)


def quotient_space(field: Field, ambient_dim: int, relations: Subspace) -> Quotient:
    if relations.ambient != ambient_dim:
        raise AlgebraError(f"Relations live in dimension {relations.ambient}, not {ambient_dim}")
    if relations.field != field:
        raise AlgebraError("Relations are over a different field")
    quotient = Quotient(relations)
    logger.debug(f"Quotient of dimension {quotient.dimension} from ambient {ambient_dim}")
    return quotient


# Linear maps

@dataclass(frozen=True)
class LinearMap:
    """A linear map k^source_dim -> k^target_dim stored by the images of basis vectors"""
    field: Field
    source_dim: int
    target_dim: int
    columns: Tuple[Vector, ...]

    @classmethod
    def from_function(cls, field: Field, source_dim: int, target_dim: int,
                      fn: Callable[[Vector], Vector]) -> "LinearMap":
        columns = tuple(tuple(fn(basis_vector(field, source_dim, j))) for j in range(source_dim))
        for col in columns:
            if len(col) != target_dim:
                raise AlgebraError(f"Map value has length {len(col)}, expected {target_dim}")
        return cls(field, source_dim, target_dim, columns)

    @classmethod
    def from_rows(cls, field: Field, rows: Matrix, source_dim: int) -> "LinearMap":
        columns = tuple(tuple(row[j] for row in rows) for j in range(source_dim))
        return cls(field, source_dim, len(rows), columns)

    @classmethod
    def identity(cls, field: Field, n: int) -> "LinearMap":
        return cls(field, n, n, tuple(basis_vector(field, n, j) for j in range(n)))

    def apply(self, v: Vector) -> Vector:
        if len(v) != self.source_dim:
            raise AlgebraError(f"Vector of length {len(v)} applied to a map from dimension {self.source_dim}")
        return linear_combination(self.field, self.target_dim, zip(v, self.columns))

    __call__ = apply

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other"""
        if other.target_dim != self.source_dim:
            raise AlgebraError("Dimension mismatch in composition")
        return LinearMap(self.field, other.source_dim, self.target_dim,
                         tuple(self.apply(col) for col in other.columns))

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        return self.compose(other)

    def rows(self) -> List[Vector]:
        return [tuple(col[r] for col in self.columns) for r in range(self.target_dim)]

    @property
    def rank(self) -> int:
        return rank(self.field, list(self.columns), self.target_dim)

    def is_identity(self) -> bool:
        return self == LinearMap.identity(self.field, self.source_dim)

    def image(self) -> Subspace:
        return Subspace.span(self.field, self.target_dim, self.columns)

    def image_of(self, subspace: Subspace) -> Subspace:
        return Subspace.span(self.field, self.target_dim, [self.apply(b) for b in subspace.basis])

    def kernel(self) -> Subspace:
        return kernel(self.field, self.rows(), self.source_dim)

    def inverse(self) -> Optional["LinearMap"]:
        n = self.source_dim
        if n != self.target_dim:
            return None
        solutions = solve_many(self.field, self.rows(), n, [basis_vector(self.field, n, k) for k in range(n)])
        if any(s is None for s in solutions) or self.rank != n:
            return None
        return LinearMap(self.field, n, n, tuple(solutions))

    def restrict(self, source: Subspace, target: Subspace) -> Optional["LinearMap"]:
        """The map between echelon coordinates of two subspaces, or None if it leaves target"""
        columns = []
        for b in source.basis:
            coords = target.coordinates(self.apply(b))
            if coords is None:
                return None
            columns.append(coords)
        return LinearMap(self.field, source.dimension, target.dimension, tuple(columns))

    def flatten(self) -> Vector:
        return tuple(a for col in self.columns for a in col)
