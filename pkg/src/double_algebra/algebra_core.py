"""Associative unital algebras by structure constants, and tensor squares over subalgebras."""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .exact_linalg import (
    Field, LinearMap, Quotient, Scalar, Subspace, Vector,
    basis_vector, format_vector, kernel, linear_combination, quotient_space, solve_linear, sub,
)
from .models import AlgebraError, CheckResult, Witness

logger = logging.getLogger(__name__)

SparseProduct = Tuple[Tuple[int, Scalar], ...]


@dataclass(frozen=True)
class Element:
    coordinates: Vector
    algebra: str


def _sparse(v: Vector) -> SparseProduct:
    return tuple((k, c) for k, c in enumerate(v) if c)


@dataclass(frozen=True)
class ProductTable:
    """Structure constants of an n-dimensional algebra: products[i*n + j] is b_i·b_j"""
    field: Field
    dimension: int
    products: Tuple[SparseProduct, ...]
    unit: Vector
    name: str = field(default="A", compare=False)

    @classmethod
    def from_rule(cls, field: Field, n: int, rule: Callable[[int, int], Vector], unit: Vector,
                  name: str = "A", validate: bool = True) -> "ProductTable":
        if n < 1:
            raise AlgebraError("Algebras must have positive dimension")
        products = []
        for i in range(n):
            for j in range(n):
                value = tuple(rule(i, j))
                if len(value) != n:
                    raise AlgebraError(f"Product of b_{i} and b_{j} has length {len(value)}, expected {n}")
                products.append(_sparse(value))
        table = cls(field, n, tuple(products), tuple(unit), name)
        if len(table.unit) != n:
            raise AlgebraError(f"Unit has length {len(table.unit)}, expected {n}")
        if validate:
            table.validate()
        return table

    @classmethod
    def from_dense(cls, field: Field, n: int, constants: Sequence[Scalar], unit: Vector,
                   name: str = "A", validate: bool = True) -> "ProductTable":
        """constants is the flat list c[i][j][k] in row-major order"""
        if len(constants) != n * n * n:
            raise AlgebraError(f"Expected {n ** 3} structure constants, got {len(constants)}")
        return cls.from_rule(
            field, n, lambda i, j: tuple(constants[(i * n + j) * n: (i * n + j + 1) * n]), unit, name, validate
        )

    def validate(self) -> None:
        n = self.dimension
        for x in range(n):
            b = basis_vector(self.field, n, x)
            if self.mul(self.unit, b) != b or self.mul(b, self.unit) != b:
                raise AlgebraError(f"{self.name}: unit fails on basis element {x}")
        for x, y, z in itertools.product(range(n), repeat=3):
            left = self.mul(self.basis_product(x, y), basis_vector(self.field, n, z))
            right = self.mul(basis_vector(self.field, n, x), self.basis_product(y, z))
            if left != right:
                raise AlgebraError(f"{self.name}: not associative at basis triple ({x}, {y}, {z})")

    def basis_product(self, i: int, j: int) -> Vector:
        out = [self.field.zero] * self.dimension
        for k, c in self.products[i * self.dimension + j]:
            out[k] = c
        return tuple(out)

    def dense_constants(self) -> List[Scalar]:
        n = self.dimension
        return [c for i in range(n) for j in range(n) for c in self.basis_product(i, j)]

    def mul(self, x: Vector, y: Vector) -> Vector:
        n = self.dimension
        if len(x) != n or len(y) != n:
            raise AlgebraError(f"{self.name}: operands must have length {n}")
        out = [self.field.zero] * n
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = i * n
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, v in self.products[row + j]:
                    out[k] += c * v
        return tuple(out)

    def mul_many(self, *factors: Vector) -> Vector:
        result = factors[0]
        for factor in factors[1:]:
            result = self.mul(result, factor)
        return result

    def left_multiplication(self, a: Vector) -> LinearMap:
        n = self.dimension
        return LinearMap.from_function(self.field, n, n, lambda x: self.mul(a, x))

    def right_multiplication(self, a: Vector) -> LinearMap:
        n = self.dimension
        return LinearMap.from_function(self.field, n, n, lambda x: self.mul(x, a))

    def opposite(self) -> "ProductTable":
        n = self.dimension
        products = tuple(self.products[j * n + i] for i in range(n) for j in range(n))
        name = self.name[:-3] if self.name.endswith("^op") else f"{self.name}^op"
        return ProductTable(self.field, n, products, self.unit, name)

    def is_commutative(self) -> bool:
        n = self.dimension
        return all(self.products[i * n + j] == self.products[j * n + i] for i in range(n) for j in range(i))

    def centralizer(self, subspace: Subspace) -> Subspace:
        """Elements commuting with every element of the subspace"""
        n = self.dimension
        rows: List[Vector] = []
        for s in subspace.basis:
            commutator = LinearMap.from_function(self.field, n, n, lambda x: sub(self.mul(s, x), self.mul(x, s)))
            rows.extend(commutator.rows())
        return kernel(self.field, rows, n)

    def center(self) -> Subspace:
        return self.centralizer(Subspace.full(self.field, self.dimension))

    def is_subalgebra(self, subspace: Subspace) -> bool:
        if not subspace.contains(self.unit):
            return False
        return all(subspace.contains(self.mul(x, y)) for x in subspace.basis for y in subspace.basis)

    def inverse(self, x: Vector) -> Optional[Vector]:
        """Two-sided inverse of x, or None"""
        y = solve_linear(self.field, self.left_multiplication(x).rows(), self.unit, self.dimension)
        if y is None or self.mul(y, x) != self.unit:
            return None
        return y


def multiply(table: ProductTable, x: Element, y: Element) -> Element:
    if x.algebra != table.name or y.algebra != table.name:
        raise AlgebraError(f"Elements of {x.algebra!r} and {y.algebra!r} multiplied in {table.name!r}")
    if len(x.coordinates) != table.dimension or len(y.coordinates) != table.dimension:
        raise AlgebraError(f"Dimension mismatch: {table.name} has dimension {table.dimension}")
    return Element(table.mul(x.coordinates, y.coordinates), table.name)


def verify_identity(name: str, field: Field, arity: int, n: int,
                    lhs: Callable[..., Vector], rhs: Callable[..., Vector],
                    labels: Optional[Sequence[str]] = None, required: bool = True,
                    ranges: Optional[Sequence[Sequence[int]]] = None) -> CheckResult:
    """Compare lhs and rhs on all basis tuples in lexicographic order; first failure is the witness"""
    basis = [basis_vector(field, n, k) for k in range(n)]
    index_ranges = ranges if ranges is not None else [range(n)] * arity
    for indices in itertools.product(*index_ranges):
        args = [basis[k] for k in indices]
        left, right = lhs(*args), rhs(*args)
        if left != right:
            names = tuple(labels[k] if labels else f"b{k}" for k in indices)
            witness = Witness(names, format_vector(field, left), format_vector(field, right))
            logger.warning(f"{name} fails at {witness.describe()}")
            return CheckResult(name, False, witness, required=required)
    return CheckResult(name, True, required=required)


def verify_on(name: str, field: Field, samples: Iterable[Tuple[str, Tuple]],
              lhs: Callable[..., Vector], rhs: Callable[..., Vector], required: bool = True) -> CheckResult:
    """Like verify_identity but over explicit labelled argument tuples"""
    for label, args in samples:
        left, right = lhs(*args), rhs(*args)
        if left != right:
            witness = Witness((label,), format_vector(field, left), format_vector(field, right))
            logger.warning(f"{name} fails at {label}")
            return CheckResult(name, False, witness, required=required)
    return CheckResult(name, True, required=required)


@dataclass(frozen=True)
class RelativeTensor:
    """A ⊗_X A: the quotient of A ⊗ A by (a◁x) ⊗ a' - a ⊗ (x▷a') for x in X.

    Pure tensors e_p ⊗ e_q sit at index p*n + q of the ambient space.
    """
    field: Field
    dimension_a: int
    base: Subspace
    right_action: ProductTable
    left_action: ProductTable
    quotient: Quotient
    label: str = ""

    @property
    def dimension(self) -> int:
        return self.quotient.dimension

    def tensor(self, u: Vector, v: Vector) -> Vector:
        out = []
        zero = self.field.zero
        for a in u:
            if a:
                out.extend(a * b for b in v)
            else:
                out.extend([zero] * len(v))
        return tuple(out)

    def project(self, t: Vector) -> Vector:
        return self.quotient.project(t)

    def project_pair(self, u: Vector, v: Vector) -> Vector:
        return self.project(self.tensor(u, v))

    def project_pairs(self, pairs: Iterable[Tuple[Vector, Vector]]) -> Vector:
        n = self.dimension_a
        total = [self.field.zero] * (n * n)
        for u, v in pairs:
            for p, a in enumerate(u):
                if not a:
                    continue
                for q, b in enumerate(v):
                    if b:
                        total[p * n + q] += a * b
        return self.project(tuple(total))

    def lift(self, q: Vector) -> Vector:
        return self.quotient.section(q)

    def lift_pairs(self, q: Vector) -> List[Tuple[Vector, Vector]]:
        """A representative of a class as a list of pure tensors"""
        n = self.dimension_a
        t = self.lift(q)
        pairs = []
        for idx, c in enumerate(t):
            if c:
                p, r = divmod(idx, n)
                pairs.append((linear_combination(self.field, n, [(c, basis_vector(self.field, n, p))]),
                              basis_vector(self.field, n, r)))
        return pairs

    def relation(self, x: Vector, p: int, q: int) -> Vector:
        return _relation(self.field, self.dimension_a, self.right_action, self.left_action, x, p, q)

    def check_middle_linearity(self) -> bool:
        n = self.dimension_a
        return all(
            not any(self.project(self.relation(x, p, q)))
            for x in self.base.basis for p in range(n) for q in range(n)
        )

    def iterate(self) -> "TripleTensor":
        """A ⊗_X A ⊗_X A as (A ⊗_X A ⊗ A) modulo the middle relation"""
        n, m = self.dimension_a, self.dimension
        field = self.field
        rows = []
        for f in range(m):
            pairs = self.lift_pairs(basis_vector(field, m, f))
            for x in self.base.basis:
                acted = self.project_pairs((u, self.right_action.mul(v, x)) for u, v in pairs)
                for c in range(n):
                    e_c = basis_vector(field, n, c)
                    moved = self.left_action.mul(x, e_c)
                    row = [field.zero] * (m * n)
                    for g, a in enumerate(acted):
                        if a:
                            row[g * n + c] += a
                    for d, a in enumerate(moved):
                        if a:
                            row[f * n + d] -= a
                    rows.append(tuple(row))
        relations = Subspace.span(field, m * n, rows)
        return TripleTensor(self, quotient_space(field, m * n, relations))


@dataclass(frozen=True)
class TripleTensor:
    pair: RelativeTensor
    quotient: Quotient

    @property
    def dimension(self) -> int:
        return self.quotient.dimension

    def project_triples(self, triples: Iterable[Tuple[Vector, Vector, Vector]]) -> Vector:
        n, m = self.pair.dimension_a, self.pair.dimension
        total = [self.pair.field.zero] * (m * n)
        for u, v, w in triples:
            q = self.pair.project_pair(u, v)
            for g, a in enumerate(q):
                if not a:
                    continue
                for c, b in enumerate(w):
                    if b:
                        total[g * n + c] += a * b
        return self.quotient.project(tuple(total))


def _relation(field: Field, n: int, right_action: ProductTable, left_action: ProductTable,
              x: Vector, p: int, q: int) -> Vector:
    e_p, e_q = basis_vector(field, n, p), basis_vector(field, n, q)
    left = _outer(field, right_action.mul(e_p, x), e_q)
    right = _outer(field, e_p, left_action.mul(x, e_q))
    return sub(left, right)


def _outer(field: Field, u: Vector, v: Vector) -> Vector:
    return tuple(a * b for a in u for b in v)


def relative_tensor(field: Field, n: int, right_action: ProductTable, left_action: ProductTable,
                    base: Subspace, label: str = "") -> RelativeTensor:
    """A ⊗_X A for a unital subalgebra X acting by right_action on the first leg, left_action on the second"""
    tables = [right_action] if right_action == left_action else [right_action, left_action]
    for table in tables:
        if table.dimension != n:
            raise AlgebraError(f"{table.name} has dimension {table.dimension}, expected {n}")
        if not table.is_subalgebra(base):
            raise AlgebraError(f"{label or 'base'} is not a unital subalgebra of {table.name}")
    rows = [_relation(field, n, right_action, left_action, x, p, q) for x in base.basis for p in range(n) for q in range(n)]
    relations = Subspace.span(field, n * n, rows)
    result = RelativeTensor(field, n, base, right_action, left_action,
                            quotient_space(field, n * n, relations), label)
    logger.debug(f"A ⊗_{label} A has dimension {result.dimension}")
    return result


def induced_map(source: RelativeTensor, target_dim: int,
                pure_map: Callable[[int, int], Vector]) -> Tuple[LinearMap, bool]:
    """Matrix of the map source -> target defined on pure tensors e_p ⊗ e_q.

    pure_map returns coordinates in the target space (quotient coordinates
    when the target is another tensor square). The second value reports
    whether the map kills every relation of the source, i.e. is well defined.
    """
    n = source.dimension_a
    field = source.field
    cache: Dict[int, Vector] = {}

    def on_index(idx: int) -> Vector:
        if idx not in cache:
            p, q = divmod(idx, n)
            cache[idx] = tuple(pure_map(p, q))
        return cache[idx]

    def on_ambient(t: Vector) -> Vector:
        return linear_combination(field, target_dim, ((c, on_index(idx)) for idx, c in enumerate(t) if c))

    columns = tuple(on_index(f) for f in source.quotient.free)
    well_defined = all(not any(on_ambient(row)) for row in source.quotient.relations.basis)
    if not well_defined:
        logger.warning(f"Map out of A ⊗_{source.label} A does not respect the balancing relations")
    return LinearMap(field, source.dimension, target_dim, columns), well_defined

