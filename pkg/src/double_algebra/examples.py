"""Constructors for the standard families of double algebras.

Every constructor returns a validated DoubleAlgebra. Families with known
closed forms for the base homomorphisms, the antipode or the dual bases attach
them as FamilyOracles, which check_oracles compares against the generic
computations.
"""
import itertools
import logging
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .algebra_core import ProductTable, RelativeTensor, induced_map, relative_tensor, verify_identity, verify_on
from .antipode import check_antipode_identities, solve_antipode
from .double_core import DoubleAlgebra, check_axioms
from .exact_linalg import (
    Field, LinearMap, Subspace, Vector, basis_vector, format_vector, kernel, linear_combination, zero_vector,
)
from .frobenius import check_dual_basis, is_frobenius
from .models import AlgebraError, AxiomViolation, Corner, InstanceFormatError, PreconditionError, Report
from .structure import check_distributivity

logger = logging.getLogger(__name__)

Pairs = Tuple[Tuple[Vector, Vector], ...]

DEFAULT_FIELD = Field()


# Closed forms

@dataclass(frozen=True)
class FamilyOracles:
    family: str
    phi: Dict[Corner, LinearMap] = field(default_factory=dict)
    antipode: Optional[LinearMap] = None
    antipode_inverse: Optional[LinearMap] = None
    antipode_formula: str = ""
    dual_bases: Dict[Corner, Pairs] = field(default_factory=dict)
    notes: Dict[str, Any] = field(default_factory=dict)


def _attach(D: DoubleAlgebra, oracles: FamilyOracles) -> DoubleAlgebra:
    D.cached('oracles', lambda: oracles)
    return D


def family_oracles(D: DoubleAlgebra) -> Optional[FamilyOracles]:
    return D.cached('oracles', lambda: None)


def check_oracles(D: DoubleAlgebra) -> Report:
    """Compare the attached closed forms with Φ_X, the solved antipode and the dual-basis identities"""
    oracles = family_oracles(D)
    report = Report(name="oracles")
    if oracles is None:
        return report
    samples = [(label, (a,)) for label, a in zip(D.basis_labels, D.basis())]
    for corner, closed in oracles.phi.items():
        report.add(verify_on(f"Φ_{corner.value} matches its closed form", D.field, samples,
                             D.phi(corner).apply, closed.apply))
    if oracles.antipode is not None:
        S = oracles.antipode
        report.extend(check_antipode_identities(D, S), prefix="closed-form S: ")
        report.record("closed-form S is invertible", S.inverse() is not None)
        if oracles.antipode_inverse is not None:
            report.record("closed-form S^-1 inverts S", S.compose(oracles.antipode_inverse).is_identity())
        if is_frobenius(D):
            solved = solve_antipode(D)
            report.record("solve_antipode agrees with the closed form",
                          solved is not None and solved.matrix == S)
    for corner, pairs in oracles.dual_bases.items():
        report.extend(check_dual_basis(D, corner, pairs), prefix=f"closed-form dual basis of Φ_{corner.value}: ")
    report.data = {'family': oracles.family, **oracles.notes}
    return report


def _linear(field_: Field, n: int, fn: Callable[[int], Vector]) -> LinearMap:
    return LinearMap.from_function(field_, n, n, lambda a: linear_combination(
        field_, n, ((c, fn(k)) for k, c in enumerate(a) if c)))


def _sum(field_: Field, n: int, vectors: Iterable[Vector]) -> Vector:
    return linear_combination(field_, n, ((field_.one, v) for v in vectors))


# Plain algebras

def matrix_label(j: int, k: int, n: int) -> str:
    return f"e{j + 1}{k + 1}" if n < 10 else f"e{j + 1},{k + 1}"


def matrix_algebra(n: int, field_: Field = DEFAULT_FIELD) -> ProductTable:
    """M_n with matrix units e_jk at index j*n + k"""
    def rule(p: int, q: int) -> Vector:
        (j, k), (l, m) = divmod(p, n), divmod(q, n)
        return basis_vector(field_, n * n, j * n + m) if k == l else zero_vector(field_, n * n)
    unit = _sum(field_, n * n, (basis_vector(field_, n * n, j * n + j) for j in range(n)))
    return ProductTable.from_rule(field_, n * n, rule, unit, name=f"M_{n}")


def truncated_polynomial(degree: int, field_: Field = DEFAULT_FIELD) -> ProductTable:
    """k[x]/(x^degree) in the monomial basis"""
    def rule(p: int, q: int) -> Vector:
        if p + q >= degree:
            return zero_vector(field_, degree)
        return basis_vector(field_, degree, p + q)
    return ProductTable.from_rule(field_, degree, rule, basis_vector(field_, degree, 0), name=f"k[x]/(x^{degree})")


def diagonal_algebra(n: int, field_: Field = DEFAULT_FIELD) -> ProductTable:
    """k^n with componentwise product"""
    def rule(p: int, q: int) -> Vector:
        return basis_vector(field_, n, p) if p == q else zero_vector(field_, n)
    return ProductTable.from_rule(field_, n, rule, tuple([field_.one] * n), name=f"k^{n}")


# Commutative algebras

def commutative_double(table: ProductTable, basis_labels: Sequence[str] = (), label: str = "") -> DoubleAlgebra:
    """∘ = ⋆ = the given product; a double algebra exactly when the product is commutative"""
    if not table.is_commutative():
        logger.info(f"{table.name} is not commutative, expecting the axioms to fail")
    n = table.dimension
    D = DoubleAlgebra.build(replace(table, name="V"), replace(table, name="H"),
                            label or f"commutative({table.name})", basis_labels)
    identity = LinearMap.identity(table.field, n)
    return _attach(D, FamilyOracles(
        family="commutative",
        phi={corner: identity for corner in Corner},
        antipode=identity,
        antipode_formula="S(a)=a",
    ))


# Matrix algebras

def matrix_double(n: int, field_: Field = DEFAULT_FIELD) -> DoubleAlgebra:
    """M_n with e_jk ∘ e_lm = δ_kl e_jm and the entrywise product as ⋆"""
    if n < 1:
        raise AlgebraError("matrix_double needs n >= 1")
    size = n * n

    def unit_at(j: int, k: int) -> Vector:
        return basis_vector(field_, size, j * n + k)

    def star(p: int, q: int) -> Vector:
        return basis_vector(field_, size, p) if p == q else zero_vector(field_, size)

    vertical = replace(matrix_algebra(n, field_), name="V")
    horizontal = ProductTable.from_rule(field_, size, star, tuple([field_.one] * size), name="H")
    labels = tuple(matrix_label(j, k, n) for j in range(n) for k in range(n))
    D = DoubleAlgebra.build(vertical, horizontal, f"M_{n}", labels)

    def split(p: int) -> Tuple[int, int]:
        return divmod(p, n)

    def phi_l(p: int) -> Vector:
        j, k = split(p)
        return unit_at(j, k) if j == k else zero_vector(field_, size)

    def phi_b(p: int) -> Vector:
        j, _ = split(p)
        return _sum(field_, size, (unit_at(j, l) for l in range(n)))

    def phi_t(p: int) -> Vector:
        _, k = split(p)
        return _sum(field_, size, (unit_at(l, k) for l in range(n)))

    def transpose(p: int) -> Vector:
        j, k = split(p)
        return unit_at(k, j)

    units = [(unit_at(j, k), unit_at(k, j)) for j in range(n) for k in range(n)]
    diagonal = tuple((unit_at(j, k), unit_at(j, k)) for j in range(n) for k in range(n))
    return _attach(D, FamilyOracles(
        family="matrix",
        phi={Corner.L: _linear(field_, size, phi_l), Corner.R: _linear(field_, size, phi_l),
             Corner.B: _linear(field_, size, phi_b), Corner.T: _linear(field_, size, phi_t)},
        antipode=_linear(field_, size, transpose),
        antipode_formula="S(e_jk)=e_kj",
        dual_bases={Corner.B: diagonal, Corner.T: diagonal, Corner.L: tuple(units), Corner.R: tuple(units)},
    ))


# Groups and groupoids

@dataclass(frozen=True)
class FiniteGroup:
    """A finite group by its Cayley table: table[g][h] is the index of gh"""
    elements: Tuple[str, ...]
    table: Tuple[Tuple[int, ...], ...]
    identity: int = 0
    name: str = "G"

    def __post_init__(self):
        self.validate()

    @property
    def order(self) -> int:
        return len(self.elements)

    def validate(self) -> None:
        n = self.order
        if n < 1:
            raise AlgebraError("A group needs at least one element")
        if len(set(self.elements)) != n:
            raise AlgebraError("Group element names must be distinct")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise AlgebraError(f"Cayley table must be {n}x{n}")
        if any(not 0 <= x < n for row in self.table for x in row):
            raise AlgebraError("Cayley table refers to unknown elements")
        for g in range(n):
            if self.table[self.identity][g] != g or self.table[g][self.identity] != g:
                raise AlgebraError(f"{self.elements[self.identity]} is not an identity at {self.elements[g]}")
        for g, h, k in itertools.product(range(n), repeat=3):
            if self.table[self.table[g][h]][k] != self.table[g][self.table[h][k]]:
                raise AlgebraError(f"Not associative at ({self.elements[g]}, {self.elements[h]}, {self.elements[k]})")
        for g in range(n):
            self.inverse(g)

    def inverse(self, g: int) -> int:
        for h in range(self.order):
            if self.table[g][h] == self.identity:
                return h
        raise AlgebraError(f"{self.elements[g]} has no inverse")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "FiniteGroup":
        """{"elements": [...], "table": [[name of gh, ...], ...]}"""
        try:
            elements = tuple(str(x) for x in data['elements'])
            index = {name: k for k, name in enumerate(elements)}
            table = tuple(tuple(index[str(x)] for x in row) for row in data['table'])
        except (KeyError, TypeError) as e:
            raise InstanceFormatError(f"Invalid group data: {str(e)}")
        identity = next((g for g in range(len(elements))
                         if all(table[g][h] == h for h in range(len(elements)))), None)
        if identity is None:
            raise AlgebraError("Cayley table has no identity element")
        return cls(elements, table, identity, str(data.get("name", "G")))

    def to_dict(self) -> Dict[str, Any]:
        return {'name': self.name, 'elements': list(self.elements),
                'table': [[self.elements[x] for x in row] for row in self.table]}


def cyclic_group(n: int) -> FiniteGroup:
    names = tuple("1" if k == 0 else ("g" if k == 1 else f"g^{k}") for k in range(n))
    return FiniteGroup(names, tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), name=f"Z_{n}")


def symmetric_group(n: int = 3) -> FiniteGroup:
    """Permutations in one-line notation; (στ)(x) = σ(τ(x))"""
    perms = list(itertools.permutations(range(n)))
    index = {p: k for k, p in enumerate(perms)}
    table = tuple(tuple(index[tuple(s[t[x]] for x in range(n))] for t in perms) for s in perms)
    return FiniteGroup(tuple("".join(str(x + 1) for x in p) for p in perms), table, name=f"S_{n}")


@dataclass(frozen=True)
class Category:
    """A finite category; composition[(g, f)] is g·f, defined exactly when source[g] == target[f]"""
    objects: Tuple[str, ...]
    arrows: Tuple[str, ...]
    source: Tuple[int, ...]
    target: Tuple[int, ...]
    composition: Mapping[Tuple[int, int], int]
    identities: Tuple[int, ...]

    def __post_init__(self):
        self.validate()

    def composable(self, g: int, f: int) -> bool:
        return self.source[g] == self.target[f]

    def validate(self) -> None:
        m = len(self.arrows)
        if len(set(self.arrows)) != m or len(set(self.objects)) != len(self.objects):
            raise AlgebraError("Arrow and object names must be distinct")
        if len(self.source) != m or len(self.target) != m or len(self.identities) != len(self.objects):
            raise AlgebraError("Source, target and identity maps have the wrong length")
        for x, u in enumerate(self.identities):
            if self.source[u] != x or self.target[u] != x:
                raise AlgebraError(f"Identity {self.arrows[u]} is not a loop at {self.objects[x]}")
        for g, f in itertools.product(range(m), repeat=2):
            defined = (g, f) in self.composition
            if defined != self.composable(g, f):
                raise AlgebraError(f"Composite {self.arrows[g]}·{self.arrows[f]} is "
                                   f"{'defined' if defined else 'missing'} against the source/target data")
            if defined:
                h = self.composition[(g, f)]
                if self.source[h] != self.source[f] or self.target[h] != self.target[g]:
                    raise AlgebraError(f"{self.arrows[g]}·{self.arrows[f]} has the wrong endpoints")
        for g in range(m):
            if (self.composition[(self.identities[self.target[g]], g)] != g
                    or self.composition[(g, self.identities[self.source[g]])] != g):
                raise AlgebraError(f"Identities do not act trivially on {self.arrows[g]}")
        for h, g, f in itertools.product(range(m), repeat=3):
            if self.composable(h, g) and self.composable(g, f):
                if self.composition[(self.composition[(h, g)], f)] != self.composition[(h, self.composition[(g, f)])]:
                    raise AlgebraError(f"Not associative at ({self.arrows[h]}, {self.arrows[g]}, {self.arrows[f]})")

    def find_inverse(self, g: int) -> Optional[int]:
        for h in range(len(self.arrows)):
            if (self.composable(g, h) and self.composable(h, g)
                    and self.composition[(g, h)] == self.identities[self.target[g]]
                    and self.composition[(h, g)] == self.identities[self.source[g]]):
                return h
        return None

    def non_invertible(self) -> List[str]:
        return [self.arrows[g] for g in range(len(self.arrows)) if self.find_inverse(g) is None]

    def is_groupoid(self) -> bool:
        return not self.non_invertible()

    def subcategory(self, arrows: Sequence[str]) -> "Category":
        """The subcategory on the named arrows, which must contain the identities and be closed"""
        index = {name: k for k, name in enumerate(self.arrows)}
        missing = [name for name in arrows if name not in index]
        if missing:
            raise AlgebraError(f"Unknown arrows {missing}")
        kept = sorted(index[name] for name in set(arrows))
        position = {g: k for k, g in enumerate(kept)}
        if any(u not in position for u in self.identities):
            raise AlgebraError("A subcategory must contain every identity")
        composition = {}
        for g, f in itertools.product(kept, repeat=2):
            if self.composable(g, f):
                h = self.composition[(g, f)]
                if h not in position:
                    raise AlgebraError(f"{self.arrows[g]}·{self.arrows[f]} leaves the subcategory")
                composition[(position[g], position[f])] = position[h]
        return Category(self.objects, tuple(self.arrows[g] for g in kept),
                        tuple(self.source[g] for g in kept), tuple(self.target[g] for g in kept),
                        composition, tuple(position[u] for u in self.identities))

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Category":
        """{"objects", "arrows": [{"name", "source", "target"}], "identities": {object: arrow},
        "composition": [[g, f, g·f], ...]}"""
        try:
            objects = tuple(str(x) for x in data['objects'])
            obj = {name: k for k, name in enumerate(objects)}
            arrows = tuple(str(a['name']) for a in data['arrows'])
            arr = {name: k for k, name in enumerate(arrows)}
            source = tuple(obj[str(a['source'])] for a in data['arrows'])
            target = tuple(obj[str(a['target'])] for a in data['arrows'])
            identities = tuple(arr[str(data['identities'][x])] for x in objects)
            composition = {(arr[str(g)], arr[str(f)]): arr[str(h)] for g, f, h in data['composition']}
        except (KeyError, TypeError, ValueError) as e:
            raise InstanceFormatError(f"Invalid category data: {str(e)}")
        return cls(objects, arrows, source, target, composition, identities)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'objects': list(self.objects),
            'arrows': [{'name': a, 'source': self.objects[s], 'target': self.objects[t]}
                       for a, s, t in zip(self.arrows, self.source, self.target)],
            'identities': {x: self.arrows[u] for x, u in zip(self.objects, self.identities)},
            'composition': [[self.arrows[g], self.arrows[f], self.arrows[h]]
                            for (g, f), h in sorted(self.composition.items())],
        }


@dataclass(frozen=True)
class Groupoid(Category):
    inverse: Tuple[int, ...] = ()

    def validate(self) -> None:
        super().validate()
        if len(self.inverse) != len(self.arrows):
            raise AlgebraError("Every arrow of a groupoid needs an inverse")
        for g, h in enumerate(self.inverse):
            if self.find_inverse(g) != h:
                raise AlgebraError(f"{self.arrows[h]} is not the inverse of {self.arrows[g]}")

    @classmethod
    def from_category(cls, category: Category) -> "Groupoid":
        missing = category.non_invertible()
        if missing:
            raise AlgebraError(f"Not a groupoid: no inverse for {', '.join(missing)}")
        inverse = tuple(category.find_inverse(g) for g in range(len(category.arrows)))
        return cls(category.objects, category.arrows, category.source, category.target,
                   category.composition, category.identities, inverse)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Groupoid":
        return cls.from_category(Category.from_dict(data))

    @classmethod
    def from_group(cls, group: FiniteGroup, object_name: str = "*") -> "Groupoid":
        n = group.order
        composition = {(g, h): group.table[g][h] for g in range(n) for h in range(n)}
        return cls((object_name,), group.elements, (0,) * n, (0,) * n, composition, (group.identity,),
                   tuple(group.inverse(g) for g in range(n)))


def pair_groupoid(n: int) -> Groupoid:
    """Objects 1..n and one arrow k -> j for every pair, named like the matrix unit e_jk"""
    objects = tuple(str(k + 1) for k in range(n))
    arrows = tuple(matrix_label(j, k, n) for j in range(n) for k in range(n))
    source = tuple(k for j in range(n) for k in range(n))
    target = tuple(j for j in range(n) for k in range(n))
    composition = {(j * n + k, k * n + m): j * n + m for j in range(n) for k in range(n) for m in range(n)}
    inverse = tuple(k * n + j for j in range(n) for k in range(n))
    return Groupoid(objects, arrows, source, target, composition, tuple(j * n + j for j in range(n)), inverse)


def disjoint_union(first: Groupoid, second: Groupoid) -> Groupoid:
    clash = set(first.arrows) & set(second.arrows) or set(first.objects) & set(second.objects)

    def names(prefix: str, values: Tuple[str, ...]) -> Tuple[str, ...]:
        return tuple(f"{prefix}.{v}" for v in values) if clash else values

    shift_a, shift_o = len(first.arrows), len(first.objects)
    composition = dict(first.composition)
    composition.update({(g + shift_a, f + shift_a): h + shift_a for (g, f), h in second.composition.items()})
    return Groupoid(
        names("1", first.objects) + names("2", second.objects),
        names("1", first.arrows) + names("2", second.arrows),
        first.source + tuple(s + shift_o for s in second.source),
        first.target + tuple(t + shift_o for t in second.target),
        composition,
        first.identities + tuple(u + shift_a for u in second.identities),
        first.inverse + tuple(g + shift_a for g in second.inverse),
    )


def groupoid_algebra(groupoid: Category, field_: Field = DEFAULT_FIELD, name: str = "V") -> ProductTable:
    """k G with g·f the composite when defined and zero otherwise"""
    m = len(groupoid.arrows)

    def rule(g: int, f: int) -> Vector:
        h = groupoid.composition.get((g, f))
        return zero_vector(field_, m) if h is None else basis_vector(field_, m, h)

    unit = _sum(field_, m, (basis_vector(field_, m, u) for u in groupoid.identities))
    return ProductTable.from_rule(field_, m, rule, unit, name=name)


def _groupoid_oracles(groupoid: Groupoid, field_: Field, family: str, formula: str) -> FamilyOracles:
    m = len(groupoid.arrows)
    arrows = range(m)
    b = lambda g: basis_vector(field_, m, g)
    identities = set(groupoid.identities)

    def phi_l(g: int) -> Vector:
        return b(g) if g in identities else zero_vector(field_, m)

    def phi_b(g: int) -> Vector:
        return _sum(field_, m, (b(h) for h in arrows if groupoid.target[h] == groupoid.target[g]))

    def phi_t(g: int) -> Vector:
        return _sum(field_, m, (b(h) for h in arrows if groupoid.source[h] == groupoid.source[g]))

    diagonal = tuple((b(g), b(g)) for g in arrows)
    inverted = tuple((b(g), b(groupoid.inverse[g])) for g in arrows)
    return FamilyOracles(
        family=family,
        phi={Corner.L: _linear(field_, m, phi_l), Corner.R: _linear(field_, m, phi_l),
             Corner.B: _linear(field_, m, phi_b), Corner.T: _linear(field_, m, phi_t)},
        antipode=_linear(field_, m, lambda g: b(groupoid.inverse[g])),
        antipode_formula=formula,
        dual_bases={Corner.B: diagonal, Corner.T: diagonal, Corner.L: inverted, Corner.R: inverted},
    )


def groupoid_double(groupoid: Groupoid, field_: Field = DEFAULT_FIELD, label: str = "") -> DoubleAlgebra:
    """g ∘ g' = gg', g ⋆ g' = δ g, e the sum of identities and i the sum of all arrows"""
    m = len(groupoid.arrows)
    vertical = groupoid_algebra(groupoid, field_, "V")
    horizontal = ProductTable.from_rule(
        field_, m, lambda g, h: basis_vector(field_, m, g) if g == h else zero_vector(field_, m),
        tuple([field_.one] * m), name="H")
    D = DoubleAlgebra.build(vertical, horizontal, label or f"groupoid({len(groupoid.objects)} objects)",
                            groupoid.arrows)
    return _attach(D, _groupoid_oracles(groupoid, field_, "groupoid", "S(g)=g^-1"))


def group_algebra(group: FiniteGroup, field_: Field = DEFAULT_FIELD, name: str = "V") -> ProductTable:
    n = group.order
    b = lambda g: basis_vector(field_, n, g)
    return ProductTable.from_rule(field_, n, lambda g, h: b(group.table[g][h]), b(group.identity), name=name)


def hopf_group_double(group: FiniteGroup, field_: Field = DEFAULT_FIELD) -> DoubleAlgebra:
    """kG with its product and the convolution a⋆a' = a_(1) λ(S^-1(a') a_(2)), λ the coefficient of 1"""
    n = group.order
    b = lambda g: basis_vector(field_, n, g)
    inverse = [group.inverse(g) for g in range(n)]

    def integral(g: int) -> int:
        return 1 if g == group.identity else 0

    def star(g: int, h: int) -> Vector:
        # Δ(g) = g ⊗ g
        return linear_combination(field_, n, [(field_(integral(group.table[inverse[h]][g])), b(g))])

    vertical = group_algebra(group, field_)
    horizontal = ProductTable.from_rule(field_, n, star, tuple([field_.one] * n), name="H")
    D = DoubleAlgebra.build(vertical, horizontal, f"k[{group.name}]", group.elements)
    # Φ_L = Φ_R = λ(·)1 and Φ_B = Φ_T = ε(·)i coincide with the one-object groupoid formulas;
    # kG is unimodular, so the double-algebra antipode is the group inversion
    oracles = _groupoid_oracles(Groupoid.from_group(group), field_, "hopf-group", "S(g)=g^-1")
    return _attach(D, replace(oracles, notes={'unimodular': True}))


# Double categories

@dataclass(frozen=True)
class DoubleCategoryData:
    """Finite double category by its 2-cells.

    Horizontal and vertical 1-cells and 0-cells are themselves cells (their
    identity squares). c ∘ d is defined exactly when top[c] == bottom[d], and
    c ⋆ d exactly when right[c] == left[d].
    """
    cells: Tuple[str, ...]
    objects: Tuple[int, ...]
    horizontal: Tuple[int, ...]
    vertical: Tuple[int, ...]
    bottom: Tuple[int, ...]
    top: Tuple[int, ...]
    left: Tuple[int, ...]
    right: Tuple[int, ...]
    vertical_composition: Mapping[Tuple[int, int], int]
    horizontal_composition: Mapping[Tuple[int, int], int]

    def __post_init__(self):
        self.validate()

    def _fail(self, message: str) -> None:
        raise AlgebraError(f"Invalid double category: {message}")

    def validate(self) -> None:
        m = len(self.cells)
        name = self.cells
        if any(len(x) != m for x in (self.bottom, self.top, self.left, self.right)):
            self._fail("boundary maps have the wrong length")
        hset, vset, oset = set(self.horizontal), set(self.vertical), set(self.objects)
        if not oset <= hset or not oset <= vset:
            self._fail("0-cells must be both horizontal and vertical 1-cells")
        for c in range(m):
            if self.bottom[c] not in hset or self.top[c] not in hset:
                self._fail(f"{name[c]} has a bottom or top that is not a horizontal 1-cell")
            if self.left[c] not in vset or self.right[c] not in vset:
                self._fail(f"{name[c]} has a side that is not a vertical 1-cell")
        for h in hset:
            if (self.bottom[h], self.top[h]) != (h, h) or self.left[h] not in oset or self.right[h] not in oset:
                self._fail(f"horizontal 1-cell {name[h]} has inconsistent boundaries")
        for v in vset:
            if (self.left[v], self.right[v]) != (v, v) or self.bottom[v] not in oset or self.top[v] not in oset:
                self._fail(f"vertical 1-cell {name[v]} has inconsistent boundaries")
        V, H = self.vertical_composition, self.horizontal_composition
        for c, d in itertools.product(range(m), repeat=2):
            if ((c, d) in V) != (self.top[c] == self.bottom[d]):
                self._fail(f"{name[c]} ∘ {name[d]} disagrees with the boundary data")
            if ((c, d) in H) != (self.right[c] == self.left[d]):
                self._fail(f"{name[c]} ⋆ {name[d]} disagrees with the boundary data")
            if (c, d) in V:
                r = V[(c, d)]
                if (self.bottom[r], self.top[r]) != (self.bottom[c], self.top[d]):
                    self._fail(f"{name[c]} ∘ {name[d]} has the wrong bottom or top")
                if (self.left[r] != V.get((self.left[c], self.left[d]))
                        or self.right[r] != V.get((self.right[c], self.right[d]))):
                    self._fail(f"{name[c]} ∘ {name[d]} has the wrong sides")
            if (c, d) in H:
                r = H[(c, d)]
                if (self.left[r], self.right[r]) != (self.left[c], self.right[d]):
                    self._fail(f"{name[c]} ⋆ {name[d]} has the wrong sides")
                if (self.bottom[r] != H.get((self.bottom[c], self.bottom[d]))
                        or self.top[r] != H.get((self.top[c], self.top[d]))):
                    self._fail(f"{name[c]} ⋆ {name[d]} has the wrong bottom or top")
        for c in range(m):
            if V[(self.bottom[c], c)] != c or V[(c, self.top[c])] != c:
                self._fail(f"horizontal 1-cells are not vertical identities at {name[c]}")
            if H[(self.left[c], c)] != c or H[(c, self.right[c])] != c:
                self._fail(f"vertical 1-cells are not horizontal identities at {name[c]}")
        for table, symbol in ((V, "∘"), (H, "⋆")):
            for a, b, c in itertools.product(range(m), repeat=3):
                if (a, b) in table and (b, c) in table:
                    if table.get((table[(a, b)], c)) != table.get((a, table[(b, c)])):
                        self._fail(f"{symbol} is not associative at ({name[a]}, {name[b]}, {name[c]})")
        for a, b, c, d in itertools.product(range(m), repeat=4):
            if (a, b) in H and (c, d) in H and (a, c) in V and (b, d) in V:
                if V.get((H[(a, b)], H[(c, d)])) != H.get((V[(a, c)], V[(b, d)])):
                    self._fail(f"interchange fails at ({name[a]}, {name[b]}, {name[c]}, {name[d]})")

    def non_invertible_one_cells(self) -> List[str]:
        """1-cells without an inverse in the horizontal, respectively vertical, 1-cell category"""
        objects = set(self.objects)
        missing = []
        for cells, table in ((self.horizontal, self.horizontal_composition),
                             (self.vertical, self.vertical_composition)):
            for g in cells:
                if not any(table.get((g, h)) in objects and table.get((h, g)) in objects for h in cells):
                    missing.append(self.cells[g])
        return missing

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "DoubleCategoryData":
        """{"cells", "objects", "horizontal", "vertical", "boundaries": {cell: [bottom, top, left, right]},
        "vertical_composition": [[c, d, c∘d]], "horizontal_composition": [[c, d, c⋆d]]}"""
        try:
            cells = tuple(str(c) for c in data['cells'])
            index = {name: k for k, name in enumerate(cells)}
            ids = lambda names: tuple(index[str(x)] for x in names)
            boundaries = [ids(data['boundaries'][c]) for c in cells]
            bottom, top, left, right = (tuple(b[k] for b in boundaries) for k in range(4))
            objects, horizontal, vertical = ids(data['objects']), ids(data['horizontal']), ids(data['vertical'])
            vertical_composition = {(index[str(c)], index[str(d)]): index[str(r)]
                                    for c, d, r in data['vertical_composition']}
            horizontal_composition = {(index[str(c)], index[str(d)]): index[str(r)]
                                      for c, d, r in data['horizontal_composition']}
        except (KeyError, TypeError, ValueError, IndexError) as e:
            raise InstanceFormatError(f"Invalid double category data: {str(e)}")
        return cls(
            cells, objects, horizontal, vertical, bottom, top, left, right, vertical_composition, horizontal_composition,
        )

    def to_dict(self) -> Dict[str, Any]:
        name = self.cells
        pick = lambda ks: [name[k] for k in ks]
        return {
            'cells': list(name),
            'objects': pick(self.objects),
            'horizontal': pick(self.horizontal),
            'vertical': pick(self.vertical),
            'boundaries': {name[c]: pick((self.bottom[c], self.top[c], self.left[c], self.right[c]))
                           for c in range(len(name))},
            'vertical_composition': [pick((c, d, r)) for (c, d), r in sorted(self.vertical_composition.items())],
            'horizontal_composition': [pick((c, d, r)) for (c, d), r in sorted(self.horizontal_composition.items())],
        }


def commuting_squares(category: Category, horizontal: Optional[Sequence[str]] = None,
                      vertical: Optional[Sequence[str]] = None) -> DoubleCategoryData:
    """Squares v'·h = h'·v of a category, with h, h' from the horizontal and v, v' from the vertical subcategory"""
    hcat = category.subcategory(horizontal) if horizontal is not None else category
    vcat = category.subcategory(vertical) if vertical is not None else category
    index = {name: k for k, name in enumerate(category.arrows)}
    hs = [index[a] for a in hcat.arrows]
    vs = [index[a] for a in vcat.arrows]
    compose = category.composition
    src, tgt, ident = category.source, category.target, category.identities

    squares = []
    for h, h2, v, v2 in itertools.product(hs, hs, vs, vs):
        if src[v] != src[h] or tgt[v] != src[h2] or src[v2] != tgt[h] or tgt[v2] != tgt[h2]:
            continue
        if compose[(v2, h)] == compose[(h2, v)]:
            squares.append((h, h2, v, v2))
    position = {sq: k for k, sq in enumerate(squares)}
    arrow = category.arrows

    def h_cell(h: int) -> int:
        return position[(h, h, ident[src[h]], ident[tgt[h]])]

    def v_cell(v: int) -> int:
        return position[(ident[src[v]], ident[tgt[v]], v, v)]

    vertical_composition, horizontal_composition = {}, {}
    for (c, (h, h2, v, v2)), (d, (k, k2, w, w2)) in itertools.product(enumerate(squares), repeat=2):
        if h2 == k:
            vertical_composition[(c, d)] = position[(h, k2, compose[(w, v)], compose[(w2, v2)])]
        if v2 == w:
            horizontal_composition[(c, d)] = position[(compose[(k, h)], compose[(k2, h2)], v, w2)]
    return DoubleCategoryData(
        cells=tuple(f"[{arrow[h]}|{arrow[h2]};{arrow[v]}|{arrow[v2]}]" for h, h2, v, v2 in squares),
        objects=tuple(sorted(position[(u, u, u, u)] for u in ident)),
        horizontal=tuple(sorted(h_cell(h) for h in hs)),
        vertical=tuple(sorted(v_cell(v) for v in vs)),
        bottom=tuple(h_cell(sq[0]) for sq in squares),
        top=tuple(h_cell(sq[1]) for sq in squares),
        left=tuple(v_cell(sq[2]) for sq in squares),
        right=tuple(v_cell(sq[3]) for sq in squares),
        vertical_composition=vertical_composition,
        horizontal_composition=horizontal_composition,
    )


def _double_category_tables(dcat: DoubleCategoryData, field_: Field) -> Tuple[ProductTable, ProductTable]:
    m = len(dcat.cells)

    def rule(table: Mapping[Tuple[int, int], int]) -> Callable[[int, int], Vector]:
        return lambda c, d: basis_vector(field_, m, table[(c, d)]) if (c, d) in table else zero_vector(field_, m)

    e = _sum(field_, m, (basis_vector(field_, m, h) for h in dcat.horizontal))
    i = _sum(field_, m, (basis_vector(field_, m, v) for v in dcat.vertical))
    return (ProductTable.from_rule(field_, m, rule(dcat.vertical_composition), e, name="V"),
            ProductTable.from_rule(field_, m, rule(dcat.horizontal_composition), i, name="H"))


def double_category_report(dcat: DoubleCategoryData, field_: Field = DEFAULT_FIELD) -> Report:
    """The axiom verdict next to the independent "both 1-cell categories are groupoids" predicate"""
    vertical, horizontal = _double_category_tables(dcat, field_)
    axioms = check_axioms(vertical, horizontal, dcat.cells)
    missing = dcat.non_invertible_one_cells()
    report = Report(name="double category")
    report.extend(axioms.to_report(), prefix="axioms: ")
    report.record("1-cell categories are groupoids", not missing, required=False)
    report.record("axiom verdict matches the groupoid criterion", axioms.passed == (not missing))
    report.data = {'accepted': axioms.passed, 'groupoids': not missing, 'non-invertible 1-cells': missing,
                   'failed axioms': axioms.failed_axioms()}
    return report


def double_category_double(dcat: DoubleCategoryData, field_: Field = DEFAULT_FIELD,
                           label: str = "") -> DoubleAlgebra:
    """Span of the 2-cells with the two compositions; raises AxiomViolation unless both 1-cell categories are groupoids"""
    missing = dcat.non_invertible_one_cells()
    name = label or f"double category ({len(dcat.cells)} cells)"
    vertical, horizontal = _double_category_tables(dcat, field_)
    axioms = check_axioms(vertical, horizontal, dcat.cells)
    if not axioms.passed:
        detail = f"1-cells without inverses: {', '.join(missing)}" if missing else "both 1-cell categories are groupoids"
        logger.warning(f"{name}: rejected, failing axioms {axioms.failed_axioms()}; {detail}")
        raise AxiomViolation(axioms, detail)
    if missing:
        logger.warning(f"{name}: axioms hold although {', '.join(missing)} have no inverses")
    logger.info(f"Built double algebra {name} of dimension {len(dcat.cells)}")
    return DoubleAlgebra(vertical, horizontal, name, tuple(dcat.cells))


# Frobenius extensions

@dataclass(frozen=True)
class FrobeniusExtensionData:
    """N ⊆ M with a Frobenius homomorphism ψ: M -> N and its dual basis Σ e_i ⊗ f_i"""
    algebra: ProductTable
    base: Subspace
    psi: LinearMap
    dual_basis: Pairs
    labels: Tuple[str, ...] = ()
    name: str = "M/N"

    def __post_init__(self):
        self.validate()

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dimension(self) -> int:
        return self.algebra.dimension

    def basis_labels(self) -> Tuple[str, ...]:
        return self.labels or tuple(f"m{k}" for k in range(self.dimension))

    def validate(self) -> None:
        M, n = self.algebra, self.dimension
        if not M.is_subalgebra(self.base):
            raise AlgebraError(f"{self.name}: N is not a unital subalgebra of M")
        if (self.psi.source_dim, self.psi.target_dim) != (n, n):
            raise AlgebraError(f"{self.name}: ψ must be a map of M")
        basis = [basis_vector(self.field, n, k) for k in range(n)]
        if not all(self.base.contains(self.psi(m)) for m in basis):
            raise AlgebraError(f"{self.name}: ψ does not land in N")
        for x in self.base.basis:
            for m in basis:
                if self.psi(M.mul(x, m)) != M.mul(x, self.psi(m)) or self.psi(M.mul(m, x)) != M.mul(self.psi(m), x):
                    raise AlgebraError(f"{self.name}: ψ is not an N-N-bimodule map")
        for m in basis:
            left = _sum(self.field, n, (M.mul(self.psi(M.mul(m, e)), f) for e, f in self.dual_basis))
            right = _sum(self.field, n, (M.mul(e, self.psi(M.mul(f, m))) for e, f in self.dual_basis))
            if left != m or right != m:
                raise AlgebraError(f"{self.name}: Σ e_i ⊗ f_i is not a dual basis for ψ")


def _matrix_pairs(n: int, field_: Field) -> Pairs:
    size = n * n
    return tuple((basis_vector(field_, size, j * n + k), basis_vector(field_, size, k * n + j))
                 for j in range(n) for k in range(n))


def matrix_trace_extension(n: int, field_: Field = DEFAULT_FIELD) -> FrobeniusExtensionData:
    """k ⊂ M_n with ψ the trace (times 1) and dual basis e_jk ⊗ e_kj"""
    M = matrix_algebra(n, field_)
    size = n * n
    trace = lambda p: M.unit if p // n == p % n else zero_vector(field_, size)
    return FrobeniusExtensionData(M, Subspace.span(field_, size, [M.unit]), _linear(field_, size, trace),
                                  _matrix_pairs(n, field_),
                                  tuple(matrix_label(j, k, n) for j in range(n) for k in range(n)), f"k ⊂ M_{n}")


def diagonal_extension(n: int, field_: Field = DEFAULT_FIELD) -> FrobeniusExtensionData:
    """Diagonal matrices ⊂ M_n with ψ the diagonal part"""
    M = matrix_algebra(n, field_)
    size = n * n
    diagonal = [basis_vector(field_, size, j * n + j) for j in range(n)]
    part = lambda p: basis_vector(field_, size, p) if p // n == p % n else zero_vector(field_, size)
    return FrobeniusExtensionData(M, Subspace.span(field_, size, diagonal), _linear(field_, size, part),
                                  _matrix_pairs(n, field_),
                                  tuple(matrix_label(j, k, n) for j in range(n) for k in range(n)),
                                  f"D_{n} ⊂ M_{n}")


def trivial_extension(field_: Field = DEFAULT_FIELD) -> FrobeniusExtensionData:
    k = diagonal_algebra(1, field_)
    one = (field_.one,)
    return FrobeniusExtensionData(k, Subspace.full(field_, 1), LinearMap.identity(field_, 1), ((one, one),),
                                  ("1",), "k = k")


def subgroup_extension(group: FiniteGroup, subgroup: Sequence[str],
                       field_: Field = DEFAULT_FIELD) -> FrobeniusExtensionData:
    """kH ⊂ kG with ψ the projection onto kH and dual basis Σ r ⊗ r^-1 over left coset representatives r.

    Of depth 2 only when H is normal; kS_2 ⊂ kS_3 is not.
    """
    n = group.order
    index = {name: k for k, name in enumerate(group.elements)}
    unknown = [name for name in subgroup if name not in index]
    if unknown:
        raise AlgebraError(f"{', '.join(unknown)} not in {group.name}")
    members = sorted({index[name] for name in subgroup})
    b = lambda g: basis_vector(field_, n, g)
    representatives, covered = [], set()
    for g in range(n):
        if g not in covered:
            representatives.append(g)
            covered.update(group.table[g][h] for h in members)
    logger.debug(f"{group.name}: {len(representatives)} cosets of a subgroup of order {len(members)}")
    psi = _linear(field_, n, lambda g: b(g) if g in members else zero_vector(field_, n))
    return FrobeniusExtensionData(group_algebra(group, field_, "M"), Subspace.span(field_, n, [b(h) for h in members]),
                                  psi, tuple((b(r), b(group.inverse(r))) for r in representatives), group.elements,
                                  f"kH_{len(members)} ⊂ k[{group.name}]")


@dataclass(frozen=True)
class ExtensionCarrier:
    """A = (M ⊗_N M)^N inside the relative tensor square"""
    extension: FrobeniusExtensionData
    tensor: RelativeTensor
    space: Subspace

    @property
    def dimension(self) -> int:
        return self.space.dimension

    def element(self, pairs: Iterable[Tuple[Vector, Vector]]) -> Vector:
        coords = self.space.coordinates(self.tensor.project_pairs(pairs))
        if coords is None:
            raise AlgebraError(f"{self.extension.name}: element is not N-central")
        return coords

    def pairs(self, a: Vector) -> List[Tuple[Vector, Vector]]:
        return self.tensor.lift_pairs(self.space.element(a))


def extension_carrier(extension: FrobeniusExtensionData) -> ExtensionCarrier:
    M, n, field_ = extension.algebra, extension.dimension, extension.field
    tensor = relative_tensor(field_, n, M, M, extension.base, "N")
    rows: List[Vector] = []
    for x in extension.base.basis:
        commutator, _ = induced_map(tensor, tensor.dimension, lambda p, q: tuple(
            a - b for a, b in zip(tensor.project_pair(M.mul(x, basis_vector(field_, n, p)), basis_vector(field_, n, q)),
                                  tensor.project_pair(basis_vector(field_, n, p), M.mul(basis_vector(field_, n, q), x)))))
        rows.extend(commutator.rows())
    space = kernel(field_, rows, tensor.dimension)
    logger.debug(f"{extension.name}: M ⊗_N M has dimension {tensor.dimension}, its N-centralizer {space.dimension}")
    return ExtensionCarrier(extension, tensor, space)


def _carrier_labels(carrier: ExtensionCarrier) -> Tuple[str, ...]:
    names = carrier.extension.basis_labels()
    one = carrier.extension.field.one

    def unit_index(v: Vector) -> Optional[int]:
        support = [p for p, c in enumerate(v) if c]
        return support[0] if len(support) == 1 and v[support[0]] == one else None

    labels = []
    for k in range(carrier.dimension):
        pairs = carrier.pairs(basis_vector(carrier.extension.field, carrier.dimension, k))
        legs = [unit_index(v) for v in pairs[0]] if len(pairs) == 1 else [None]
        if None in legs:
            labels.append(f"t{k}")
        else:
            labels.append(f"{names[legs[0]]}⊗{names[legs[1]]}")
    return tuple(labels) if len(set(labels)) == len(labels) else tuple(f"t{k}" for k in range(len(labels)))


def frobenius_extension_double(extension: FrobeniusExtensionData, label: str = "") -> DoubleAlgebra:
    """(M ⊗_N M)^N with a∘a' = a1a'1 ⊗ a'2a2 and a⋆a' = a1ψ(a2a'1) ⊗ a'2"""
    carrier = extension_carrier(extension)
    M, psi, field_ = extension.algebra, extension.psi, extension.field
    d = carrier.dimension
    one = M.unit
    basis_pairs = [carrier.pairs(basis_vector(field_, d, k)) for k in range(d)]

    def circ(p: int, q: int) -> Vector:
        return carrier.element((M.mul(x1, y1), M.mul(y2, x2)) for x1, x2 in basis_pairs[p] for y1, y2 in basis_pairs[q])

    def star(p: int, q: int) -> Vector:
        return carrier.element((M.mul(x1, psi(M.mul(x2, y1))), y2)
                               for x1, x2 in basis_pairs[p] for y1, y2 in basis_pairs[q])

    e = carrier.element([(one, one)])
    i = carrier.element(extension.dual_basis)
    vertical = ProductTable.from_rule(field_, d, circ, e, name="V")
    horizontal = ProductTable.from_rule(field_, d, star, i, name="H")
    D = DoubleAlgebra.build(vertical, horizontal, label or f"({extension.name}) double", _carrier_labels(carrier))
    D.cached('extension', lambda: carrier)

    def closed(fn: Callable[[Vector, Vector], Iterable[Tuple[Vector, Vector]]]) -> LinearMap:
        return _linear(field_, d, lambda k: carrier.element(
            pair for x1, x2 in basis_pairs[k] for pair in fn(x1, x2)))

    dual = extension.dual_basis
    return _attach(D, FamilyOracles(
        family="frobext",
        phi={
            Corner.L: closed(lambda x1, x2: [(M.mul(x1, psi(x2)), one)]),
            Corner.R: closed(lambda x1, x2: [(one, M.mul(psi(x1), x2))]),
            Corner.B: closed(lambda x1, x2: [(M.mul(x1, ek), M.mul(fk, x2)) for ek, fk in dual]),
            Corner.T: closed(lambda x1, x2: [(M.mul(ek, x1), M.mul(x2, fk)) for ek, fk in dual]),
        },
        antipode=closed(lambda x1, x2: [(M.mul(psi(M.mul(ek, x1)), x2), fk) for ek, fk in dual]),
        antipode_formula="S(a)=ψ(e_k a_1)a_2 ⊗ f_k",
        antipode_inverse=closed(lambda x1, x2: [(ek, M.mul(x1, psi(M.mul(x2, fk)))) for ek, fk in dual]),
    ))


def _carrier(D: DoubleAlgebra) -> ExtensionCarrier:
    carrier = D.cached('extension', lambda: None)
    if carrier is None:
        raise PreconditionError(f"{D.label} was not built from a Frobenius extension")
    return carrier


# Depth two

@dataclass(frozen=True)
class D2Basis:
    """Pairs (b_j, β_j): elements of (M ⊗_N M)^N as lists of pure tensors, and maps of M"""
    elements: Tuple[Pairs, ...]
    maps: Tuple[LinearMap, ...]

    def scaled(self, factor: Any) -> "D2Basis":
        return D2Basis(self.elements, tuple(LinearMap(m.field, m.source_dim, m.target_dim,
                                                      tuple(tuple(factor * c for c in col) for col in m.columns))
                                            for m in self.maps))


def standard_d2_basis(extension: FrobeniusExtensionData) -> D2Basis:
    """Left D2 basis b_r = m_r ⊗ 1, β_r = r-th coordinate times 1, for N = k·1"""
    if extension.base.dimension != 1:
        raise PreconditionError(f"{extension.name}: the standard D2 basis needs N = k")
    field_, n, one = extension.field, extension.dimension, extension.algebra.unit
    elements, maps = [], []
    for r in range(n):
        elements.append(((basis_vector(field_, n, r), one),))
        maps.append(LinearMap.from_function(field_, n, n, lambda m, r=r: tuple(m[r] * c for c in one)))
    return D2Basis(tuple(elements), tuple(maps))


def right_d2_basis(extension: FrobeniusExtensionData, left: D2Basis) -> D2Basis:
    """γ_j(x) = ψ(x b_j^1) b_j^2 and c_j = β_j(e_k) ⊗ f_k"""
    M, psi, n = extension.algebra, extension.psi, extension.dimension
    maps = tuple(LinearMap.from_function(extension.field, n, n, lambda x, b=b: _sum(
        extension.field, n, (M.mul(psi(M.mul(x, u)), v) for u, v in b))) for b in left.elements)
    elements = tuple(tuple((beta(ek), fk) for ek, fk in extension.dual_basis) for beta in left.maps)
    return D2Basis(elements, maps)


def depth2_verify(extension: FrobeniusExtensionData, left: D2Basis, right: D2Basis,
                  D: Optional[DoubleAlgebra] = None, cross_check: bool = True) -> Report:
    """Check the two D2 identities, the dual bases they induce for Φ_B and Φ_L and the B and L distributive laws"""
    D = D if D is not None else frobenius_extension_double(extension)
    carrier = _carrier(D)
    M, tensor, field_ = extension.algebra, carrier.tensor, extension.field
    n = extension.dimension
    report = Report(name="depth 2")
    report.add(verify_identity(
        "b_j^1 ⊗ b_j^2 β_j(m) m' = m ⊗ m'", field_, 2, n,
        lambda m, m2: tensor.project_pairs((u, M.mul(v, M.mul(beta(m), m2)))
                                           for b, beta in zip(left.elements, left.maps) for u, v in b),
        lambda m, m2: tensor.project_pair(m, m2), labels=extension.basis_labels()))
    report.add(verify_identity(
        "m γ_j(m') c_j^1 ⊗ c_j^2 = m ⊗ m'", field_, 2, n,
        lambda m, m2: tensor.project_pairs((M.mul(m, M.mul(gamma(m2), u)), v)
                                           for c, gamma in zip(right.elements, right.maps) for u, v in c),
        lambda m, m2: tensor.project_pair(m, m2), labels=extension.basis_labels()))
    central = all(carrier.space.contains(tensor.project_pairs(b)) for b in left.elements + right.elements)
    report.record("b_j, c_j are N-central", central)
    if not report.passed:
        report.data = {'distributive frobenius': False}
        return report

    u = [carrier.element(b) for b in left.elements]
    v = [carrier.element(c) for c in right.elements]
    x = [carrier.element((gamma(ek), fk) for ek, fk in extension.dual_basis) for gamma in right.maps]
    B_pairs, L_pairs = tuple(zip(u, v)), tuple(zip(x, v))
    report.extend(check_dual_basis(D, Corner.B, B_pairs), prefix="Φ_B with u_j = b_j, v_j = c_j: ")
    report.extend(check_dual_basis(D, Corner.L, L_pairs), prefix="Φ_L with x_j = S(u_j), y_j = v_j: ")
    S = family_oracles(D).antipode
    report.record("x_j = S(u_j)", all(S(uj) == xj for uj, xj in zip(u, x)))

    V, H = D.vmul, D.hmul
    total = lambda vectors: _sum(field_, D.dimension, vectors)
    report.add(verify_identity("distributive over Δ_B: a∘(a'⋆a'') = (a_(1)∘a')⋆(a_(2)∘a'')",
                               field_, 3, D.dimension,
                               lambda a, a1, a2: V(a, H(a1, a2)),
                               lambda a, a1, a2: total(H(V(H(a, p), a1), V(q, a2)) for p, q in B_pairs),
                               labels=D.basis_labels))
    report.add(verify_identity("distributive over Δ_L: a⋆(a'∘a'') = (a_[1]⋆a')∘(a_[2]⋆a'')",
                               field_, 3, D.dimension,
                               lambda a, a1, a2: H(a, V(a1, a2)),
                               lambda a, a1, a2: total(V(H(V(a, p), a1), H(q, a2)) for p, q in L_pairs),
                               labels=D.basis_labels))
    verdict = report.passed
    if cross_check:
        generic = is_frobenius(D) and check_distributivity(D).distributive
        report.record("agrees with the generic Frobenius and distributivity checks", generic == verdict)
    report.data = {'distributive frobenius': verdict}
    logger.info(f"{extension.name}: depth 2 data {'verified' if verdict else 'rejected'}")
    return report


# Weak Hopf algebras

@dataclass(frozen=True)
class WeakHopfData:
    """A weak Hopf algebra with a dual pair (λ, i) of left integrals.

    The coproduct maps W to W ⊗ W with b_p ⊗ b_q at index p*n + q; counit and
    λ are coordinate vectors of functionals.
    """
    algebra: ProductTable
    coproduct: LinearMap
    counit: Vector
    antipode: LinearMap
    functional: Vector
    integral: Vector
    labels: Tuple[str, ...] = ()
    name: str = "W"

    def __post_init__(self):
        self.validate()

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dimension(self) -> int:
        return self.algebra.dimension

    def legs(self, a: Vector) -> List[Tuple[Any, int, int]]:
        n = self.dimension
        return [(c, *divmod(idx, n)) for idx, c in enumerate(self.coproduct(a)) if c]

    def pairs(self, a: Vector) -> List[Tuple[Vector, Vector]]:
        n, field_ = self.dimension, self.field
        return [(tuple(c * x for x in basis_vector(field_, n, p)), basis_vector(field_, n, q))
                for c, p, q in self.legs(a)]

    def evaluate(self, functional: Vector, a: Vector) -> Any:
        return sum((f * x for f, x in zip(functional, a) if f and x), self.field.zero)

    def harpoon_left(self, functional: Vector, a: Vector) -> Vector:
        """φ ⇀ a = a_(1) φ(a_(2))"""
        return _sum(self.field, self.dimension, (tuple(self.evaluate(functional, y) * c for c in x)
                                                 for x, y in self.pairs(a)))

    def harpoon_right(self, a: Vector, functional: Vector) -> Vector:
        """a ↼ φ = φ(a_(1)) a_(2)"""
        return _sum(self.field, self.dimension, (tuple(self.evaluate(functional, x) * c for c in y)
                                                 for x, y in self.pairs(a)))

    def pi_left(self, a: Vector) -> Vector:
        M = self.algebra
        return _sum(self.field, self.dimension, (tuple(self.evaluate(self.counit, M.mul(x, a)) * c for c in y)
                                                 for x, y in self.pairs(M.unit)))

    def pi_right(self, a: Vector) -> Vector:
        M = self.algebra
        return _sum(self.field, self.dimension, (tuple(self.evaluate(self.counit, M.mul(a, y)) * c for c in x)
                                                 for x, y in self.pairs(M.unit)))

    def _tensor(self, pairs: Iterable[Tuple[Vector, ...]]) -> Vector:
        size = self.dimension ** 2
        out = [self.field.zero] * size
        for u, v in pairs:
            for p, a in enumerate(u):
                if a:
                    for q, b in enumerate(v):
                        if b:
                            out[p * self.dimension + q] += a * b
        return tuple(out)

    def validate(self) -> None:
        M, n, field_ = self.algebra, self.dimension, self.field
        if (self.coproduct.source_dim, self.coproduct.target_dim) != (n, n * n):
            raise AlgebraError(f"{self.name}: coproduct must map W to W ⊗ W")
        if self.antipode.inverse() is None:
            raise AlgebraError(f"{self.name}: antipode is not invertible")
        basis = [basis_vector(field_, n, k) for k in range(n)]
        S = self.antipode
        checks: List[Tuple[str, Callable[[Vector], Any], Callable[[Vector], Any]]] = [
            ("coassociativity", lambda a: self._triple(a, True), lambda a: self._triple(a, False)),
            ("counit", lambda a: (self.harpoon_left(self.counit, a), self.harpoon_right(a, self.counit)),
             lambda a: (a, a)),
            ("a_(1) S(a_(2)) = π_L(a)", lambda a: _sum(field_, n, (M.mul(x, S(y)) for x, y in self.pairs(a))),
             self.pi_left),
            ("S(a_(1)) a_(2) = π_R(a)", lambda a: _sum(field_, n, (M.mul(S(x), y) for x, y in self.pairs(a))),
             self.pi_right),
        ]
        for name, lhs, rhs in checks:
            for k, a in enumerate(basis):
                if lhs(a) != rhs(a):
                    raise AlgebraError(f"{self.name}: {name} fails at basis element {k}")
        for a, b in itertools.product(basis, repeat=2):
            product = self._tensor((M.mul(x1, y1), M.mul(x2, y2))
                                   for x1, x2 in self.pairs(a) for y1, y2 in self.pairs(b))
            if self.coproduct(M.mul(a, b)) != product:
                raise AlgebraError(f"{self.name}: coproduct is not multiplicative")
        if self.harpoon_left(self.functional, self.integral) != M.unit:
            raise AlgebraError(f"{self.name}: λ ⇀ i is not the unit")

    def _triple(self, a: Vector, left: bool) -> Vector:
        """(Δ ⊗ id)Δ(a) when left, (id ⊗ Δ)Δ(a) otherwise, as a flat vector of length n³"""
        n = self.dimension
        out = [self.field.zero] * (n ** 3)
        basis = [basis_vector(self.field, n, k) for k in range(n)]
        for c, p, q in self.legs(a):
            if left:
                for d, r, s in self.legs(basis[p]):
                    out[(r * n + s) * n + q] += c * d
            else:
                for d, r, s in self.legs(basis[q]):
                    out[(p * n + r) * n + s] += c * d
        return tuple(out)

    def dual_algebra(self) -> ProductTable:
        """W^ with (φψ)(a) = φ(a_(1)) ψ(a_(2)) and unit ε"""
        n = self.dimension
        columns = self.coproduct.columns
        return ProductTable.from_rule(self.field, n, lambda p, q: tuple(columns[k][p * n + q] for k in range(n)),
                                      self.counit, name=f"{self.name}^")


def _weak_hopf_from(groupoid: Category, inverse: Sequence[int], field_: Field, name: str) -> WeakHopfData:
    m = len(groupoid.arrows)
    b = lambda g: basis_vector(field_, m, g)
    algebra = groupoid_algebra(groupoid, field_, "W")
    coproduct = LinearMap(field_, m, m * m, tuple(
        tuple(field_.one if idx == g * m + g else field_.zero for idx in range(m * m)) for g in range(m)))
    identities = set(groupoid.identities)
    return WeakHopfData(
        algebra=algebra,
        coproduct=coproduct,
        counit=tuple([field_.one] * m),
        antipode=_linear(field_, m, lambda g: b(inverse[g])),
        functional=tuple(field_.one if g in identities else field_.zero for g in range(m)),
        integral=tuple([field_.one] * m),
        labels=groupoid.arrows,
        name=name,
    )


def group_weak_hopf(group: FiniteGroup, field_: Field = DEFAULT_FIELD) -> WeakHopfData:
    """kG with Δ(g) = g ⊗ g, i = Σ g and λ the coefficient of 1"""
    groupoid = Groupoid.from_group(group)
    return _weak_hopf_from(groupoid, groupoid.inverse, field_, f"k[G_{group.order}]")


def groupoid_weak_hopf(groupoid: Groupoid, field_: Field = DEFAULT_FIELD) -> WeakHopfData:
    """kG with Δ(g) = g ⊗ g, ε(g) = 1, S(g) = g^-1, i = Σ g and λ the indicator of identities"""
    return _weak_hopf_from(groupoid, groupoid.inverse, field_, f"k[groupoid on {len(groupoid.objects)} objects]")


def wha_double(W: WeakHopfData, label: str = "") -> DoubleAlgebra:
    """W with its product and a⋆a' = ⟨λ, S^-1(a'_(1)) a⟩ a'_(2)"""
    M, n, field_ = W.algebra, W.dimension, W.field
    S = W.antipode
    S_inv = S.inverse()
    basis = [basis_vector(field_, n, k) for k in range(n)]

    def star(p: int, q: int) -> Vector:
        return _sum(field_, n, (tuple(W.evaluate(W.functional, M.mul(S_inv(x), basis[p])) * c for c in y)
                                for x, y in W.pairs(basis[q])))

    horizontal = ProductTable.from_rule(field_, n, star, W.integral, name="H")
    D = DoubleAlgebra.build(replace(M, name="V"), horizontal, label or f"{W.name} double",
                            W.labels or tuple(f"w{k}" for k in range(n)))

    dual = W.dual_algebra()
    sigma = tuple(W.evaluate(W.functional, M.mul(W.integral, a)) for a in basis)
    sigma_inv = dual.inverse(sigma)
    if sigma_inv is None:
        raise PreconditionError(f"{W.name}: λ ↼ i is not invertible in the dual algebra")
    hat_s = lambda phi: tuple(W.evaluate(phi, S(a)) for a in basis)
    rho = tuple(W.evaluate(W.functional, S_inv(a)) for a in basis)
    twisted = hat_s(sigma_inv)
    i = W.integral
    delta_i = W.pairs(i)
    return _attach(D, FamilyOracles(
        family="wha",
        phi={
            Corner.L: _linear(field_, n, lambda k: W.harpoon_left(W.functional, basis[k])),
            Corner.R: _linear(field_, n, lambda k: W.harpoon_right(basis[k], rho)),
            Corner.B: _linear(field_, n, lambda k: M.mul(W.pi_left(basis[k]), i)),
            Corner.T: _linear(field_, n, lambda k: M.mul(i, W.pi_right(W.harpoon_right(basis[k], twisted)))),
        },
        antipode=_linear(field_, n, lambda k: W.harpoon_left(sigma_inv, S(basis[k]))),
        antipode_formula="S~(a)=σ^-1 ⇀ S(a)",
        dual_bases={
            Corner.L: tuple((y, S_inv(x)) for x, y in delta_i),
            Corner.R: tuple((x, S(y)) for x, y in delta_i),
            Corner.B: tuple(delta_i),
        },
        notes={'σ': list(format_vector(field_, sigma)), 'unimodular': sigma == W.counit},
    ))
