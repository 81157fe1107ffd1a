"""The DoubleAlgebra type, its axioms, base homomorphisms and the structural lemmas on base ideals."""
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .algebra_core import ProductTable, RelativeTensor, relative_tensor, verify_identity, verify_on
from .exact_linalg import Field, LinearMap, Subspace, Vector, format_vector, kernel, rank, sub
from .models import (
    AlgebraError, AxiomReport, AxiomViolation, CheckResult, Corner, PreconditionError, Report, Symmetry,
    Witness,
)

logger = logging.getLogger(__name__)

OPPOSITE = {Corner.L: Corner.R, Corner.R: Corner.L, Corner.B: Corner.T, Corner.T: Corner.B}

# axiom k of a symmetric image corresponds to axiom AXIOM_PERMUTATION[s][k] of the original
AXIOM_PERMUTATION: Dict[Symmetry, Dict[int, int]] = {
    Symmetry.DUAL: {1: 3, 3: 1, 2: 4, 4: 2, 5: 7, 7: 5, 6: 8, 8: 6},
    Symmetry.OP: {1: 2, 2: 1, 3: 8, 8: 3, 4: 7, 7: 4, 5: 6, 6: 5},
    Symmetry.COOP: {1: 6, 6: 1, 2: 5, 5: 2, 3: 4, 4: 3, 7: 8, 8: 7},
}

_SUFFIX = {Symmetry.DUAL: "^D", Symmetry.OP: "_op", Symmetry.COOP: "_coop"}


@dataclass(frozen=True)
class DoubleAlgebra:
    """A space with a vertical algebra (∘, e) and a horizontal algebra (⋆, i)"""
    vertical: ProductTable
    horizontal: ProductTable
    label: str = "A"
    basis_labels: Tuple[str, ...] = ()
    checked: bool = field(default=True, compare=False)
    _memo: Dict[Any, Any] = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def build(cls, vertical: ProductTable, horizontal: ProductTable, label: str = "A",
              basis_labels: Sequence[str] = (), check: bool = True) -> "DoubleAlgebra":
        """Validate and construct; raises AxiomViolation when an axiom fails"""
        _check_compatible(vertical, horizontal)
        labels = tuple(basis_labels) or tuple(f"b{k}" for k in range(vertical.dimension))
        if len(labels) != vertical.dimension:
            raise AlgebraError(f"{len(labels)} basis labels for dimension {vertical.dimension}")
        if check:
            report = check_axioms(vertical, horizontal, labels)
            if not report.passed:
                logger.warning(f"{label}: rejected, failing axioms {report.failed_axioms()}")
                raise AxiomViolation(report)
            logger.info(f"Built double algebra {label} of dimension {vertical.dimension}")
        return cls(vertical, horizontal, label, labels, checked=check)

    def cached(self, key: Any, factory: Callable[[], Any]) -> Any:
        if key not in self._memo:
            self._memo[key] = factory()
        return self._memo[key]

    @property
    def field(self) -> Field:
        return self.vertical.field

    @property
    def dimension(self) -> int:
        return self.vertical.dimension

    @property
    def e(self) -> Vector:
        return self.vertical.unit

    @property
    def i(self) -> Vector:
        return self.horizontal.unit

    def vmul(self, *factors: Vector) -> Vector:
        return self.vertical.mul_many(*factors)

    def hmul(self, *factors: Vector) -> Vector:
        return self.horizontal.mul_many(*factors)

    def basis(self) -> List[Vector]:
        n = self.dimension
        return [tuple(self.field.one if j == k else self.field.zero for j in range(n)) for k in range(n)]

    def phi(self, corner: Corner) -> LinearMap:
        def build() -> LinearMap:
            n = self.dimension
            rule = {
                Corner.L: lambda a: self.hmul(a, self.e),
                Corner.R: lambda a: self.hmul(self.e, a),
                Corner.B: lambda a: self.vmul(a, self.i),
                Corner.T: lambda a: self.vmul(self.i, a),
            }[corner]
            return LinearMap.from_function(self.field, n, n, rule)
        return self.cached(('phi', corner), build)

    def phis(self, *corners: Corner) -> LinearMap:
        """Composite Φ_X1 Φ_X2 ... with the rightmost applied first"""
        result = self.phi(corners[-1])
        for corner in reversed(corners[:-1]):
            result = self.phi(corner).compose(result)
        return result

    def ideal(self, corner: Corner) -> Subspace:
        return self.cached(('ideal', corner), lambda: self.phi(corner).image())

    def own_table(self, corner: Corner) -> ProductTable:
        """The product in which the base ideal is a subalgebra: ⋆ for B,T and ∘ for L,R"""
        return self.horizontal if corner in (Corner.B, Corner.T) else self.vertical

    def other_table(self, corner: Corner) -> ProductTable:
        return self.vertical if corner in (Corner.B, Corner.T) else self.horizontal

    def own_unit(self, corner: Corner) -> Vector:
        return self.own_table(corner).unit

    def other_unit(self, corner: Corner) -> Vector:
        return self.other_table(corner).unit

    def tensor(self, corner: Corner) -> RelativeTensor:
        """A ⊗_X A balanced through the product of the base ideal X"""
        def build() -> RelativeTensor:
            table = self.own_table(corner)
            return relative_tensor(self.field, self.dimension, table, table, self.ideal(corner), corner.value)
        return self.cached(('tensor', corner), build)

    def center(self, table: ProductTable) -> Subspace:
        return self.cached(('center', table.name), table.center)


def _check_compatible(vertical: ProductTable, horizontal: ProductTable) -> None:
    if vertical.dimension != horizontal.dimension:
        raise AlgebraError(f"Vertical dimension {vertical.dimension} differs from horizontal {horizontal.dimension}")
    if vertical.field != horizontal.field:
        raise AlgebraError("Vertical and horizontal tables are over different fields")
    if vertical.dimension < 1:
        raise AlgebraError("Double algebras must have positive dimension")


def check_axioms(vertical: ProductTable, horizontal: ProductTable,
                 labels: Optional[Sequence[str]] = None) -> AxiomReport:
    """Evaluate A1-A8 on all basis pairs, in the unit form and in the base-map form"""
    _check_compatible(vertical, horizontal)
    V, H = vertical.mul, horizontal.mul
    e, i = vertical.unit, horizontal.unit
    field_, n = vertical.field, vertical.dimension

    def phi_l(a): return H(a, e)
    def phi_r(a): return H(e, a)
    def phi_b(a): return V(a, i)
    def phi_t(a): return V(i, a)

    unit_form = {
        1: (lambda a, b: V(H(a, e), b), lambda a, b: H(V(H(a, e), i), b)),
        2: (lambda a, b: V(a, H(b, e)), lambda a, b: H(V(i, H(b, e)), a)),
        3: (lambda a, b: H(V(a, i), b), lambda a, b: V(H(V(a, i), e), b)),
        4: (lambda a, b: H(a, V(b, i)), lambda a, b: V(H(e, V(b, i)), a)),
        5: (lambda a, b: V(a, H(e, b)), lambda a, b: H(a, V(i, H(e, b)))),
        6: (lambda a, b: V(H(e, a), b), lambda a, b: H(b, V(H(e, a), i))),
        7: (lambda a, b: H(a, V(i, b)), lambda a, b: V(a, H(e, V(i, b)))),
        8: (lambda a, b: H(V(i, a), b), lambda a, b: V(b, H(V(i, a), e))),
    }
    phi_form = {
        1: (lambda a, b: V(phi_l(a), b), lambda a, b: H(phi_b(phi_l(a)), b)),
        2: (lambda a, b: V(a, phi_l(b)), lambda a, b: H(phi_t(phi_l(b)), a)),
        3: (lambda a, b: H(phi_b(a), b), lambda a, b: V(phi_l(phi_b(a)), b)),
        4: (lambda a, b: H(a, phi_b(b)), lambda a, b: V(phi_r(phi_b(b)), a)),
        5: (lambda a, b: V(a, phi_r(b)), lambda a, b: H(a, phi_t(phi_r(b)))),
        6: (lambda a, b: V(phi_r(a), b), lambda a, b: H(b, phi_b(phi_r(a)))),
        7: (lambda a, b: H(a, phi_t(b)), lambda a, b: V(a, phi_r(phi_t(b)))),
        8: (lambda a, b: H(phi_t(a), b), lambda a, b: V(b, phi_l(phi_t(a)))),
    }
    results: Dict[int, CheckResult] = {}
    agreement: Dict[int, bool] = {}
    for k in range(1, 9):
        results[k] = verify_identity(f"A{k}", field_, 2, n, *unit_form[k], labels=labels)
        agreement[k] = verify_identity(f"A{k} (base-map form)", field_, 2, n, *phi_form[k], labels=labels).passed
    report = AxiomReport(results, agreement)
    if not report.forms_agree:
        logger.error("Unit form and base-map form of the axioms disagree")
    return report


def symmetry(D: DoubleAlgebra, which: Symmetry) -> DoubleAlgebra:
    """A^D swaps the two algebras, A_op reverses ∘, A_coop reverses ⋆"""
    if which == Symmetry.DUAL:
        vertical, horizontal = D.horizontal, D.vertical
    elif which == Symmetry.OP:
        vertical, horizontal = D.vertical.opposite(), D.horizontal
    else:
        vertical, horizontal = D.vertical, D.horizontal.opposite()
    suffix = _SUFFIX[which]
    label = D.label[:-len(suffix)] if D.label.endswith(suffix) else D.label + suffix
    return DoubleAlgebra.build(vertical, horizontal, label, D.basis_labels, check=D.checked)


@dataclass(frozen=True)
class BaseMap:
    corner: Corner
    matrix: LinearMap
    image: Subspace

    def __call__(self, a: Vector) -> Vector:
        return self.matrix.apply(a)


@dataclass
class BaseMaps:
    maps: Dict[Corner, BaseMap]
    report: Report

    def __getitem__(self, corner: Corner) -> BaseMap:
        return self.maps[corner]


def _labelled(D: DoubleAlgebra, vectors: Sequence[Vector], prefix: str) -> List[Tuple[str, Vector]]:
    return [(f"{prefix}{k}", v) for k, v in enumerate(vectors)]


def _pairs(D: DoubleAlgebra, first: Sequence[Tuple[str, Vector]], second: Sequence[Tuple[str, Vector]]):
    return [(f"{a}, {b}", (x, y)) for a, x in first for b, y in second]


def base_maps(D: DoubleAlgebra) -> BaseMaps:
    """Φ_L, Φ_R, Φ_B, Φ_T with their images, and the ideal and bimodule properties of the base ideals"""
    maps = {corner: BaseMap(corner, D.phi(corner), D.ideal(corner)) for corner in Corner}
    report = Report(name="base maps")
    field_ = D.field
    basis = list(zip(D.basis_labels, D.basis()))
    ideals = {corner: _labelled(D, D.ideal(corner).basis, corner.value.lower()) for corner in Corner}

    report.add(_verify_membership("L is a left ideal of H", field_, _pairs(D, basis, ideals[Corner.L]),
                                  lambda h, l: D.hmul(h, l), D.ideal(Corner.L)))
    report.add(_verify_membership("R is a right ideal of H", field_, _pairs(D, ideals[Corner.R], basis),
                                  lambda r, h: D.hmul(r, h), D.ideal(Corner.R)))
    report.add(_verify_membership("B is a left ideal of V", field_, _pairs(D, basis, ideals[Corner.B]),
                                  lambda v, b: D.vmul(v, b), D.ideal(Corner.B)))
    report.add(_verify_membership("T is a right ideal of V", field_, _pairs(D, ideals[Corner.T], basis),
                                  lambda t, v: D.vmul(t, v), D.ideal(Corner.T)))
    for corner in Corner:
        table = D.own_table(corner)
        report.record(f"{corner.value} is a unital subalgebra of {'H' if table is D.horizontal else 'V'}",
                      table.is_subalgebra(D.ideal(corner)))
        phi = D.phi(corner)
        triples = [(f"{x}, {a}, {y}", (xv, av, yv))
                   for x, xv in ideals[corner] for a, av in basis for y, yv in ideals[corner]]
        report.add(verify_on(f"Φ_{corner.value} is a bimodule map", field_, triples,
                             lambda x, a, y, p=phi, t=table: p(t.mul_many(x, a, y)),
                             lambda x, a, y, p=phi, t=table: t.mul_many(x, p(a), y)))
    report.record("Φ_L(i) = e", D.phi(Corner.L)(D.i) == D.e)
    report.record("Φ_B(e) = i", D.phi(Corner.B)(D.e) == D.i)
    report.data = {corner.value: D.ideal(corner).dimension for corner in Corner}
    return BaseMaps(maps, report)


def _verify_membership(name: str, field_: Field, samples, fn: Callable[..., Vector], subspace: Subspace) -> CheckResult:
    for label, args in samples:
        value = fn(*args)
        if not subspace.contains(value):
            logger.warning(f"{name} fails at {label}")
            return CheckResult(name, False, Witness((label,), format_vector(field_, value)))
    return CheckResult(name, True)


CORNER_SHARING = [
    (Corner.L, Corner.B), (Corner.B, Corner.L), (Corner.B, Corner.R), (Corner.R, Corner.B),
    (Corner.R, Corner.T), (Corner.T, Corner.R), (Corner.T, Corner.L), (Corner.L, Corner.T),
]

# (source ideal, target ideal, antimultiplicative): restriction of Φ_target to the source ideal
RESTRICTIONS = [
    (Corner.B, Corner.L, False), (Corner.L, Corner.B, False),
    (Corner.R, Corner.B, True), (Corner.B, Corner.R, True),
    (Corner.T, Corner.R, False), (Corner.R, Corner.T, False),
    (Corner.L, Corner.T, True), (Corner.T, Corner.L, True),
]


def _check_isomorphism(D: DoubleAlgebra, phi: LinearMap, source: Subspace, target: Subspace) -> bool:
    restricted = phi.restrict(source, target)
    return restricted is not None and source.dimension == target.dimension and restricted.rank == source.dimension


def check_base_lemmas(D: DoubleAlgebra) -> Report:
    """Corner identities of the base maps, base isomorphisms, commutation and the intersection isomorphisms"""
    report = Report(name="base lemmas")
    field_ = D.field
    for x, y in CORNER_SHARING:
        report.record(f"Φ_{x.value}Φ_{y.value}Φ_{x.value} = Φ_{x.value}", D.phis(x, y, x) == D.phi(x))
    report.record("Φ_LΦ_R = Φ_RΦ_L", D.phis(Corner.L, Corner.R) == D.phis(Corner.R, Corner.L))
    report.record("Φ_BΦ_T = Φ_TΦ_B", D.phis(Corner.B, Corner.T) == D.phis(Corner.T, Corner.B))

    for source, target, anti in RESTRICTIONS:
        phi = D.phi(target)
        name = f"Φ_{target.value}|{source.value}"
        report.record(f"{name} is bijective onto {target.value}",
                      _check_isomorphism(D, phi, D.ideal(source), D.ideal(target)))
        src_table, tgt_table = D.own_table(source), D.own_table(target)
        basis = _labelled(D, D.ideal(source).basis, source.value.lower())
        if anti:
            rhs = lambda x, y, p=phi, t=tgt_table: t.mul(p(y), p(x))
        else:
            rhs = lambda x, y, p=phi, t=tgt_table: t.mul(p(x), p(y))
        report.add(verify_on(f"{name} is an {'anti' if anti else ''}homomorphism", field_, _pairs(D, basis, basis),
                             lambda x, y, p=phi, s=src_table: p(s.mul(x, y)), rhs))
        back = D.phi(source)
        singles = [(label, (v,)) for label, v in basis]
        report.add(verify_on(f"Φ_{source.value}Φ_{target.value} is the identity on {source.value}", field_, singles,
                             lambda x, p=phi, q=back: q(p(x)), lambda x: x))

    lefts, rights = _labelled(D, D.ideal(Corner.L).basis, "l"), _labelled(D, D.ideal(Corner.R).basis, "r")
    bottoms, tops = _labelled(D, D.ideal(Corner.B).basis, "b"), _labelled(D, D.ideal(Corner.T).basis, "t")
    report.add(verify_on("L and R commute in V", field_, _pairs(D, lefts, rights),
                         lambda l, r: D.vmul(l, r), lambda l, r: D.vmul(r, l)))
    report.add(verify_on("B and T commute in H", field_, _pairs(D, bottoms, tops),
                         lambda b, t: D.hmul(b, t), lambda b, t: D.hmul(t, b)))

    center_v, center_h = D.center(D.vertical), D.center(D.horizontal)
    L, R, B, T = (D.ideal(c) for c in (Corner.L, Corner.R, Corner.B, Corner.T))
    b_cap_t, l_cap_r = B.intersection(T), L.intersection(R)
    chains = [
        ("Φ_B: L∩Z(V) ≅ B∩T", Corner.B, L.intersection(center_v), b_cap_t),
        ("Φ_R: B∩T ≅ R∩Z(V)", Corner.R, b_cap_t, R.intersection(center_v)),
        ("Φ_L: B∩Z(H) ≅ L∩R", Corner.L, B.intersection(center_h), l_cap_r),
        ("Φ_T: L∩R ≅ T∩Z(H)", Corner.T, l_cap_r, T.intersection(center_h)),
        ("Φ_B: L∩R∩Z(V) ≅ B∩T∩Z(H)", Corner.B, l_cap_r.intersection(center_v), b_cap_t.intersection(center_h)),
    ]
    for name, corner, source, target in chains:
        report.record(name, _check_isomorphism(D, D.phi(corner), source, target))

    report.data = {
        'dim B∩T': b_cap_t.dimension,
        'dim L∩R': l_cap_r.dimension,
        'connected': b_cap_t.dimension == 1,
        'coconnected': l_cap_r.dimension == 1,
    }
    logger.info(f"{D.label}: base lemmas {'pass' if report.passed else 'FAIL'}")
    return report


def forms_nondegenerate(D: DoubleAlgebra) -> Dict[Corner, bool]:
    """Nondegeneracy on both sides of (x, y) -> Φ_X(x·y) in the product of X"""
    def build() -> Dict[Corner, bool]:
        n = D.dimension
        result = {}
        for corner in Corner:
            phi, table = D.phi(corner), D.own_table(corner)
            left_rows, right_rows = [], []
            for b in D.basis():
                left_rows.extend(phi.compose(table.right_multiplication(b)).rows())
                right_rows.extend(phi.compose(table.left_multiplication(b)).rows())
            result[corner] = rank(D.field, left_rows, n) == n and rank(D.field, right_rows, n) == n
        return result
    return D.cached('forms', build)


@dataclass
class IntegralSpace:
    corner: Corner
    space: Subspace
    base: Subspace
    centralizer: Subspace
    sandwich: bool
    equals_base: bool
    forms_nondegenerate: bool


# I_X: its defining multiplication, the side the candidate sits on, the projection composite,
# the base ideal it contains and the centralizer it lies in
_INTEGRALS = {
    Corner.R: ('H', 'left', (Corner.B, Corner.R), Corner.L, ('V', Corner.R)),
    Corner.L: ('H', 'right', (Corner.B, Corner.L), Corner.R, ('V', Corner.L)),
    Corner.T: ('V', 'left', (Corner.L, Corner.T), Corner.B, ('H', Corner.T)),
    Corner.B: ('V', 'right', (Corner.L, Corner.B), Corner.T, ('H', Corner.B)),
}


def integral_space(D: DoubleAlgebra, corner: Corner) -> IntegralSpace:
    """The integrals I_corner, with the containments in base ideal and centralizer"""
    def build() -> IntegralSpace:
        product, side, composite, base_corner, (cnt_product, cnt_corner) = _INTEGRALS[corner]
        table = D.horizontal if product == 'H' else D.vertical
        projection = D.phis(*composite)
        rows = []
        for a in D.basis():
            shifted = sub(a, projection(a))
            # candidate on the left: x·a = x·Φ(a); on the right: a·x = Φ(a)·x
            action = table.right_multiplication(shifted) if side == 'left' else table.left_multiplication(shifted)
            rows.extend(action.rows())
        space = kernel(D.field, rows, D.dimension)
        base = D.ideal(base_corner)
        cnt_table = D.horizontal if cnt_product == 'H' else D.vertical
        centralizer = cnt_table.centralizer(D.ideal(cnt_corner))
        sandwich = base.is_subspace_of(space) and space.is_subspace_of(centralizer)
        nondegenerate = all(forms_nondegenerate(D).values())
        if not sandwich:
            logger.error(f"{D.label}: containment chain for I_{corner.value} fails")
        return IntegralSpace(corner, space, base, centralizer, sandwich, space == base, nondegenerate)
    return D.cached(('integral', corner), build)


@dataclass
class NakayamaOnBase:
    maps: Dict[Corner, LinearMap]
    report: Report


# ν_X acts on the opposite ideal; the composite is listed left to right as written
_NAKAYAMA = {
    Corner.L: (Corner.R, (Corner.R, Corner.B, Corner.L, Corner.T)),
    Corner.R: (Corner.L, (Corner.L, Corner.B, Corner.R, Corner.T)),
    Corner.B: (Corner.T, (Corner.T, Corner.L, Corner.B, Corner.R)),
    Corner.T: (Corner.B, (Corner.B, Corner.L, Corner.T, Corner.R)),
}


def nakayama_on_base(D: DoubleAlgebra) -> NakayamaOnBase:
    """ν_L, ν_R, ν_B, ν_T as composites of base maps, with their twisting identities"""
    report = Report(name="nakayama on base")
    maps = {}
    basis = list(zip(D.basis_labels, D.basis()))
    for corner, (domain, composite) in _NAKAYAMA.items():
        nu = D.phis(*composite)
        maps[corner] = nu
        phi, table = D.phi(corner), D.own_table(corner)
        elements = _labelled(D, D.ideal(domain).basis, domain.value.lower())
        report.add(verify_on(f"Φ_{corner.value}(a·c) = Φ_{corner.value}(ν_{corner.value}(c)·a)", D.field,
                             _pairs(D, basis, elements),
                             lambda a, c, p=phi, t=table: p(t.mul(a, c)),
                             lambda a, c, p=phi, t=table, v=nu: p(t.mul(v(c), a))))
        report.record(f"ν_{corner.value} is an automorphism of {domain.value}",
                      _check_isomorphism(D, nu, D.ideal(domain), D.ideal(domain)))
    return NakayamaOnBase(maps, report)


# inverse of x in its base ideal, as printed composites applied to the ambient inverse
_INVERSE_FORMULAS = {
    Corner.R: ((Corner.R, Corner.T), (Corner.R, Corner.B)),
    Corner.L: ((Corner.L, Corner.T), (Corner.L, Corner.B)),
    Corner.T: ((Corner.T, Corner.R), (Corner.T, Corner.L)),
    Corner.B: ((Corner.B, Corner.R), (Corner.B, Corner.L)),
}


def invertibility_in_base(D: DoubleAlgebra, x: Vector, corner: Corner) -> Optional[Vector]:
    """Inverse of x inside its base ideal (∘ for L,R and ⋆ for B,T), or None"""
    ideal = D.ideal(corner)
    if not ideal.contains(x):
        raise PreconditionError(f"Element is not in the base ideal {corner.value}")
    table = D.own_table(corner)
    inverse = table.inverse(x)
    if inverse is None:
        return None
    first, second = _INVERSE_FORMULAS[corner]
    if not ideal.contains(inverse) or D.phis(*first)(inverse) != inverse or D.phis(*second)(inverse) != inverse:
        raise AlgebraError(f"Inverse in the ambient algebra is not the base-ideal inverse for {corner.value}")
    return inverse
