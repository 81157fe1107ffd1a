"""Frobenius structure of a double algebra: dual bases, comultiplications, Galois maps, Maschke."""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .algebra_core import RelativeTensor, induced_map, verify_on
from .double_core import DoubleAlgebra, OPPOSITE, nakayama_on_base
from .exact_linalg import (
    LinearMap, Subspace, Vector, add, format_vector, kernel, linear_combination, solve_linear, sub,
)
from .models import AlgebraError, CheckResult, Corner, PreconditionError, Report

logger = logging.getLogger(__name__)

Pairs = Tuple[Tuple[Vector, Vector], ...]

DUAL_BASIS_NAMES = {Corner.B: "u_k ⊗ v_k", Corner.L: "x_j ⊗ y_j", Corner.T: "u^k ⊗ v^k", Corner.R: "x^j ⊗ y^j"}


@dataclass(frozen=True)
class DualBasis:
    corner: Corner
    pairs: Pairs
    tensor: RelativeTensor
    element: Vector
    alternative: Optional[Pairs] = None


def _labelled_basis(D: DoubleAlgebra) -> List[Tuple[str, Vector]]:
    return list(zip(D.basis_labels, D.basis()))


def _dual_basis_system(D: DoubleAlgebra, corner: Corner) -> Tuple[List[Vector], Vector]:
    """Rows and right-hand side for the coefficients t_pq of Σ t_pq b_p ⊗ b_q"""
    n = D.dimension
    phi, table = D.phi(corner), D.own_table(corner)
    basis = D.basis()
    first, second = [], []
    for p in range(n):
        for q in range(n):
            first.append(tuple(x for a in basis for x in table.mul(phi(table.mul(a, basis[p])), basis[q])))
            second.append(tuple(x for a in basis for x in table.mul(basis[p], phi(table.mul(basis[q], a)))))
    rows = LinearMap(D.field, n * n, n * n, tuple(first)).rows()
    rows += LinearMap(D.field, n * n, n * n, tuple(second)).rows()
    rhs = tuple(x for a in basis for x in a) * 2
    return rows, rhs


def _pairs_from_coefficients(D: DoubleAlgebra, t: Vector) -> Pairs:
    n = D.dimension
    basis = D.basis()
    pairs = []
    for q in range(n):
        x = linear_combination(D.field, n, ((t[p * n + q], basis[p]) for p in range(n)))
        if any(x):
            pairs.append((x, basis[q]))
    return tuple(pairs)


def solve_dual_basis(D: DoubleAlgebra, corner: Corner) -> Optional[DualBasis]:
    """Dual basis of Φ_corner as a representative in A ⊗ A, or None when Φ_corner is not Frobenius"""
    def build() -> Optional[DualBasis]:
        n = D.dimension
        rows, rhs = _dual_basis_system(D, corner)
        t = solve_linear(D.field, rows, rhs, n * n)
        if t is None:
            logger.info(f"{D.label}: Φ_{corner.value} has no dual basis")
            return None
        null = kernel(D.field, rows, n * n)
        logger.debug(f"{D.label}: dual basis of Φ_{corner.value}, solution space of dimension {null.dimension}")
        alternative = _pairs_from_coefficients(D, add(t, null.basis[0])) if null.dimension else None
        pairs = _pairs_from_coefficients(D, t)
        tensor = D.tensor(corner)
        table = D.own_table(corner)
        for a in D.basis():
            left = tensor.project_pairs((table.mul(a, x), y) for x, y in pairs)
            right = tensor.project_pairs((x, table.mul(y, a)) for x, y in pairs)
            if left != right:
                raise AlgebraError(f"Dual basis of Φ_{corner.value} is not central in A ⊗_{corner.value} A")
        return DualBasis(corner, pairs, tensor, tensor.project_pairs(pairs), alternative)
    return D.cached(('dual', corner), build)


def require_dual_basis(D: DoubleAlgebra, corner: Corner) -> DualBasis:
    basis = solve_dual_basis(D, corner)
    if basis is None:
        raise PreconditionError(f"Φ_{corner.value} is not a Frobenius homomorphism")
    return basis


def frobenius_corners(D: DoubleAlgebra) -> Dict[Corner, bool]:
    return {corner: solve_dual_basis(D, corner) is not None for corner in Corner}


def is_frobenius(D: DoubleAlgebra) -> bool:
    return all(frobenius_corners(D).values())


def require_frobenius(D: DoubleAlgebra) -> None:
    missing = [c.value for c, ok in frobenius_corners(D).items() if not ok]
    if missing:
        raise PreconditionError(f"Not a Frobenius double algebra: no dual basis for {', '.join(missing)}")


def check_dual_basis(D: DoubleAlgebra, corner: Corner, pairs: Sequence[Tuple[Vector, Vector]],
                     name: str = "") -> Report:
    """Both defining identities of a dual basis, on all basis elements"""
    phi, table = D.phi(corner), D.own_table(corner)
    n = D.dimension
    report = Report(name=name or f"dual basis {corner.value}")
    basis = [(label, (a,)) for label, a in _labelled_basis(D)]
    report.add(verify_on(f"Σ Φ_{corner.value}(a·x)·y = a", D.field, basis,
                         lambda a: linear_combination(D.field, n, ((D.field.one, table.mul(phi(table.mul(a, x)), y))
                                                                   for x, y in pairs)),
                         lambda a: a))
    report.add(verify_on(f"Σ x·Φ_{corner.value}(y·a) = a", D.field, basis,
                         lambda a: linear_combination(D.field, n, ((D.field.one, table.mul(x, phi(table.mul(y, a))))
                                                                   for x, y in pairs)),
                         lambda a: a))
    return report


def _sum(D: DoubleAlgebra, vectors) -> Vector:
    return linear_combination(D.field, D.dimension, ((D.field.one, v) for v in vectors))


# Nakayama automorphisms

@dataclass
class Nakayama:
    corner: Corner
    centralizer: Subspace
    matrix: LinearMap
    report: Report


def nakayama(D: DoubleAlgebra, corner: Corner) -> Nakayama:
    """ν(c) = Σ Φ(x_i·c)·y_i on the centralizer of the base ideal"""
    dual = require_dual_basis(D, corner)
    phi, table = D.phi(corner), D.own_table(corner)
    n = D.dimension
    centralizer = table.centralizer(D.ideal(corner))

    def nu(c: Vector) -> Vector:
        return _sum(D, (table.mul(phi(table.mul(x, c)), y) for x, y in dual.pairs))

    matrix = LinearMap.from_function(D.field, n, n, nu)
    report = Report(name=f"nakayama {corner.value}")
    elements = [(f"c{k}", c) for k, c in enumerate(centralizer.basis)]
    pairs = [(f"{label}, {cl}", (a, c)) for label, a in _labelled_basis(D) for cl, c in elements]
    report.add(verify_on(f"Φ_{corner.value}(a·c) = Φ_{corner.value}(ν(c)·a)", D.field, pairs,
                         lambda a, c: phi(table.mul(a, c)), lambda a, c: phi(table.mul(nu(c), a))))
    tensor = dual.tensor
    report.add(verify_on("x·c ⊗ y = x ⊗ ν(c)·y", D.field, [(cl, (c,)) for cl, c in elements],
                         lambda c: tensor.project_pairs((table.mul(x, c), y) for x, y in dual.pairs),
                         lambda c: tensor.project_pairs((x, table.mul(nu(c), y)) for x, y in dual.pairs)))
    restricted = matrix.restrict(centralizer, centralizer)
    report.record("ν is an automorphism of the centralizer",
                  restricted is not None and restricted.rank == centralizer.dimension)
    composite = nakayama_on_base(D).maps[corner]
    opposite = D.ideal(OPPOSITE[corner])
    report.add(verify_on(f"ν agrees with the base-map composite on {OPPOSITE[corner].value}", D.field,
                         [(f"{OPPOSITE[corner].value.lower()}{k}", (c,)) for k, c in enumerate(opposite.basis)],
                         nu, composite.apply))
    return Nakayama(corner, centralizer, matrix, report)


# Comultiplications

# source, target maps and the handedness of the almost-bialgebroid on each corner
BIALGEBROID_MAPS = {
    Corner.B: (Corner.L, Corner.R, "left"),
    Corner.L: (Corner.B, Corner.T, "left"),
    Corner.T: (Corner.R, Corner.L, "right"),
    Corner.R: (Corner.T, Corner.B, "right"),
}


@dataclass
class Comultiplication:
    corner: Corner
    tensor: RelativeTensor
    matrix: LinearMap
    report: Report

    def __call__(self, a: Vector) -> Vector:
        return self.matrix.apply(a)


def _coproduct_matrix(D: DoubleAlgebra, corner: Corner, pairs: Pairs) -> LinearMap:
    tensor, table = D.tensor(corner), D.own_table(corner)
    n = D.dimension
    return LinearMap.from_function(D.field, n, tensor.dimension,
                                   lambda a: tensor.project_pairs((table.mul(a, x), y) for x, y in pairs))


def comultiplication(D: DoubleAlgebra, corner: Corner) -> Comultiplication:
    """Δ_X(a) = class(a·x_j ⊗ y_j), with the almost-bialgebroid checks"""
    def build() -> Comultiplication:
        dual = require_dual_basis(D, corner)
        matrix = _coproduct_matrix(D, corner, dual.pairs)
        report = Report(name=f"comultiplication {corner.value}")
        _check_comultiplication(D, corner, dual, matrix, report)
        return Comultiplication(corner, dual.tensor, matrix, report)
    return D.cached(('comult', corner), build)


def _check_comultiplication(D: DoubleAlgebra, corner: Corner, dual: DualBasis, matrix: LinearMap,
                            report: Report) -> None:
    tensor, table, other = dual.tensor, D.own_table(corner), D.other_table(corner)
    phi = D.phi(corner)
    field_, n = D.field, D.dimension
    basis = [(label, (a,)) for label, a in _labelled_basis(D)]
    pairs = dual.pairs

    triple = tensor.iterate()
    report.add(verify_on("coassociativity", field_, basis,
                         lambda a: triple.project_triples((table.mul_many(a, x, x2), y2, y)
                                                          for x, y in pairs for x2, y2 in pairs),
                         lambda a: triple.project_triples((table.mul(a, x), table.mul(y, x2), y2)
                                                          for x, y in pairs for x2, y2 in pairs)))
    report.add(verify_on("left counit", field_, basis,
                         lambda a: _sum(D, (table.mul(phi(table.mul(a, x)), y) for x, y in pairs)), lambda a: a))
    report.add(verify_on("right counit", field_, basis,
                         lambda a: _sum(D, (table.mul_many(a, x, phi(y)) for x, y in pairs)), lambda a: a))
    unit = other.unit
    report.record("Δ preserves the unit", matrix.apply(unit) == tensor.project_pair(unit, unit))
    report.record("counit preserves the unit", phi(unit) == table.unit)

    source, target, hand = BIALGEBROID_MAPS[corner]
    phi_s, phi_t = D.phi(source), D.phi(target)
    elements = [(f"{corner.value.lower()}{k}", x) for k, x in enumerate(D.ideal(corner).basis)]
    element_pairs = [(f"{a}, {b}", (x, y)) for a, x in elements for b, y in elements]
    report.add(verify_on("source map is multiplicative", field_, element_pairs,
                         lambda x, y: phi_s(table.mul(x, y)), lambda x, y: other.mul(phi_s(x), phi_s(y))))
    report.add(verify_on("target map is antimultiplicative", field_, element_pairs,
                         lambda x, y: phi_t(table.mul(x, y)), lambda x, y: other.mul(phi_t(y), phi_t(x))))
    report.add(verify_on("source and target ranges commute", field_, element_pairs,
                         lambda x, y: other.mul(phi_s(x), phi_t(y)), lambda x, y: other.mul(phi_t(y), phi_s(x))))

    full = [(f"{a}, {b}", (x, y)) for a, x in _labelled_basis(D) for b, y in _labelled_basis(D)]
    if hand == "left":
        counit_forms = (
            lambda a, a2: phi(other.mul(a, phi_s(phi(a2)))),
            lambda a, a2: phi(other.mul(a, a2)),
            lambda a, a2: phi(other.mul(a, phi_t(phi(a2)))),
        )
    else:
        counit_forms = (
            lambda a, a2: phi(other.mul(phi_s(phi(a2)), a)),
            lambda a, a2: phi(other.mul(a2, a)),
            lambda a, a2: phi(other.mul(phi_t(phi(a2)), a)),
        )
    report.add(verify_on("counit absorbs the source map", field_, full, counit_forms[0], counit_forms[1]))
    report.add(verify_on("counit absorbs the target map", field_, full, counit_forms[2], counit_forms[1]))

    def takeuchi_sides(a: Vector, x: Vector):
        terms = [(table.mul(a, u), v) for u, v in pairs]
        if hand == "left":
            lhs = tensor.project_pairs((other.mul(u, phi_t(x)), v) for u, v in terms)
            rhs = tensor.project_pairs((u, other.mul(v, phi_s(x))) for u, v in terms)
        else:
            lhs = tensor.project_pairs((other.mul(phi_s(x), u), v) for u, v in terms)
            rhs = tensor.project_pairs((u, other.mul(phi_t(x), v)) for u, v in terms)
        return lhs, rhs

    samples = [(f"{a}, {b}", (x, y)) for a, x in _labelled_basis(D) for b, y in elements]
    report.add(verify_on("Takeuchi property", field_, samples,
                         lambda a, x: takeuchi_sides(a, x)[0], lambda a, x: takeuchi_sides(a, x)[1]))

    if dual.alternative is not None:
        report.record("Δ is independent of the dual basis representative",
                      _coproduct_matrix(D, corner, dual.alternative) == matrix)
    logger.info(f"{D.label}: Δ_{corner.value} checks {'pass' if report.passed else 'FAIL'}")


# Galois maps

def _galois_terms(D: DoubleAlgebra, source: Corner, target: Corner) -> Callable:
    V, H = D.vmul, D.hmul
    terms = {
        (Corner.R, Corner.B): lambda a, a2, x, y: (H(a, x), V(y, a2)),
        (Corner.B, Corner.R): lambda a, a2, x, y: (H(a, x), V(y, a2)),
        (Corner.L, Corner.T): lambda a, a2, x, y: (V(a, x), H(y, a2)),
        (Corner.T, Corner.L): lambda a, a2, x, y: (V(a, x), H(y, a2)),
        (Corner.L, Corner.B): lambda a, a2, x, y: (V(x, a2), H(y, a)),
        (Corner.B, Corner.L): lambda a, a2, x, y: (H(x, a2), V(y, a)),
        (Corner.R, Corner.T): lambda a, a2, x, y: (H(a2, x), V(a, y)),
        (Corner.T, Corner.R): lambda a, a2, x, y: (V(a2, x), H(a, y)),
    }
    if (source, target) not in terms:
        raise AlgebraError(f"{source.value} and {target.value} are not neighbours")
    return terms[(source, target)]


GALOIS_PAIRS = [
    (Corner.R, Corner.B), (Corner.B, Corner.R), (Corner.L, Corner.T), (Corner.T, Corner.L),
    (Corner.L, Corner.B), (Corner.B, Corner.L), (Corner.R, Corner.T), (Corner.T, Corner.R),
]


@dataclass
class GaloisMap:
    source: Corner
    target: Corner
    matrix: LinearMap
    well_defined: bool


def galois_map(D: DoubleAlgebra, source: Corner, target: Corner) -> GaloisMap:
    """Γ_XY: A ⊗_X A -> A ⊗_Y A built from the dual basis of Φ_Y"""
    def build() -> GaloisMap:
        term = _galois_terms(D, source, target)
        dual = require_dual_basis(D, target)
        src, tgt = D.tensor(source), D.tensor(target)
        basis = D.basis()
        matrix, well_defined = induced_map(
            src, tgt.dimension,
            lambda p, q: tgt.project_pairs(term(basis[p], basis[q], x, y) for x, y in dual.pairs),
        )
        return GaloisMap(source, target, matrix, well_defined)
    return D.cached(('galois', source, target), build)


def _act(tensor: RelativeTensor, q: Vector, left: Callable[[Vector], Vector],
         right: Callable[[Vector], Vector]) -> Vector:
    return tensor.project_pairs((left(u), right(w)) for u, w in tensor.lift_pairs(q))


def check_galois_bimodule(D: DoubleAlgebra, source: Corner, target: Corner) -> CheckResult:
    """h ⋆ Γ(a ⊗ a') ∘ v = Γ(h ⋆ a ⊗ a' ∘ v) for the maps between R and B"""
    gamma = galois_map(D, source, target)
    src, tgt = D.tensor(source), D.tensor(target)
    samples = []
    for f in range(src.dimension):
        q = tuple(D.field.one if k == f else D.field.zero for k in range(src.dimension))
        for hl, h in _labelled_basis(D):
            for vl, v in _labelled_basis(D):
                samples.append((f"q{f}, {hl}, {vl}", (q, h, v)))
    return verify_on(f"Γ_{source.value}{target.value} is an H-V bimodule map", D.field, samples,
                     lambda q, h, v: _act(tgt, gamma.matrix.apply(q), lambda u: D.hmul(h, u), lambda w: D.vmul(w, v)),
                     lambda q, h, v: gamma.matrix.apply(_act(src, q, lambda u: D.hmul(h, u), lambda w: D.vmul(w, v))))


# identity, and the composite it is paired with
def _galois_identities(D: DoubleAlgebra):
    V, H = D.vmul, D.hmul
    B, L, T, R = (solve_dual_basis(D, c).pairs for c in (Corner.B, Corner.L, Corner.T, Corner.R))
    s = lambda terms: _sum(D, terms)
    return [
        ("G1", lambda a: s(H(u, V(v, a)) for u, v in B), D.phis(Corner.T, Corner.R), (Corner.R, Corner.B)),
        ("G2", lambda a: s(V(H(a, x), y) for x, y in R), D.phis(Corner.L, Corner.B), (Corner.B, Corner.R)),
        ("G3", lambda a: s(H(V(a, u), v) for u, v in T), D.phis(Corner.B, Corner.L), (Corner.L, Corner.T)),
        ("G4", lambda a: s(V(x, H(y, a)) for x, y in L), D.phis(Corner.R, Corner.T), (Corner.T, Corner.L)),
        ("G5", lambda a: s(H(V(u, a), v) for u, v in B), D.phis(Corner.T, Corner.L), (Corner.L, Corner.B)),
        ("G6", lambda a: s(V(H(x, a), y) for x, y in L), D.phis(Corner.R, Corner.B), (Corner.B, Corner.L)),
        ("G7", lambda a: s(H(u, V(a, v)) for u, v in T), D.phis(Corner.B, Corner.R), (Corner.R, Corner.T)),
        ("G8", lambda a: s(V(x, H(a, y)) for x, y in R), D.phis(Corner.L, Corner.T), (Corner.T, Corner.R)),
    ]


def check_galois_identities(D: DoubleAlgebra) -> Report:
    """The eight Galois identities, and the composites Γ_YX Γ_XY computed independently"""
    require_frobenius(D)

    def build() -> Report:
        report = Report(name="galois")
        basis = [(label, (a,)) for label, a in _labelled_basis(D)]
        identities_hold, composites_identity = [], []
        for name, lhs, projection, (x, y) in _galois_identities(D):
            result = report.add(verify_on(name, D.field, basis, lhs, projection.apply))
            identities_hold.append(result.passed)
            forward, backward = galois_map(D, x, y), galois_map(D, y, x)
            report.record(f"Γ_{x.value}{y.value} well defined", forward.well_defined)
            composite = backward.matrix.compose(forward.matrix)
            composites_identity.append(composite.is_identity())
            report.record(f"Γ_{y.value}{x.value}Γ_{x.value}{y.value} = id", composite.is_identity(), required=False)
        report.record("identities hold ⇔ Galois maps are mutually inverse",
                      all(identities_hold) == all(composites_identity))
        report.data = {'identities': all(identities_hold), 'invertible': all(composites_identity)}
        for x, y in [(Corner.R, Corner.B), (Corner.B, Corner.R)]:
            report.add(check_galois_bimodule(D, x, y))
        logger.info(f"{D.label}: Galois identities {'hold' if all(identities_hold) else 'fail'}")
        return report
    return D.cached('galois report', build)


def galois_identities_hold(D: DoubleAlgebra) -> bool:
    return is_frobenius(D) and check_galois_identities(D).data['identities']


def require_galois(D: DoubleAlgebra) -> None:
    if not galois_identities_hold(D):
        raise PreconditionError("The Galois identities do not hold")


# Index elements

# the index of Φ_X lies in the opposite base ideal
def frobenius_index(D: DoubleAlgebra) -> Tuple[Dict[Corner, Vector], Report]:
    """Ind Φ_X = Σ x·y, compared with its closed form and located in base ideal ∩ center"""
    require_frobenius(D)
    require_galois(D)
    report = Report(name="index")
    ii, ee = D.vmul(D.i, D.i), D.hmul(D.e, D.e)
    indices = {}
    for corner in Corner:
        home = OPPOSITE[corner]
        table = D.own_table(corner)
        value = _sum(D, (table.mul(x, y) for x, y in solve_dual_basis(D, corner).pairs))
        indices[corner] = value
        closed = D.phi(home)(ii if table is D.vertical else ee)
        algebra = "V" if table is D.vertical else "H"
        report.record(f"Ind Φ_{corner.value} closed form", value == closed)
        report.record(f"Ind Φ_{corner.value} ∈ {home.value} ∩ Z({algebra})",
                      D.ideal(home).contains(value) and D.center(table).contains(value))
    report.data = {f"Ind Φ_{c.value}": list(format_vector(D.field, v)) for c, v in indices.items()}
    return indices, report


# Maschke

def _solve_in(D: DoubleAlgebra, subspace: Subspace, fn: Callable[[Vector], Vector], rhs: Vector) -> Optional[Vector]:
    columns = [fn(b) for b in subspace.basis]
    if not columns:
        return None if any(rhs) else subspace.element(())
    rows = [tuple(col[r] for col in columns) for r in range(len(rhs))]
    coords = solve_linear(D.field, rows, rhs, len(columns))
    return None if coords is None else subspace.element(coords)


def _full(D: DoubleAlgebra) -> Subspace:
    return Subspace.full(D.field, D.dimension)


def separating_idempotent(D: DoubleAlgebra, corner: Corner) -> Optional[Vector]:
    """ξ in A ⊗_X A with μ(ξ) = unit and a·ξ = ξ·a, as quotient coordinates"""
    tensor, table = D.tensor(corner), D.own_table(corner)
    basis = D.basis()
    m, n = tensor.dimension, D.dimension
    mu, _ = induced_map(tensor, n, lambda p, q: table.mul(basis[p], basis[q]))
    rows = list(mu.rows())
    rhs = list(table.unit)
    for a in basis:
        left, _ = induced_map(tensor, m, lambda p, q: tensor.project_pair(table.mul(a, basis[p]), basis[q]))
        right, _ = induced_map(tensor, m, lambda p, q: tensor.project_pair(basis[p], table.mul(basis[q], a)))
        rows.extend(sub(l, r) for l, r in zip(left.rows(), right.rows()))
        rhs.extend([D.field.zero] * m)
    return solve_linear(D.field, rows, tuple(rhs), m)


def is_separating_idempotent(D: DoubleAlgebra, corner: Corner, pairs) -> bool:
    tensor, table = D.tensor(corner), D.own_table(corner)
    if _sum(D, (table.mul(x, y) for x, y in pairs)) != table.unit:
        return False
    return all(
        tensor.project_pairs((table.mul(a, x), y) for x, y in pairs)
        == tensor.project_pairs((x, table.mul(y, a)) for x, y in pairs)
        for a in D.basis()
    )


def _annihilator(D: DoubleAlgebra, fn: Callable[[Vector], Vector]) -> Subspace:
    n = D.dimension
    return LinearMap.from_function(D.field, n, n, fn).kernel()


def _split_solution(D: DoubleAlgebra, product: Callable, unit: Vector, left: bool) -> Optional[Vector]:
    """s with s·u = u and v·s = 0 when v·u = 0 (left), or the mirror image"""
    n = D.dimension
    if left:
        main = LinearMap.from_function(D.field, n, n, lambda s: product(s, unit))
        annihilator = _annihilator(D, lambda v: product(v, unit))
        extra = [LinearMap.from_function(D.field, n, n, lambda s, v=v: product(v, s)) for v in annihilator.basis]
    else:
        main = LinearMap.from_function(D.field, n, n, lambda s: product(unit, s))
        annihilator = _annihilator(D, lambda v: product(unit, v))
        extra = [LinearMap.from_function(D.field, n, n, lambda s, v=v: product(s, v)) for v in annihilator.basis]
    rows = list(main.rows())
    rhs = list(unit)
    for m in extra:
        rows.extend(m.rows())
        rhs.extend([D.field.zero] * n)
    return solve_linear(D.field, rows, tuple(rhs), n)


def _side_conditions(D: DoubleAlgebra, vertical: bool) -> Tuple[List[Tuple[str, bool]], Dict[str, Vector]]:
    """The seven equivalent conditions for i in V (vertical) or e in H"""
    if vertical:
        mul, unit = D.vmul, D.i
        low, high, first, second = Corner.B, Corner.T, Corner.L, Corner.R
    else:
        mul, unit = D.hmul, D.e
        low, high, first, second = Corner.L, Corner.R, Corner.B, Corner.T
    full = _full(D)
    p_low = _solve_in(D, D.ideal(low), lambda p: mul(unit, p), unit)
    s_left = _split_solution(D, mul, unit, left=True)
    xi_first = separating_idempotent(D, first)
    j = _solve_in(D, full, lambda x: mul(unit, x, unit), unit)
    xi_second = separating_idempotent(D, second)
    s_right = _split_solution(D, mul, unit, left=False)
    p_high = _solve_in(D, D.ideal(high), lambda p: mul(p, unit), unit)
    conditions = [
        (f"(1) {low.value} ↪ A split mono", p_low is not None),
        (f"(2) Φ_{low.value} split epi", s_left is not None),
        (f"(3) {first.value} ⊂ {'V' if vertical else 'H'} separable", xi_first is not None),
        ("(4) unit regular", j is not None),
        (f"(5) {second.value} ⊂ {'V' if vertical else 'H'} separable", xi_second is not None),
        (f"(6) Φ_{high.value} split epi", s_right is not None),
        (f"(7) {high.value} ↪ A split mono", p_high is not None),
    ]
    witnesses = {}
    if j is not None:
        witnesses['j'] = j
    if xi_first is not None:
        witnesses[f'ξ_{first.value}'] = xi_first
    if xi_second is not None:
        witnesses[f'ξ_{second.value}'] = xi_second
    return conditions, witnesses


def split_extension(D: DoubleAlgebra, corner: Corner) -> Optional[Vector]:
    """r in the centralizer of the base ideal with Φ_X(r) = own unit, or None"""
    table = D.own_table(corner)
    centralizer = table.centralizer(D.ideal(corner))
    return _solve_in(D, centralizer, D.phi(corner).apply, table.unit)


def maschke_report(D: DoubleAlgebra) -> Report:
    """Regularity of i in V and e in H against the separability and splitting conditions"""
    require_frobenius(D)
    require_galois(D)
    report = Report(name="maschke")
    field_ = D.field
    data = {}
    for vertical in (True, False):
        side = "V" if vertical else "H"
        conditions, witnesses = _side_conditions(D, vertical)
        for name, value in conditions:
            report.record(f"{side} {name}", value, required=False)
        values = [value for _, value in conditions]
        report.record(f"{side}: all seven conditions agree", all(values) or not any(values))
        regular = values[3]
        data[f'{side} regular'] = regular
        if not all(values):
            continue
        j = witnesses['j']
        data[f'{side} j'] = list(format_vector(field_, j))
        mul = D.vmul if vertical else D.hmul
        unit, other_unit = (D.i, D.e) if vertical else (D.e, D.i)
        if vertical:
            normalized = D.phis(Corner.L, Corner.B)(D.vmul(D.i, j))
        else:
            normalized = D.phis(Corner.B, Corner.L)(D.hmul(D.e, j))
        report.record(f"{side}: normalized integral", normalized == other_unit)
        # regularity witnesses from the separating idempotents
        first, second = (Corner.L, Corner.R) if vertical else (Corner.B, Corner.T)
        for corner in (first, second):
            tensor = D.tensor(corner)
            pairs = tensor.lift_pairs(witnesses[f'ξ_{corner.value}'])
            j_from = _sum(D, (mul(x, D.phi(corner)(y)) for x, y in pairs))
            report.record(f"{side}: j from ξ_{corner.value} is a regularity witness", mul(unit, j_from, unit) == unit)
        # separating idempotents from the regularity witness
        if vertical:
            l = D.phis(Corner.L, Corner.T)(j)
            r = D.phis(Corner.R, Corner.T)(j)
            xi_r = tuple((D.vmul(x, l), y) for x, y in solve_dual_basis(D, Corner.R).pairs)
            xi_l = tuple((D.vmul(x, r), y) for x, y in solve_dual_basis(D, Corner.L).pairs)
            report.record("V: ξ_R from j is separating", is_separating_idempotent(D, Corner.R, xi_r))
            report.record("V: ξ_L from j is separating", is_separating_idempotent(D, Corner.L, xi_l))
        else:
            b = D.phis(Corner.B, Corner.R)(j)
            t = D.phis(Corner.T, Corner.R)(j)
            xi_t = tuple((D.hmul(x, b), y) for x, y in solve_dual_basis(D, Corner.T).pairs)
            xi_b = tuple((D.hmul(x, t), y) for x, y in solve_dual_basis(D, Corner.B).pairs)
            report.record("H: ξ_T from j is separating", is_separating_idempotent(D, Corner.T, xi_t))
            report.record("H: ξ_B from j is separating", is_separating_idempotent(D, Corner.B, xi_b))

    splits = {corner: split_extension(D, corner) for corner in Corner}
    for corner, r in splits.items():
        report.record(f"{corner.value} ⊂ {'H' if corner in (Corner.B, Corner.T) else 'V'} split", r is not None,
                      required=False)
    if data['V regular'] and data['H regular']:
        report.record("both units regular ⇒ all four extensions split separable",
                      all(r is not None for r in splits.values())
                      and all(separating_idempotent(D, corner) is not None for corner in Corner))
    report.data = data
    logger.info(f"{D.label}: Maschke V regular={data['V regular']}, H regular={data['H regular']}")
    return report
