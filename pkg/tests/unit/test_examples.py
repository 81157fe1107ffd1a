import json
import pytest
import sys
import os

# Add the project root directory to Python path
sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from src.double_algebra.models import AlgebraError, AxiomViolation, Corner, InstanceFormatError, PreconditionError
from src.double_algebra.exact_linalg import Field, LinearMap, basis_vector, linear_combination
from src.double_algebra.algebra_core import ProductTable
from src.double_algebra.double_core import check_axioms
from src.double_algebra.antipode import check_antipode_identities
from src.double_algebra.examples import (
    Category, D2Basis, DoubleCategoryData, FiniteGroup, Groupoid, check_oracles, commutative_double, commuting_squares,
    cyclic_group, diagonal_extension, disjoint_union, double_category_double, double_category_report,
    depth2_verify, extension_carrier, family_oracles, frobenius_extension_double, group_weak_hopf, groupoid_double,
    groupoid_weak_hopf, hopf_group_double, matrix_algebra, matrix_double, matrix_trace_extension, pair_groupoid,
    right_d2_basis, standard_d2_basis, subgroup_extension, symmetric_group, trivial_extension, truncated_polynomial,
    wha_double,
)


def load_data(name):
    with open(f'tests/test_data/{name}', 'r') as f:
        return json.load(f)


class TestFamilies:
    @pytest.fixture
    def q(self):
        return Field(0)

    @pytest.mark.parametrize("n", [1, 2])
    def test_matrix_oracles(self, q, n):
        """Closed forms of M_n agree with the generic computations"""
        D = matrix_double(n, q)
        report = check_oracles(D)
        assert report.passed
        assert report.data['family'] == "matrix"

    def test_matrix_needs_positive_size(self, q):
        """M_0 is rejected"""
        with pytest.raises(AlgebraError):
            matrix_double(0, q)

    def test_commutative_oracles(self, q):
        """k[x]/(x³) with ∘ = ⋆ has identity base maps and S = id"""
        D = commutative_double(truncated_polynomial(3, q), ["1", "x", "x^2"])
        assert check_oracles(D).passed
        assert family_oracles(D).antipode_formula == "S(a)=a"

    def test_commutative_from_table(self, q):
        """Q × Q read from a structure-constant file is a double algebra"""
        data = load_data('q_times_q.json')
        table = ProductTable.from_dense(q, data['dimension'], [q.parse(c) for c in data['constants']],
                                        tuple(q.parse(c) for c in data['unit']))
        D = commutative_double(table, data['basis'])
        assert D.basis_labels == ("p", "q")
        assert D.phi(Corner.L).is_identity()

    def test_non_commutative_rejected(self, q):
        """∘ = ⋆ = the M_2 product fails the axioms"""
        with pytest.raises(AxiomViolation):
            commutative_double(matrix_algebra(2, q))

    def test_hopf_group_convolution(self, q):
        """The convolution on kZ_2 is g ⋆ h = δ_gh g"""
        D = hopf_group_double(cyclic_group(2), q)
        one, g = basis_vector(q, 2, 0), basis_vector(q, 2, 1)
        assert D.hmul(g, g) == g
        assert not any(D.hmul(one, g))
        assert D.i == (q(1), q(1))
        assert check_oracles(D).passed
        assert D.label == "k[Z_2]"

    def test_symmetric_group(self, q):
        """S_3 has order 6 and a non-commutative group algebra"""
        group = symmetric_group(3)
        assert group.order == 6
        D = hopf_group_double(group, q)
        assert not D.vertical.is_commutative()
        assert check_oracles(D).passed


class TestGroupoids:
    @pytest.fixture
    def q(self):
        return Field(0)

    def test_pair_groupoid_is_matrix(self, q):
        """The pair groupoid on two objects gives exactly the M_2 tables"""
        groupoid = groupoid_double(pair_groupoid(2), q)
        matrix = matrix_double(2, q)
        assert groupoid.vertical == matrix.vertical
        assert groupoid.horizontal == matrix.horizontal
        assert groupoid.basis_labels == matrix.basis_labels

    def test_group_and_point(self, q):
        """In Z_2 ⊔ point, Φ_B(g) = 1 + g"""
        G = Groupoid.from_dict(load_data('z2_point_groupoid.json'))
        D = groupoid_double(G, q)
        assert D.basis_labels == ("1", "g", "p")
        assert D.phi(Corner.B)(basis_vector(q, 3, 1)) == (q(1), q(1), q(0))
        assert check_oracles(D).passed

    def test_disjoint_union(self, q):
        """The union of Z_2 and a point matches the file version"""
        point = Groupoid.from_group(FiniteGroup(("p",), ((0,),), name="1"), object_name="p")
        union = disjoint_union(Groupoid.from_group(cyclic_group(2)), point)
        assert union.arrows == ("1", "g", "p")
        assert groupoid_double(union, q).vertical == groupoid_double(
            Groupoid.from_dict(load_data('z2_point_groupoid.json')), q).vertical

    def test_group_from_file(self):
        """Cayley tables round-trip through the JSON layout"""
        group = FiniteGroup.from_dict(load_data('z2_group.json'))
        assert group == cyclic_group(2)
        assert group.to_dict() == load_data('z2_group.json')

    def test_non_groupoid_rejected(self):
        """A category with a non-invertible arrow is not a groupoid"""
        category = Category(("a", "b"), ("1a", "1b", "f"), (0, 1, 0), (0, 1, 1),
                            {(0, 0): 0, (1, 1): 1, (2, 0): 2, (1, 2): 2}, (0, 1))
        assert category.non_invertible() == ["f"]
        assert not category.is_groupoid()
        with pytest.raises(AlgebraError):
            Groupoid.from_category(category)


class TestDoubleCategories:
    @pytest.fixture
    def q(self):
        return Field(0)

    def test_groupoid_one_cells_accepted(self, q):
        """Invertible 1-cells give a double algebra"""
        dcat = DoubleCategoryData.from_dict(load_data('doublecat_pair.json'))
        report = double_category_report(dcat, q)
        assert report.passed
        assert report.data['accepted']
        assert report.data['groupoids']
        D = double_category_double(dcat, q)
        assert D.dimension == 4

    def test_non_invertible_one_cell_rejected(self, q):
        """A horizontal arrow without inverse breaks A1 at (h, h)"""
        dcat = DoubleCategoryData.from_dict(load_data('doublecat_arrow.json'))
        assert dcat.non_invertible_one_cells() == ["h"]
        report = double_category_report(dcat, q)
        assert report.get("axiom verdict matches the groupoid criterion").passed
        assert not report.data['accepted']
        assert 1 in report.data['failed axioms']
        with pytest.raises(AxiomViolation) as info:
            double_category_double(dcat, q)
        assert str(info.value) == "A1 fails at (h, h); 1-cells without inverses: h"
        assert info.value.detail == "1-cells without inverses: h"
        assert info.value.report.failed_axioms() == report.data['failed axioms']

    def test_commuting_squares(self, q):
        """Commuting squares of the pair groupoid on two objects form a valid double category"""
        dcat = commuting_squares(pair_groupoid(2))
        assert len(dcat.cells) == 16
        report = double_category_report(dcat, q)
        assert report.data['accepted']
        assert report.passed

    def test_round_trip(self):
        """Double category data survives to_dict and from_dict"""
        dcat = DoubleCategoryData.from_dict(load_data('doublecat_pair.json'))
        assert DoubleCategoryData.from_dict(dcat.to_dict()) == dcat

    def test_invalid_boundaries(self):
        """A composite with mismatched boundaries is rejected"""
        data = load_data('doublecat_pair.json')
        data['horizontal_composition'].append(["h", "h", "h"])
        with pytest.raises(AlgebraError):
            DoubleCategoryData.from_dict(data)

    def test_malformed_data(self):
        """Missing keys and unknown cell names are format errors, not validation failures"""
        data = load_data('doublecat_pair.json')
        del data['cells']
        with pytest.raises(InstanceFormatError):
            DoubleCategoryData.from_dict(data)
        data = load_data('doublecat_pair.json')
        data['vertical_composition'].append(["h", "z", "h"])
        with pytest.raises(InstanceFormatError) as info:
            DoubleCategoryData.from_dict(data)
        assert not isinstance(info.value, AlgebraError)


class TestFrobeniusExtensions:
    @pytest.fixture
    def q(self):
        return Field(0)

    def test_trivial_extension(self, q):
        """k = k gives the one-dimensional double algebra and its D2 data checks out"""
        extension = trivial_extension(q)
        D = frobenius_extension_double(extension)
        assert D.dimension == 1
        assert check_oracles(D).passed
        left = standard_d2_basis(extension)
        report = depth2_verify(extension, left, right_d2_basis(extension, left), D)
        assert report.passed
        assert report.data['distributive frobenius']

    @pytest.fixture(scope="class")
    def trace(self):
        extension = matrix_trace_extension(2, Field(0))
        return extension, frobenius_extension_double(extension)

    def test_trace_extension_depth_two(self, trace):
        """k ⊂ M_2 has the standard D2 bases"""
        extension, D = trace
        assert D.dimension == 16
        left = standard_d2_basis(extension)
        report = depth2_verify(extension, left, right_d2_basis(extension, left), D, cross_check=False)
        assert report.passed
        assert report.data['distributive frobenius']

    def test_scaled_basis_fails(self, q, trace):
        """Doubling the maps β_j breaks the first D2 identity"""
        extension, D = trace
        left = standard_d2_basis(extension)
        right = right_d2_basis(extension, left)
        report = depth2_verify(extension, left.scaled(q(2)), right, D, cross_check=False)
        assert not report.passed
        assert not report.checks[0].passed
        assert report.data == {'distributive frobenius': False}

    def test_standard_basis_needs_scalars(self, q):
        """The standard D2 basis is only defined over N = k"""
        with pytest.raises(PreconditionError):
            standard_d2_basis(diagonal_extension(2, q))

    @pytest.fixture(scope="class")
    def subgroup(self):
        extension = subgroup_extension(symmetric_group(3), ("123", "213"), Field(0))
        return extension, frobenius_extension_double(extension)

    def test_subgroup_extension_data(self, q, subgroup):
        """kS_2 ⊂ kS_3 has three coset representatives and a 10-dimensional centralizer"""
        extension, D = subgroup
        assert extension.base.dimension == 2
        assert len(extension.dual_basis) == 3
        assert extension_carrier(extension).tensor.dimension == 18
        assert D.dimension == 10

    def test_subgroup_extension_double(self, subgroup):
        """Outside depth 2 the axioms still hold and the printed antipode still works"""
        _, D = subgroup
        assert check_axioms(D.vertical, D.horizontal, D.basis_labels).passed
        assert {corner: D.ideal(corner).dimension for corner in Corner} == {corner: 4 for corner in Corner}
        oracles = family_oracles(D)
        for corner, closed in oracles.phi.items():
            assert D.phi(corner) == closed
        assert check_antipode_identities(D, oracles.antipode).passed

    def test_subgroup_extension_has_no_d2_basis(self, q, subgroup):
        """Central elements with bimodule maps cannot reconstruct M ⊗_N M"""
        extension, D = subgroup
        carrier = extension_carrier(extension)
        M, psi, n = extension.algebra, extension.psi, extension.dimension
        elements = tuple(tuple(carrier.pairs(a)) for a in D.basis())
        maps = tuple(LinearMap.from_function(q, n, n, lambda m, b=b: linear_combination(
            q, n, ((q(1), M.mul(u, psi(M.mul(v, m)))) for u, v in b))) for b in elements)
        left = D2Basis(elements, maps)
        report = depth2_verify(extension, left, right_d2_basis(extension, left), D, cross_check=False)
        assert not report.checks[0].passed
        assert report.get("b_j, c_j are N-central").passed
        assert report.data == {'distributive frobenius': False}

    def test_subgroup_must_be_known(self, q):
        """Subgroup elements are looked up by name"""
        with pytest.raises(AlgebraError):
            subgroup_extension(symmetric_group(3), ("123", "999"), q)
        with pytest.raises(AlgebraError):
            subgroup_extension(symmetric_group(3), ("213",), q)


class TestWeakHopf:
    @pytest.fixture
    def q(self):
        return Field(0)

    def test_group_algebra(self, q):
        """The weak Hopf construction on kZ_2 reproduces the Hopf group double"""
        D = wha_double(group_weak_hopf(cyclic_group(2), q))
        hopf = hopf_group_double(cyclic_group(2), q)
        assert D.vertical == hopf.vertical
        assert D.horizontal == hopf.horizontal
        assert check_oracles(D).passed
        assert family_oracles(D).notes['unimodular']

    def test_groupoid_algebra(self, q):
        """On the pair groupoid it reproduces the groupoid double"""
        G = pair_groupoid(2)
        D = wha_double(groupoid_weak_hopf(G, q))
        groupoid = groupoid_double(G, q)
        assert D.vertical == groupoid.vertical
        assert D.horizontal == groupoid.horizontal
        assert check_oracles(D).passed
