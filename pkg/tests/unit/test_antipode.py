import pytest
import sys
import os

# Add the project root directory to Python path
sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from src.double_algebra.models import Corner, RegularAction, TransposeSide
from src.double_algebra.exact_linalg import Field, LinearMap, basis_vector
from src.double_algebra.antipode import (
    antipode_criteria, antipode_property_suite, antipode_solution_space, bullet_map, check_antipode_conditions,
    check_antipode_identities, check_corner_inverses, convolution_reconstruction, solve_antipode, transpose_action,
    transpose_endo,
)
from src.double_algebra.examples import cyclic_group, family_oracles, hopf_group_double, matrix_double

E11, E12, E21, E22 = range(4)


class TestTransposes:
    @pytest.fixture
    def q(self):
        return Field(0)

    @pytest.fixture
    def D(self, q):
        return matrix_double(2, q)

    def test_transpose_of_right_multiplication(self, q, D):
        """T^<_{e11}(e) = e11"""
        transposed = transpose_action(D, RegularAction.T, TransposeSide.LEFT, basis_vector(q, 4, E11))
        assert transposed.adjoint
        assert transposed.matrix(D.e) == basis_vector(q, 4, E11)

    @pytest.mark.parametrize("action", list(RegularAction))
    @pytest.mark.parametrize("side", list(TransposeSide))
    def test_adjointness(self, q, D, action, side):
        """Every solved transpose is adjoint to the action it came from"""
        assert transpose_action(D, action, side, basis_vector(q, 4, E12)).adjoint

    def test_transpose_of_identity(self, q, D):
        """The identity is self-transpose"""
        identity = LinearMap.identity(q, 4)
        assert transpose_endo(D, Corner.B, identity, TransposeSide.LEFT) == identity

    def test_corner_inverses(self, D):
        """The four inverse pairs among the bullet maps hold for M_2"""
        assert check_corner_inverses(D).passed


class TestAntipode:
    @pytest.fixture
    def q(self):
        return Field(0)

    @pytest.fixture
    def D(self, q):
        return matrix_double(2, q)

    def test_matrix_antipode_is_transpose(self, q, D):
        """S(e_jk) = e_kj"""
        S = solve_antipode(D)
        assert S is not None
        b = lambda k: basis_vector(q, 4, k)
        assert S(b(E12)) == b(E21)
        assert S(b(E11)) == b(E11)
        assert S.matrix == family_oracles(D).antipode
        assert S.report.passed

    def test_inverse(self, D):
        """S^-1 = L^>_•(i) inverts S"""
        S = solve_antipode(D)
        assert S.matrix.compose(S.inverse).is_identity()
        assert S.matrix == bullet_map(D, RegularAction.T, TransposeSide.LEFT)

    def test_uniqueness(self, D):
        """The homogeneous Φ_B law system has only the zero solution"""
        assert antipode_solution_space(D).dimension == 0

    def test_identities_reject_identity_map(self, q, D):
        """The identity map is not an antipode of M_2"""
        assert not check_antipode_identities(D, LinearMap.identity(q, 4)).passed

    def test_properties(self, D):
        """S is an anti-automorphism of both products and squares to the identity"""
        S = solve_antipode(D)
        report = antipode_property_suite(D, S)
        assert report.passed
        assert report.data['S² = id']

    def test_reconstruction(self, D):
        """⋆ is recovered from ∘, the base maps, the T dual basis and S"""
        assert convolution_reconstruction(D, solve_antipode(D)).passed

    def test_criteria(self, D):
        """Invariance of the regular actions agrees with existence of S"""
        report = antipode_criteria(D)
        assert report.passed
        assert report.data['antipode']

    def test_sufficient_conditions(self, D):
        """The quantifier-free conditions hold for M_2"""
        report = check_antipode_conditions(D)
        assert report.passed
        assert report.data == {'conditions hold': True, 'antipode': True}

    def test_group_antipode_is_inversion(self, q):
        """For kZ_3 the antipode sends g to g²"""
        D = hopf_group_double(cyclic_group(3), q)
        S = solve_antipode(D)
        assert S is not None
        assert S(basis_vector(q, 3, 1)) == basis_vector(q, 3, 2)
        assert antipode_property_suite(D, S).passed
