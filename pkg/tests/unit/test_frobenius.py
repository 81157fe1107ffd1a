import pytest
import sys
import os

# Add the project root directory to Python path
sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from src.double_algebra.models import Corner
from src.double_algebra.exact_linalg import Field, basis_vector, scale
from src.double_algebra.frobenius import (
    check_dual_basis, check_galois_identities, comultiplication, frobenius_corners, frobenius_index,
    galois_map, is_frobenius, maschke_report, nakayama, separating_idempotent, solve_dual_basis,
    split_extension,
)
from src.double_algebra.examples import (
    commutative_double, cyclic_group, hopf_group_double, matrix_double, symmetric_group, truncated_polynomial,
)

E11, E12, E21, E22 = range(4)


class TestDualBases:
    @pytest.fixture
    def q(self):
        return Field(0)

    @pytest.fixture
    def D(self, q):
        return matrix_double(2, q)

    def test_all_corners_frobenius(self, D):
        """M_2 has a dual basis for each base map"""
        assert is_frobenius(D)
        assert all(frobenius_corners(D).values())

    @pytest.mark.parametrize("corner", list(Corner))
    def test_solved_dual_basis_checks(self, D, corner):
        """The solved representative satisfies both dual basis identities"""
        dual = solve_dual_basis(D, corner)
        assert check_dual_basis(D, corner, dual.pairs).passed

    def test_closed_form_dual_bases(self, q, D):
        """Σ e_jk ⊗ e_kj for L and Σ e_jk ⊗ e_jk for B give the solved classes"""
        b = lambda k: basis_vector(q, 4, k)
        transposed = [(b(2 * j + k), b(2 * k + j)) for j in range(2) for k in range(2)]
        diagonal = [(b(p), b(p)) for p in range(4)]
        assert check_dual_basis(D, Corner.L, transposed).passed
        assert check_dual_basis(D, Corner.B, diagonal).passed
        assert D.tensor(Corner.L).project_pairs(transposed) == solve_dual_basis(D, Corner.L).element
        assert D.tensor(Corner.B).project_pairs(diagonal) == solve_dual_basis(D, Corner.B).element

    def test_wrong_dual_basis_fails(self, q, D):
        """Dropping a term breaks the identities"""
        b = lambda k: basis_vector(q, 4, k)
        assert not check_dual_basis(D, Corner.B, [(b(p), b(p)) for p in range(3)]).passed

    def test_commutative_dual_basis(self, q):
        """With ∘ = ⋆ every base map is the identity and 1 ⊗ 1 is a dual basis"""
        D = commutative_double(truncated_polynomial(2, q), ["1", "x"])
        one = basis_vector(q, 2, 0)
        assert is_frobenius(D)
        for corner in Corner:
            assert check_dual_basis(D, corner, [(one, one)]).passed


class TestComultiplication:
    @pytest.fixture
    def q(self):
        return Field(0)

    @pytest.fixture
    def D(self, q):
        return matrix_double(2, q)

    def test_delta_b(self, q, D):
        """Δ_B(e11) is the class of e11 ⊗ e11"""
        delta = comultiplication(D, Corner.B)
        e11 = basis_vector(q, 4, E11)
        assert delta(e11) == D.tensor(Corner.B).project_pair(e11, e11)

    @pytest.mark.parametrize("corner", list(Corner))
    def test_bialgebroid_checks(self, D, corner):
        """Coassociativity, counit and the Takeuchi property hold on every corner"""
        assert comultiplication(D, corner).report.passed

    @pytest.mark.parametrize("corner", list(Corner))
    def test_nakayama(self, D, corner):
        """The Nakayama map twists the form and matches the base-map composite"""
        assert nakayama(D, corner).report.passed


class TestGalois:
    @pytest.fixture
    def q(self):
        return Field(0)

    def test_matrix_galois(self, q):
        """The Galois identities hold for M_2 and the maps are mutually inverse"""
        D = matrix_double(2, q)
        report = check_galois_identities(D)
        assert report.passed
        assert report.data == {'identities': True, 'invertible': True}

    def test_galois_map_well_defined(self, q):
        """Γ_RB is well defined and invertible for M_2"""
        D = matrix_double(2, q)
        forward = galois_map(D, Corner.R, Corner.B)
        assert forward.well_defined
        assert forward.matrix.inverse() is not None

    def test_group_galois(self, q):
        """kZ_2 satisfies the Galois identities"""
        D = hopf_group_double(cyclic_group(2), q)
        assert check_galois_identities(D).data['identities']


class TestIndex:
    @pytest.fixture
    def q(self):
        return Field(0)

    @pytest.mark.parametrize("n", [1, 2])
    def test_matrix_index(self, q, n):
        """Ind Φ_L of M_n is n·e"""
        D = matrix_double(n, q)
        indices, report = frobenius_index(D)
        assert report.passed
        assert indices[Corner.L] == scale(q(n), D.e)

    @pytest.mark.parametrize("group, order", [(cyclic_group(2), 2), (symmetric_group(3), 6)])
    def test_group_index(self, q, group, order):
        """Ind Φ_L of kG is |G|·e"""
        D = hopf_group_double(group, q)
        indices, report = frobenius_index(D)
        assert report.passed
        assert indices[Corner.L] == scale(q(order), D.e)


class TestMaschke:
    def test_matrix_over_q(self):
        """Both units of M_2 are regular over Q"""
        D = matrix_double(2, Field(0))
        report = maschke_report(D)
        assert report.passed
        assert report.data['V regular']
        assert report.data['H regular']

    def test_group_over_f2(self):
        """Over F_2 the order of Z_2 vanishes and all seven conditions fail together"""
        D = hopf_group_double(cyclic_group(2), Field(2))
        report = maschke_report(D)
        assert report.passed
        assert not report.data['V regular']
        vertical = [c for c in report.checks if c.name.startswith("V (")]
        assert len(vertical) == 7
        assert not any(c.passed for c in vertical)

    def test_group_over_f3(self):
        """Over F_3 the order of Z_2 is invertible"""
        D = hopf_group_double(cyclic_group(2), Field(3))
        report = maschke_report(D)
        assert report.data['V regular']
        assert separating_idempotent(D, Corner.L) is not None
        assert split_extension(D, Corner.L) is not None

