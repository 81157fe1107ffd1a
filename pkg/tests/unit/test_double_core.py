import pytest
import sys
import os

# Add the project root directory to Python path
sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from src.double_algebra.models import AlgebraError, AxiomViolation, Corner, PreconditionError, Symmetry
from src.double_algebra.exact_linalg import Field, basis_vector
from src.double_algebra.double_core import (
    AXIOM_PERMUTATION, RESTRICTIONS, DoubleAlgebra, base_maps, check_axioms, check_base_lemmas, forms_nondegenerate,
    integral_space, invertibility_in_base, nakayama_on_base, symmetry,
)
from src.double_algebra.examples import (
    commutative_double, cyclic_group, groupoid_double, hopf_group_double, matrix_algebra, matrix_double, pair_groupoid,
    truncated_polynomial,
)
from src.double_algebra.instance_file import load

E11, E12, E21, E22 = range(4)
LABELS = ("e11", "e12", "e21", "e22")


class TestAxioms:
    @pytest.fixture
    def q(self):
        return Field(0)

    @pytest.fixture
    def broken(self):
        return load('tests/test_data/broken_a1.json').double(check=False)

    def test_matrix_double_passes(self, q):
        """M_2 with matrix and entrywise products satisfies all eight axioms"""
        D = matrix_double(2, q)
        report = check_axioms(D.vertical, D.horizontal, D.basis_labels)
        assert report.passed
        assert report.forms_agree

    def test_matrix_product_twice(self, q):
        """∘ = ⋆ = matrix product fails A2, A4, A6 and A8 first at (e11, e12)"""
        m2 = matrix_algebra(2, q)
        report = check_axioms(m2, m2, LABELS)
        assert report.failed_axioms() == [2, 4, 6, 8]
        first = report.first_failure()
        assert first.name == "A2"
        assert first.witness.describe() == "(e11, e12)"
        assert report.forms_agree

    def test_build_raises_with_witness(self, q):
        """build refuses a failing pair and names the first failing axiom"""
        m2 = matrix_algebra(2, q)
        with pytest.raises(AxiomViolation) as info:
            DoubleAlgebra.build(m2, m2, "M_2 twice", LABELS)
        assert str(info.value) == "A2 fails at (e11, e12)"
        assert info.value.report.failed_axioms() == [2, 4, 6, 8]

    def test_broken_instance(self, broken):
        """V = M_2^op against H = M_2 fails A1 first at (e11, e12)"""
        report = check_axioms(broken.vertical, broken.horizontal, broken.basis_labels)
        assert report.failed_axioms() == [1, 3, 5, 7]
        assert report.first_failure().witness.describe() == "(e11, e12)"

    def test_dimension_mismatch(self, q):
        """Tables of different dimension cannot form a double algebra"""
        with pytest.raises(AlgebraError):
            check_axioms(matrix_algebra(1, q), matrix_algebra(2, q))


class TestSymmetry:
    @pytest.fixture
    def q(self):
        return Field(0)

    @pytest.mark.parametrize("which", list(Symmetry))
    def test_involution(self, q, which):
        """Each symmetry applied twice is the identity"""
        D = matrix_double(2, q)
        image = symmetry(D, which)
        assert image != D
        assert symmetry(image, which) == D

    @pytest.mark.parametrize("which", list(Symmetry))
    def test_axiom_permutation(self, which):
        """Failing axioms of a symmetric image are the permuted failing axioms"""
        broken = load('tests/test_data/broken_a1.json').double(check=False)
        original = check_axioms(broken.vertical, broken.horizontal).failed_axioms()
        image = symmetry(broken, which)
        failed = check_axioms(image.vertical, image.horizontal).failed_axioms()
        assert failed == sorted(AXIOM_PERMUTATION[which][k] for k in original)

    def test_labels(self, q):
        """Symmetric images carry a suffix on the label"""
        D = matrix_double(2, q)
        assert symmetry(D, Symmetry.DUAL).label == "M_2^D"
        assert symmetry(D, Symmetry.OP).label == "M_2_op"
        assert symmetry(D, Symmetry.COOP).label == "M_2_coop"


class TestBaseMaps:
    @pytest.fixture
    def q(self):
        return Field(0)

    @pytest.fixture
    def D(self, q):
        return matrix_double(2, q)

    def test_matrix_base_maps(self, q, D):
        """Φ_B sums a row, Φ_L keeps the diagonal"""
        b = lambda k: basis_vector(q, 4, k)
        maps = base_maps(D)
        assert maps[Corner.B](b(E11)) == (q(1), q(1), q(0), q(0))
        assert maps[Corner.T](b(E11)) == (q(1), q(0), q(1), q(0))
        assert maps[Corner.L](b(E11)) == b(E11)
        assert not any(maps[Corner.L](b(E12)))
        assert maps.report.passed
        assert maps.report.data == {'L': 2, 'R': 2, 'B': 2, 'T': 2}

    def test_base_lemmas(self, D):
        """M_2 is connected but not coconnected"""
        report = check_base_lemmas(D)
        assert report.passed
        assert report.data['dim B∩T'] == 1
        assert report.data['dim L∩R'] == 2
        assert report.data['connected']
        assert not report.data['coconnected']

    @pytest.mark.parametrize("build", [
        lambda q: matrix_double(2, q),
        lambda q: hopf_group_double(cyclic_group(2), q),
        lambda q: groupoid_double(pair_groupoid(2), q),
        lambda q: commutative_double(truncated_polynomial(2, q)),
    ])
    def test_restrictions_invert(self, q, build):
        """Each base map restricted to a sharing ideal is inverted by the base map of that ideal"""
        report = check_base_lemmas(build(q))
        inverses = [check for check in report.checks if "is the identity on" in check.name]
        assert len(inverses) == len(RESTRICTIONS)
        assert all(check.passed for check in inverses)
        assert report.passed

    def test_group_base_ideals(self, q):
        """For kZ_2 the base ideals are k·e and k·i"""
        D = hopf_group_double(cyclic_group(2), q)
        for corner in (Corner.L, Corner.R):
            assert D.ideal(corner).dimension == 1
            assert D.ideal(corner).contains(D.e)
        for corner in (Corner.B, Corner.T):
            assert D.ideal(corner).dimension == 1
            assert D.ideal(corner).contains(D.i)
        assert check_base_lemmas(D).passed

    def test_forms_nondegenerate(self, D):
        """All four forms of M_2 are nondegenerate"""
        assert all(forms_nondegenerate(D).values())

    @pytest.mark.parametrize("corner", list(Corner))
    def test_integral_sandwich(self, D, corner):
        """Each base ideal sits inside its integrals, which sit in the centralizer"""
        integrals = integral_space(D, corner)
        assert integrals.sandwich
        assert integrals.equals_base

    def test_nakayama_on_base(self, D):
        """The base-map composites twist the forms and are automorphisms"""
        nakayama = nakayama_on_base(D)
        assert nakayama.report.passed
        assert set(nakayama.maps) == set(Corner)


class TestInvertibilityInBase:
    @pytest.fixture
    def q(self):
        return Field(0)

    @pytest.fixture
    def D(self, q):
        return matrix_double(2, q)

    def test_diagonal_inverse(self, q, D):
        """e11 + 2e22 in L has inverse e11 + 1/2 e22"""
        x = (q(1), q(0), q(0), q(2))
        assert invertibility_in_base(D, x, Corner.L) == (q(1), q(0), q(0), q.fraction(1, 2))

    def test_not_invertible(self, q, D):
        """e11 lies in L but has no inverse there"""
        assert invertibility_in_base(D, basis_vector(q, 4, E11), Corner.L) is None

    def test_outside_the_ideal(self, q, D):
        """e12 is not in L"""
        with pytest.raises(PreconditionError):
            invertibility_in_base(D, basis_vector(q, 4, E12), Corner.L)

    def test_horizontal_unit_in_b(self, q):
        """i is the unit of B under ⋆ and so is its own inverse"""
        D = hopf_group_double(cyclic_group(2), q)
        assert invertibility_in_base(D, D.i, Corner.B) == D.i
