import pytest
import sys
import os

from hypothesis import given, settings, strategies as st

# Add the project root directory to Python path
sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from src.double_algebra.models import AlgebraError, Corner
from src.double_algebra.exact_linalg import Field, Subspace, basis_vector, zero_vector
from src.double_algebra.algebra_core import (
    Element, ProductTable, induced_map, multiply, relative_tensor, verify_identity,
)
from src.double_algebra.examples import (
    cyclic_group, groupoid_algebra, hopf_group_double, matrix_algebra, matrix_double, pair_groupoid,
)

E11, E12, E21, E22 = range(4)

vectors = st.lists(st.integers(min_value=-3, max_value=3), min_size=4, max_size=4)


class TestProductTable:
    @pytest.fixture
    def q(self):
        return Field(0)

    @pytest.fixture
    def m2(self, q):
        return matrix_algebra(2, q)

    def test_matrix_units(self, q, m2):
        """e12∘e21 = e11 and e21∘e12 = e22"""
        b = lambda k: basis_vector(q, 4, k)
        assert m2.mul(b(E12), b(E21)) == b(E11)
        assert m2.mul(b(E21), b(E12)) == b(E22)
        assert m2.mul(b(E12), b(E12)) == zero_vector(q, 4)

    def test_entrywise_product(self, q):
        """The horizontal product of M_2 is entrywise"""
        D = matrix_double(2, q)
        b = lambda k: basis_vector(q, 4, k)
        assert D.hmul(b(E12), b(E12)) == b(E12)
        assert D.hmul(b(E12), b(E21)) == zero_vector(q, 4)

    def test_center_and_centralizer(self, q, m2):
        """Z(M_2) is the scalars and the diagonal is its own centralizer"""
        center = m2.center()
        assert center.dimension == 1
        assert center.contains(m2.unit)
        diagonal = Subspace.span(q, 4, [basis_vector(q, 4, E11), basis_vector(q, 4, E22)])
        centralizer = m2.centralizer(diagonal)
        assert centralizer == diagonal

    def test_inverse(self, q, m2):
        """e11 + 2e22 has inverse e11 + 1/2 e22 and e11 has none"""
        x = (q(1), q(0), q(0), q(2))
        assert m2.inverse(x) == (q(1), q(0), q(0), q.fraction(1, 2))
        assert m2.inverse(basis_vector(q, 4, E11)) is None

    def test_opposite_is_an_involution(self, m2):
        """Taking the opposite twice gives back the table"""
        assert not m2.is_commutative()
        assert m2.opposite().opposite() == m2

    def test_non_associative_rejected(self, q):
        """b1(b1b2) differs from (b1b1)b2"""
        table = {(1, 1): 2, (1, 2): 0}

        def rule(i, j):
            if i == 0:
                return basis_vector(q, 3, j)
            if j == 0:
                return basis_vector(q, 3, i)
            return basis_vector(q, 3, table[(i, j)]) if (i, j) in table else zero_vector(q, 3)
        with pytest.raises(AlgebraError):
            ProductTable.from_rule(q, 3, rule, basis_vector(q, 3, 0))

    def test_wrong_unit_rejected(self, q, m2):
        """A non-unit passed as unit is rejected"""
        with pytest.raises(AlgebraError):
            ProductTable.from_dense(q, 4, m2.dense_constants(), basis_vector(q, 4, E11))

    def test_multiply_mismatch(self, q, m2):
        """Elements of another algebra cannot be multiplied"""
        x = Element(basis_vector(q, 4, E11), m2.name)
        y = Element(basis_vector(q, 4, E11), "other")
        assert multiply(m2, x, x).coordinates == basis_vector(q, 4, E11)
        with pytest.raises(AlgebraError):
            multiply(m2, x, y)

    @settings(max_examples=30, deadline=None)
    @given(st.sampled_from(["matrix", "groupoid"]), st.lists(vectors, min_size=3, max_size=3))
    def test_unit_and_associativity(self, family, xyz):
        """Random elements of M_2 and of the pair groupoid algebra satisfy 1x = x = x1 and (xy)z = x(yz)"""
        q = Field(0)
        A = matrix_algebra(2, q) if family == "matrix" else groupoid_algebra(pair_groupoid(2), q)
        x, y, z = (tuple(q(a) for a in v) for v in xyz)
        assert A.mul(A.unit, x) == x
        assert A.mul(x, A.unit) == x
        assert A.mul(A.mul(x, y), z) == A.mul(x, A.mul(y, z))


class TestVerifyIdentity:
    def test_first_failure_is_the_witness(self):
        """Basis pairs are visited lexicographically"""
        q = Field(0)
        m2 = matrix_algebra(2, q)
        labels = ("e11", "e12", "e21", "e22")
        result = verify_identity("commutative", q, 2, 4, m2.mul, lambda a, b: m2.mul(b, a), labels=labels)
        assert not result.passed
        assert result.witness.describe() == "(e11, e12)"
        assert result.witness.lhs == ("0", "1", "0", "0")

    def test_passing_identity(self):
        """The unit law holds everywhere"""
        q = Field(0)
        m2 = matrix_algebra(2, q)
        result = verify_identity("unit", q, 1, 4, lambda a: m2.mul(m2.unit, a), lambda a: a)
        assert result.passed
        assert result.witness is None


class TestRelativeTensor:
    @pytest.fixture
    def q(self):
        return Field(0)

    def test_matrix_tensor_squares(self, q):
        """A ⊗_B A and A ⊗_L A of M_2 both have dimension 8"""
        D = matrix_double(2, q)
        assert D.tensor(Corner.B).dimension == 8
        assert D.tensor(Corner.L).dimension == 8
        assert D.tensor(Corner.B).check_middle_linearity()

    def test_tensor_over_scalars(self, q):
        """Over k·1 nothing is identified"""
        m2 = matrix_algebra(2, q)
        scalars = Subspace.span(q, 4, [m2.unit])
        assert relative_tensor(q, 4, m2, m2, scalars).dimension == 16

    def test_tensor_over_full_algebra(self, q):
        """M_2 ⊗_{M_2} M_2 is M_2"""
        m2 = matrix_algebra(2, q)
        assert relative_tensor(q, 4, m2, m2, Subspace.full(q, 4)).dimension == 4

    def test_base_must_be_subalgebra(self, q):
        """A non-unital subspace is rejected"""
        m2 = matrix_algebra(2, q)
        line = Subspace.span(q, 4, [basis_vector(q, 4, E12)])
        with pytest.raises(AlgebraError):
            relative_tensor(q, 4, m2, m2, line)

    def test_multiplication_is_well_defined(self, q):
        """The own product factors through A ⊗_B A"""
        D = matrix_double(2, q)
        tensor = D.tensor(Corner.B)
        basis = D.basis()
        mu, well_defined = induced_map(tensor, 4, lambda p, r: D.hmul(basis[p], basis[r]))
        assert well_defined
        assert mu.rank == 4

    def test_triple_tensor(self, q):
        """For kZ_2 the base B is the scalars, so the triple tensor has dimension 8"""
        D = hopf_group_double(cyclic_group(2), q)
        tensor = D.tensor(Corner.B)
        assert tensor.dimension == 4
        assert tensor.iterate().dimension == 8
