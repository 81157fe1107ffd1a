import pytest
import sys
import os

from hypothesis import given, settings, strategies as st

# Add the project root directory to Python path
sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from src.double_algebra.models import AlgebraError
from src.double_algebra.exact_linalg import (
    Field, Subspace, LinearMap, kernel, rank, solve_linear, mat_vec, quotient_space, basis_vector,
)


def integer_matrices(max_rows=4, max_cols=4):
    return st.integers(min_value=1, max_value=max_cols).flatmap(
        lambda ncols: st.tuples(
            st.just(ncols),
            st.lists(st.lists(st.integers(min_value=-3, max_value=3), min_size=ncols, max_size=ncols),
                     min_size=1, max_size=max_rows),
        )
    )


class TestField:
    @pytest.fixture
    def q(self):
        return Field(0)

    def test_descriptors(self, q):
        """Descriptors round-trip through parse_descriptor"""
        assert q.descriptor == "Q"
        assert Field(5).descriptor == "Fp:5"
        assert Field.parse_descriptor("Fp:5") == Field(5)
        assert Field.parse_descriptor(" Q ") == q

    def test_invalid_characteristic(self):
        """Composite characteristics are rejected"""
        with pytest.raises(AlgebraError):
            Field(4)
        with pytest.raises(AlgebraError):
            Field.parse_descriptor("R")

    def test_parse_and_format(self, q):
        """Scalar literals parse exactly and print canonically"""
        assert q.format(q.parse("6/4")) == "3/2"
        assert q.format(q.parse("-2")) == "-2"
        # 1/2 is 2 in F_3
        f3 = Field(3)
        assert f3.format(f3.parse("1/2")) == "2"

    def test_bad_literals(self, q):
        """Malformed literals and vanishing denominators raise"""
        with pytest.raises(AlgebraError):
            q.parse("0.5")
        with pytest.raises(AlgebraError):
            q.parse("1/0")
        with pytest.raises(AlgebraError):
            Field(2).parse("1/2")


class TestSolving:
    @pytest.fixture
    def q(self):
        return Field(0)

    def test_scalar_equation(self, q):
        """2x = 4 has the solution x = 2"""
        assert solve_linear(q, [(q(2),)], (q(4),)) == (q(2),)

    def test_inconsistent_system(self, q):
        """x = 1 and x = 2 together have no solution"""
        coeffs = [(q(1),), (q(1),)]
        assert solve_linear(q, coeffs, (q(1), q(2))) is None

    def test_free_variables_are_zero(self, q):
        """Underdetermined systems pick zero for free variables"""
        coeffs = [(q(1), q(1))]
        assert solve_linear(q, coeffs, (q(3),)) == (q(3), q(0))

    def test_kernel_extremes(self, q):
        """The identity has trivial kernel and the zero matrix a full one"""
        identity = [basis_vector(q, 3, k) for k in range(3)]
        assert kernel(q, identity, 3).dimension == 0
        zero = [(q(0),) * 3] * 2
        assert kernel(q, zero, 3).dimension == 3

    def test_finite_field_rank(self):
        """[[1, 1], [1, -1]] is singular only in characteristic 2"""
        for p, expected in ((0, 2), (2, 1), (3, 2)):
            f = Field(p)
            rows = [(f(1), f(1)), (f(1), f(-1))]
            assert rank(f, rows, 2) == expected

    @settings(max_examples=40, deadline=None)
    @given(integer_matrices())
    def test_rank_nullity(self, data):
        """rank plus kernel dimension is the number of columns"""
        q = Field(0)
        ncols, entries = data
        rows = [tuple(q(a) for a in row) for row in entries]
        null = kernel(q, rows, ncols)
        assert rank(q, rows, ncols) + null.dimension == ncols
        for v in null.basis:
            assert not any(mat_vec(q, rows, v))

    @settings(max_examples=40, deadline=None)
    @given(integer_matrices(), st.lists(st.integers(min_value=-3, max_value=3), min_size=4, max_size=4))
    def test_solutions_solve(self, data, x):
        """A consistent right-hand side always gets a genuine solution back"""
        q = Field(0)
        ncols, entries = data
        rows = [tuple(q(a) for a in row) for row in entries]
        target = tuple(q(a) for a in x[:ncols])
        rhs = mat_vec(q, rows, target)
        solution = solve_linear(q, rows, rhs, ncols)
        assert solution is not None
        assert mat_vec(q, rows, solution) == rhs


class TestSubspaces:
    @pytest.fixture
    def q(self):
        return Field(0)

    def test_sum_and_intersection(self, q):
        """Two coordinate planes in k^3 meet in a line"""
        xy = Subspace.span(q, 3, [basis_vector(q, 3, 0), basis_vector(q, 3, 1)])
        yz = Subspace.span(q, 3, [basis_vector(q, 3, 1), basis_vector(q, 3, 2)])
        assert xy.intersection(yz).dimension == 1
        assert xy.intersection(yz).contains(basis_vector(q, 3, 1))
        assert xy.sum(yz).dimension == 3
        assert not xy.contains(basis_vector(q, 3, 2))

    def test_quotient(self, q):
        """Projection kills the relations and the section splits it"""
        diagonal = Subspace.span(q, 2, [(q(1), q(1))])
        quotient = quotient_space(q, 2, diagonal)
        assert quotient.dimension == 1
        assert quotient.project((q(1), q(1))) == (q(0),)
        assert quotient.project(quotient.section((q(5),))) == (q(5),)
        assert quotient.projection_map.compose(quotient.section_map).is_identity()
        assert quotient.projection_map.rank == 1

    def test_quotient_ambient_mismatch(self, q):
        """Relations must live in the ambient space"""
        with pytest.raises(AlgebraError):
            quotient_space(q, 3, Subspace.zero(q, 2))


class TestLinearMap:
    @pytest.fixture
    def q(self):
        return Field(0)

    def test_inverse(self, q):
        """An invertible 2x2 map composes with its inverse to the identity"""
        m = LinearMap.from_rows(q, [(q(1), q(2)), (q(3), q(4))], 2)
        inv = m.inverse()
        assert inv is not None
        assert (m @ inv).is_identity()
        assert (inv @ m).is_identity()

    def test_singular_has_no_inverse(self, q):
        """A rank one map is not invertible"""
        m = LinearMap.from_rows(q, [(q(1), q(2)), (q(2), q(4))], 2)
        assert m.rank == 1
        assert m.inverse() is None
        assert m.kernel().dimension == 1

    def test_apply_length_mismatch(self, q):
        """Applying a map to a vector of the wrong length raises"""
        with pytest.raises(AlgebraError):
            LinearMap.identity(q, 2)((q(1),))
