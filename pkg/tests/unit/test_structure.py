import pytest
import sys
import os

# Add the project root directory to Python path
sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from src.double_algebra.models import Corner
from src.double_algebra.exact_linalg import Field
from src.double_algebra.double_core import check_axioms
from src.double_algebra.structure import (
    PAIRINGS, check_comult_multiplicative, check_distributivity, extract_hopf_algebroids, frobenius_integrals,
    hgd_round_trip, pairings, takeuchi_double, takeuchi_subspace,
)
from src.double_algebra.examples import cyclic_group, hopf_group_double, matrix_double
from src.double_algebra.instance_file import load


class TestDistributivity:
    @pytest.fixture
    def q(self):
        return Field(0)

    def test_matrix_is_distributive(self, q):
        """All four distributive laws hold for M_2"""
        result = check_distributivity(matrix_double(2, q))
        assert result.distributive
        assert result.laws == {'B': True, 'L': True, 'T': True, 'R': True}
        assert result.report.passed

    def test_group_is_distributive(self, q):
        """kZ_2 with the convolution product is distributive"""
        assert check_distributivity(hopf_group_double(cyclic_group(2), q)).distributive

    def test_multiplicative_comultiplications(self, q):
        """Each Δ_X is multiplicative and lands in the Takeuchi product"""
        report = check_comult_multiplicative(matrix_double(2, q))
        assert report.passed
        assert report.data['multiplicative'] == {'B': True, 'T': True, 'L': True, 'R': True}
        assert report.data['antipode']
        assert report.data['distributive']


class TestTakeuchi:
    @pytest.fixture
    def q(self):
        return Field(0)

    def test_trivial(self):
        """k ×_k k is k"""
        D = load('tests/test_data/trivial1.json').double()
        double, report = takeuchi_double(D)
        assert report.passed
        assert double.dimension == 1

    def test_group(self, q):
        """For kZ_2 the base is the scalars and A ×_B A is all of A ⊗ A"""
        D = hopf_group_double(cyclic_group(2), q)
        double, report = takeuchi_double(D)
        assert report.passed
        assert report.data == {'dimension': 4, 'tensor dimension': 4}
        assert check_axioms(double.vertical, double.horizontal).passed

    def test_matrix(self, q):
        """The Takeuchi double of M_2 is a double algebra whose base maps match"""
        D = matrix_double(2, q)
        double, report = takeuchi_double(D)
        assert report.passed
        assert report.data['tensor dimension'] == 8
        assert takeuchi_subspace(D, Corner.B).well_defined
        assert double.dimension == report.data['dimension']


class TestHopfAlgebroids:
    @pytest.fixture
    def D(self):
        return matrix_double(2, Field(0))

    def test_extraction(self, D):
        """(V_B, S, V_T) and (H_L, S^-1, H_R) satisfy the Hopf algebroid axioms"""
        algebroids = extract_hopf_algebroids(D)
        assert algebroids.report.passed
        assert algebroids.vertical.left.counit == Corner.B
        assert algebroids.horizontal.right.counit == Corner.R
        assert algebroids.vertical.left.hand == "left"

    def test_round_trip(self, D):
        """The convolution rebuilt from the Hopf algebroid data is ⋆"""
        report = hgd_round_trip(D)
        assert report.passed
        assert report.data == {'entries': 16, 'rebuilt': True}


class TestPairings:
    def test_matrix_pairings(self):
        """All four pairings of M_2 are nondegenerate and the pairing laws hold"""
        D = matrix_double(2, Field(0))
        result, report = pairings(D)
        assert set(result) == set(PAIRINGS)
        assert all(p.nondegenerate for p in result.values())
        assert report.passed


class TestFrobeniusIntegrals:
    def test_matrix_integrals(self):
        """The units are invertible in their base ideals and the dualities close up"""
        D = matrix_double(2, Field(0))
        integrals = frobenius_integrals(D)
        assert integrals.report.passed
        assert D.i in integrals.invertible[Corner.T]
        assert D.e in integrals.invertible[Corner.L]

    def test_explicit_candidates(self):
        """Non-invertible candidates are filtered out"""
        q = Field(0)
        D = matrix_double(2, q)
        e11 = (q(1), q(0), q(0), q(0))
        integrals = frobenius_integrals(D, {Corner.L: [D.e, e11]})
        assert integrals.invertible[Corner.L] == [D.e]
