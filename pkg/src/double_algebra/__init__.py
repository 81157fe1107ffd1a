from .models import (
    Corner, Symmetry, RegularAction, TransposeSide, Suite,
    AlgebraError, AxiomViolation, PreconditionError, InstanceFormatError,
    Witness, CheckResult, Report, AxiomReport,
)
from .exact_linalg import Field, Subspace, LinearMap
from .algebra_core import ProductTable, RelativeTensor, relative_tensor
from .double_core import DoubleAlgebra, check_axioms, base_maps, check_base_lemmas, symmetry
from .frobenius import (
    solve_dual_basis, is_frobenius, comultiplication, galois_map, check_galois_identities,
    frobenius_index, maschke_report,
)
from .antipode import solve_antipode, antipode_property_suite, check_antipode_conditions
from .structure import (
    check_distributivity, check_comult_multiplicative, takeuchi_double, extract_hopf_algebroids,
    pairings, frobenius_integrals, hgd_round_trip,
)
from .examples import (
    commutative_double, matrix_double, groupoid_double, double_category_double,
    frobenius_extension_double, depth2_verify, hopf_group_double, wha_double,
)
from .instance_file import InstanceFile

__all__ = [
    'Corner', 'Symmetry', 'RegularAction', 'TransposeSide', 'Suite',
    'AlgebraError', 'AxiomViolation', 'PreconditionError', 'InstanceFormatError',
    'Witness', 'CheckResult', 'Report', 'AxiomReport',
    'Field', 'Subspace', 'LinearMap',
    'ProductTable', 'RelativeTensor', 'relative_tensor',
    'DoubleAlgebra', 'check_axioms', 'base_maps', 'check_base_lemmas', 'symmetry',
    'solve_dual_basis', 'is_frobenius', 'comultiplication', 'galois_map', 'check_galois_identities',
    'frobenius_index', 'maschke_report',
    'solve_antipode', 'antipode_property_suite', 'check_antipode_conditions',
    'check_distributivity', 'check_comult_multiplicative', 'takeuchi_double', 'extract_hopf_algebroids',
    'pairings', 'frobenius_integrals', 'hgd_round_trip',
    'commutative_double', 'matrix_double', 'groupoid_double', 'double_category_double',
    'frobenius_extension_double', 'depth2_verify', 'hopf_group_double', 'wha_double',
    'InstanceFile',
]
