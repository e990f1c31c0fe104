"""Semiclassical expansions of quantum-evolved Wick observables on C^d.

The package integrates the classical flow of a time-dependent quadratic
Hamiltonian, expands the evolved observable with two independent
engines (nested time integrals and an operator exponential), and checks
both against a brute-force truncated Fock evolution.
"""

from .errors import (
    DimensionMismatchError,
    LeakageError,
    ScenarioError,
    SymplecticityError,
)
from .expansions import (
    ExpansionResult,
    Lambda_of_map,
    Lambda_t,
    check_lambda_is_derivative_of_Lambda,
    dyson_expand,
    exp_expand,
    lambda_s,
    lambda_s_via_bracket,
)
from .flow import (
    FlowResult,
    QuadraticHamiltonian,
    UnitaryPath,
    integrate_flow,
    integrate_u_alpha,
    v_vector,
)
from .fock import (
    FockOperator,
    FockSpace,
    QuantumFlowResult,
    check_estimates,
    check_growth_bound,
    conjugate_observable,
    field_and_weyl,
    gamma_u,
    quantum_flow,
    wick_quantize,
    wick_quantize_slow,
)
from .scenario import Scenario
from .symbols import (
    PolySymbol,
    SymTensor,
    apply_second_order_operator,
    beta_matrix_from_tensor,
    beta_tensor_from_matrix,
    contraction,
    laplacian,
    linear_form_bra,
    linear_form_ket,
    poisson_bracket,
    preset_symbol,
    random_symbol,
    squeezing_hamiltonian_symbol,
    wick_product_symbol,
)
from .symplectic import (
    RLinearMap,
    SymplecticityReport,
    SymplectoDecomposition,
    adjoint,
    compose,
    decompose,
    exp_antilinear,
    is_symplectomorphism,
    random_symplectomorphism,
)
from .weylwick import (
    bogoliubov_implementer,
    check_weyl_conjugation,
    exp_lambda_of_map,
    gaussian_symplectic_ft,
    weyl_from_wick,
    wick_from_weyl,
)

__version__ = "0.1.0"
