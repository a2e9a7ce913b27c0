from .forms import (KForm, Chain, WeightSystem, SimplexWeights, assemble_weights, sign_incidence, inner_product,
                    norm_squared, boundary, integrate, parity_violations)
from .operators import (SparseOperator, assemble_d, assemble_delta, laplacian, energy, energy_form,
                        harmonic_space, hodge_dimensions, is_connected, spectrum, verify_stokes, StokesCheck)
from .hodge import HodgeSplit, hodge_decompose

__all__ = [
    "KForm",
    "Chain",
    "WeightSystem",
    "SimplexWeights",
    "assemble_weights",
    "sign_incidence",
    "inner_product",
    "norm_squared",
    "boundary",
    "integrate",
    "parity_violations",
    "SparseOperator",
    "assemble_d",
    "assemble_delta",
    "laplacian",
    "energy",
    "energy_form",
    "harmonic_space",
    "hodge_dimensions",
    "is_connected",
    "spectrum",
    "verify_stokes",
    "StokesCheck",
    "HodgeSplit",
    "hodge_decompose",
    ]
