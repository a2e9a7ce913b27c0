from .energy import (LABEL_TO_MAP, BOTTOM_LABELS, ENERGY_BASIS, SWAP, KusuokaModel, to_map_word, cell_energy,
                     cell_boundary_values, energy_measure, kusuoka_measure, energy_pairing, corner_triple,
                     middle_triple, derive_transfer, transfer_matrix, derived_model, printed_model, swap_conjugate,
                     brute_force_cell_energies, basis_independence)
from .growth import (NuOmega, SpectralGrowth, TwoTermFit, nu_omega_n, nu_omega_table, direct_omega,
                     spectral_growth, symmetric_restriction, two_term_fit, discrepancy_report)
from .balanced import (SAMPLE_FUNCTIONS, EdgeSegment, integrate_balanced, delta2_at, delta2_balanced,
                       d1_renormalized, verify_prop_4_2, verify_prop_4_2_literal, laplacian_two_ratio,
                       delta2_prime_kusuoka, successive_ratios)

__all__ = [
    "SAMPLE_FUNCTIONS",
    "LABEL_TO_MAP",
    "BOTTOM_LABELS",
    "ENERGY_BASIS",
    "SWAP",
    "KusuokaModel",
    "to_map_word",
    "cell_energy",
    "cell_boundary_values",
    "energy_measure",
    "kusuoka_measure",
    "energy_pairing",
    "corner_triple",
    "middle_triple",
    "derive_transfer",
    "transfer_matrix",
    "derived_model",
    "printed_model",
    "swap_conjugate",
    "brute_force_cell_energies",
    "basis_independence",
    "NuOmega",
    "SpectralGrowth",
    "TwoTermFit",
    "nu_omega_n",
    "nu_omega_table",
    "direct_omega",
    "spectral_growth",
    "symmetric_restriction",
    "two_term_fit",
    "discrepancy_report",
    "EdgeSegment",
    "integrate_balanced",
    "delta2_at",
    "delta2_balanced",
    "d1_renormalized",
    "verify_prop_4_2",
    "verify_prop_4_2_literal",
    "laplacian_two_ratio",
    "delta2_prime_kusuoka",
    "successive_ratios",
    ]
