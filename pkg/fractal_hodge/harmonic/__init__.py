from .extension import (ExtensionRule, extension_rule, extension_matrices, boundary_energy, energy_renormalization,
                        extend_zero_form, extend_one_form, harmonic_defects, cell_potential, telescoping_defects)
from .cycles import (CycleBasis, cycle_basis, level_one_cycles, homology_cycles, cycles_independent,
                     cycle_integral_matrix, normalize_by_periods)
from .basis import (TaggedForm, expected_dimension, level_one_harmonic_basis, localize, harmonic_one_basis,
                    gram_matrix, orthogonality_table, orthogonality_violations, localized_periods,
                    cell_cycle_integrals)

__all__ = [
    "ExtensionRule",
    "extension_rule",
    "extension_matrices",
    "boundary_energy",
    "energy_renormalization",
    "extend_zero_form",
    "extend_one_form",
    "harmonic_defects",
    "cell_potential",
    "telescoping_defects",
    "CycleBasis",
    "cycle_basis",
    "level_one_cycles",
    "homology_cycles",
    "cycles_independent",
    "cycle_integral_matrix",
    "normalize_by_periods",
    "TaggedForm",
    "expected_dimension",
    "level_one_harmonic_basis",
    "localize",
    "harmonic_one_basis",
    "gram_matrix",
    "orthogonality_table",
    "orthogonality_violations",
    "localized_periods",
    "cell_cycle_integrals",
    ]
