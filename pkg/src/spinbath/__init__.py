"""Exact reduced dynamics of a qubit in a thermal spin environment.

The package builds the thermodynamic-limit qubit channel of a central-spin
model with an exchange-coupled bath, and on top of it two diagnostics:
a Bures-angle backflow measure of non-Markovianity and the quantum Fisher
information of product and entangled probe protocols.
"""

from .bath import (ModeAmplitudes, SpinBathParams, ThermalWeights,
                   XStateIngredients, channel_at, mode_amplitudes_closed,
                   mode_amplitudes_ode, qfi_ingredients, thermal_weights)
from .bloch import (AffineQubitChannel, angle_between, apply_channel,
                    bloch_to_density, density_to_bloch, identity_channel,
                    is_unital, maximally_mixed_image, validate_density)
from .damping import amplitude_damping
from .errors import ConsistencyError, DomainError
from .fisher import (QFISeries, derivative_series, entangled_eigensystem,
                     entangled_state, probe_derivative, qfi_entangled,
                     qfi_product_closed, qfi_spectral, qfi_time_series)
from .linalg import (EigenSystem, hermitian_eigendecompose, psd_sqrt,
                     rk4_linear)
from .measures import (BuresSeries, NMResult, bures_angle,
                       bures_angle_diagonal, bures_angle_trajectory,
                       bures_series, nm_measure, uhlmann_fidelity)

__version__ = "0.1.0"

__all__ = [
    "AffineQubitChannel", "BuresSeries", "ConsistencyError", "DomainError",
    "EigenSystem", "ModeAmplitudes", "NMResult", "QFISeries",
    "SpinBathParams", "ThermalWeights", "XStateIngredients",
    "amplitude_damping", "angle_between", "apply_channel", "bloch_to_density",
    "bures_angle", "bures_angle_diagonal", "bures_angle_trajectory",
    "bures_series", "channel_at", "density_to_bloch", "derivative_series",
    "entangled_eigensystem", "entangled_state", "hermitian_eigendecompose",
    "identity_channel", "is_unital", "maximally_mixed_image",
    "mode_amplitudes_closed", "mode_amplitudes_ode", "nm_measure",
    "probe_derivative", "psd_sqrt", "qfi_entangled", "qfi_ingredients",
    "qfi_product_closed", "qfi_spectral", "qfi_time_series", "rk4_linear",
    "thermal_weights", "uhlmann_fidelity", "validate_density",
]
