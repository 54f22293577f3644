"""Exact spectra of zigzag and armchair nanotube tight-binding models."""

from .core import (
    ArmchairModel,
    MagneticField,
    PotentialProfile,
    ZigzagModel,
    effective_period,
    flat_field_amplitudes,
    load_potential,
    magnetic_phase,
)
from .zigzag import ScalarPeriodicJacobi, channel_symmetry_map, decompose_zigzag, gauge_reduce
from .armchair import (
    BlockPeriodicJacobi,
    decompose_armchair,
    model_from_field,
    shifted_schroedinger_inclusion,
    tube_geometry,
)
from .spectral import (
    BandStructure,
    ChannelBands,
    armchair_unperturbed,
    band_edges_scalar,
    discriminant,
    flat_band_spectrum,
    floquet_block,
    floquet_scalar,
    full_spectrum,
    monodromy,
    spectrum_block,
)
from .oracle import build_full_hamiltonian, compare_decomposition

__all__ = [
    "ArmchairModel",
    "BandStructure",
    "BlockPeriodicJacobi",
    "ChannelBands",
    "MagneticField",
    "PotentialProfile",
    "ScalarPeriodicJacobi",
    "ZigzagModel",
    "armchair_unperturbed",
    "band_edges_scalar",
    "build_full_hamiltonian",
    "channel_symmetry_map",
    "compare_decomposition",
    "decompose_armchair",
    "decompose_zigzag",
    "discriminant",
    "effective_period",
    "flat_band_spectrum",
    "flat_field_amplitudes",
    "floquet_block",
    "floquet_scalar",
    "full_spectrum",
    "gauge_reduce",
    "load_potential",
    "magnetic_phase",
    "model_from_field",
    "monodromy",
    "shifted_schroedinger_inclusion",
    "spectrum_block",
    "tube_geometry",
]
