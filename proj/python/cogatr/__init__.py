"""Cognitive angular-diversity ATR simulator."""

from ._core import (
    ConfigError,
    DegenerateSignal,
    Domain,
    EmptyCell,
    Error,
    Experiment,
    ExperimentConfig,
    FormatError,
    Geometry,
    GeometryError,
    MissingBank,
    ProcessingVariant,
    RadarBand,
    Scatterer,
    TargetClass,
    TargetModel,
    add_noise,
    extract_features,
    make_target,
    sector_of,
    sweep_csv,
    synthesize_kspace,
    unitary_dft,
    write_dataset,
)

__all__ = [
    "ConfigError",
    "DegenerateSignal",
    "Domain",
    "EmptyCell",
    "Error",
    "Experiment",
    "ExperimentConfig",
    "FormatError",
    "Geometry",
    "GeometryError",
    "MissingBank",
    "ProcessingVariant",
    "RadarBand",
    "Scatterer",
    "TargetClass",
    "TargetModel",
    "add_noise",
    "extract_features",
    "make_target",
    "sector_of",
    "sweep_csv",
    "synthesize_kspace",
    "unitary_dft",
    "write_dataset",
]
