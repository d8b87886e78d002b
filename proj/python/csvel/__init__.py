"""Velocity estimation from subsampled video via sparse time-frequency
reconstruction."""

from ._core import (  # noqa: F401
    AvailabilityMask,
    ComplexSignal,
    ComplexTFMap,
    FrameSequence,
    ProjectionSignal,
    RealTFMap,
    SolverConfig,
    SyntheticSceneSpec,
    VelocityProfile,
    VelocityTrack,
    WindowSpec,
    apply_mask,
    cs_stft,
    default_mu_sweep,
    emit_csv,
    emit_plot,
    extract_if,
    generate_synthetic,
    load_image_gray,
    load_sequence,
    project,
    propagate,
    ridge_concentration,
    run_pipeline,
    s_method,
    save_pgm,
    save_png_gray,
    select_mu,
    solve_sparse,
    spectrogram,
    stft,
)

__all__ = [
    "AvailabilityMask",
    "ComplexSignal",
    "ComplexTFMap",
    "FrameSequence",
    "ProjectionSignal",
    "RealTFMap",
    "SolverConfig",
    "SyntheticSceneSpec",
    "VelocityProfile",
    "VelocityTrack",
    "WindowSpec",
    "apply_mask",
    "cs_stft",
    "default_mu_sweep",
    "emit_csv",
    "emit_plot",
    "extract_if",
    "generate_synthetic",
    "load_image_gray",
    "load_sequence",
    "project",
    "propagate",
    "ridge_concentration",
    "run_pipeline",
    "s_method",
    "save_pgm",
    "save_png_gray",
    "select_mu",
    "solve_sparse",
    "spectrogram",
    "stft",
]
