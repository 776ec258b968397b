"""Multiscale sliding-window Eigensurfaces and coarse-to-fine anomaly localization."""

import json

from ._eigensurf import (
    AlignedPair,
    DeformationSummary,
    DerivativeAxis,
    ExpressionMatrix,
    Extremum,
    InputError,
    NumericalError,
    PipelineConfig,
    SortKey,
    SpectralMode,
    Surface,
    SurfaceBundle,
    build_eigensurface,
    derivative_surfaces,
    dist,
    estimate_deformation_gradient,
    freedist,
    interpolate_rows,
    jacobian_surface,
    load_matrix,
    local_extrema,
    normalize_surface,
    read_surface,
    signal_derivatives,
    sort_and_align,
    sort_key,
    synth,
    window_eigen_sum,
    window_grid,
    write_matrix,
    write_surface,
)
from . import _eigensurf

__version__ = "0.1.0"


def compare_matrices(control, deformed, config=None, threads=1):
    """Run the comparison on in-memory matrices and return the report as a dict."""
    config = config or PipelineConfig()
    return json.loads(_eigensurf._compare_matrices_json(control, deformed, config, threads))


def run_pipeline(control_path, deformed_path, config=None, out_dir=None, threads=1):
    """Run the comparison on two matrix files; optionally write all outputs to out_dir."""
    config = config or PipelineConfig()
    text = _eigensurf._run_pipeline_json(
        str(control_path), str(deformed_path), config,
        None if out_dir is None else str(out_dir), threads)
    return json.loads(text)
