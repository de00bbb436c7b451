"""Weighted-prior sparse-view tomographic reconstruction."""

from ._tomoprior import (
    IoError,
    NumericalError,
    ReconConfig,
    ScanGeometry,
    Sinogram,
    ValidationError,
    back_project,
    build_eigenspace,
    compute_weight_map,
    fbp_reconstruct,
    forward_project,
    generate_phantom,
    load_raster,
    plain_prior_reconstruct,
    reconstruct,
    rmse,
    save_raster,
    ssim,
    weighted_prior_reconstruct,
)

__all__ = [
    "IoError",
    "NumericalError",
    "ReconConfig",
    "ScanGeometry",
    "Sinogram",
    "ValidationError",
    "back_project",
    "build_eigenspace",
    "compute_weight_map",
    "fbp_reconstruct",
    "forward_project",
    "generate_phantom",
    "load_raster",
    "plain_prior_reconstruct",
    "reconstruct",
    "rmse",
    "save_raster",
    "ssim",
    "weighted_prior_reconstruct",
]
