# Copyright (c) The shrinkcs authors.
from .io import (
    read_image_csv,
    read_mask_csv,
    read_pgm,
    write_image_csv,
    write_mask_csv,
    write_pgm,
)
from .operators import dft2, div, grad, gradient_eigenvalues, idft2, sample_fourier
from .phantom import ImageGrid, shepp_logan
from .sampling import FourierMask, bresenham, radial_mask
from .tv_admm import ReconstructionResult, default_tv_config, tv_admm_reconstruct
