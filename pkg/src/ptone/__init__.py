"""First Dirichlet p-Laplacian eigenvalues of radially symmetric domains.

Subpackages cover the model-space warpings, the radial shooting solver,
a discrete Rayleigh-quotient fallback, certified eigenvalue bounds,
critical-radius scans for the restriction inequality, and transplants of
radial eigenfunctions onto rotationally symmetric minimal surfaces.
"""

__version__ = "0.1.0"
