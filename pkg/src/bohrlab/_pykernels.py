"""Numpy reference kernels; same algorithms as the compiled module."""
from __future__ import annotations

import numpy as np


def horner(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Evaluate sum coeffs[n] * z**n at every point of ``z``."""
    z = np.asarray(z, dtype=np.complex128)
    acc = np.full(z.shape, coeffs[-1], dtype=np.complex128)
    for c in coeffs[-2::-1]:
        acc *= z
        acc += c
    return acc


def circle_values(coeffs: np.ndarray, radii: np.ndarray, n_theta: int) -> np.ndarray:
    """Values on the grid r_i * exp(2 pi i j / n_theta), shape (len(radii), n_theta)."""
    angles = 2.0 * np.pi * np.arange(n_theta) / n_theta
    z = np.asarray(radii, dtype=np.float64)[:, None] * np.exp(1j * angles)[None, :]
    return horner(coeffs, z)
