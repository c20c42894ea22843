"""Forward and inverse spectral problems for complex Jacobi matrices.

Matrices are ``(diag, off)`` pairs of complex lists. Spectral data are lists
of ``(lambda, [beta_1, ..., beta_m])``. Moments are lists ``s_0..s_2N``.
All computation runs in 113-bit binary floating point; results are doubles.
"""

from ._core import (
    JacobiError,
    char_poly,
    forward,
    moments,
    moments_from_spectral,
    reconstruct_real,
)
from . import _core

__all__ = [
    "JacobiError",
    "char_poly",
    "forward",
    "moments",
    "moments_from_spectral",
    "reconstruct",
    "reconstruct_all",
    "reconstruct_real",
    "synth",
    "validate",
]


def _is_spectral(data):
    return len(data) > 0 and isinstance(data[0], (tuple, list))


def validate(data, mode="complex", tol=1e-8):
    """Hankel report of moments or spectral data as a dict."""
    if _is_spectral(data):
        return _core.validate_spectral(data, mode, tol)
    return _core.validate_moments(data, mode, tol)


def reconstruct(data, signs=None, tol=1e-8):
    """(diag, off) from moments or spectral data; signs is a '+-' string."""
    if _is_spectral(data):
        return _core.reconstruct_spectral(data, signs, tol)
    return _core.reconstruct_moments(data, signs, tol)


def reconstruct_all(data, tol=1e-8):
    """All 2^(N-1) sign variants, '+' before '-' in lexicographic order."""
    if _is_spectral(data):
        data = _core.moments_from_spectral(data)
    return _core.reconstruct_all_moments(data, tol)


def synth(eigenvalues, weights, signs=None, tol=1e-8):
    """Matrix with the given real eigenvalues and weights.

    Real positive weights give a real matrix; complex weights a complex one.
    """
    entries = [(complex(l), [complex(w)]) for l, w in zip(eigenvalues, weights, strict=True)]
    if any(complex(l).imag != 0 for l in eigenvalues):
        raise JacobiError("eigenvalues must be real")
    if all(complex(w).imag == 0 for w in weights):
        return _core.reconstruct_real(entries, signs, tol)
    return _core.reconstruct_spectral(entries, signs, tol)
