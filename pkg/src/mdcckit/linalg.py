"""Small complex-matrix kernel for 2-, 4- and 8-dimensional operators.

Everything here operates on plain ``numpy`` arrays.  Density matrices are
ordinary complex ndarrays that satisfy :func:`check_density`; helper
functions validate on entry where the cost is negligible at these sizes.

Basis convention for three qubits: index = 4a + 2b + c for |abc>, party
order (A, B, C).
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

PARTIES = ("A", "B", "C")

# Tolerances used by the validators and clamps.
HERM_TOL = 1e-12
TRACE_TOL = 1e-12
EIG_CLAMP = -1e-10
PSD_HARD_FLOOR = -1e-8


class NonHermitianError(ValueError):
    """Input matrix is not Hermitian within tolerance."""


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def hermitize(m: np.ndarray) -> np.ndarray:
    """Return the Hermitian part (m + m†)/2."""
    return 0.5 * (m + m.conj().T)


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product in party order; result dimension must stay <= 8."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape[0] * b.shape[0] > 8:
        raise ValueError(
            f"tensor product dimension {a.shape[0] * b.shape[0]} exceeds 8"
        )
    return np.kron(a, b)


def check_density(rho: np.ndarray, *, name: str = "rho") -> np.ndarray:
    """Validate a density matrix: Hermitian, unit trace, eigenvalues >= clamp.

    Returns the input unchanged so the check can be used inline.
    """
    rho = np.asarray(rho, dtype=complex)
    d = rho.shape[0]
    if rho.shape != (d, d) or d not in (2, 4, 8):
        raise ValueError(f"{name}: expected square matrix of dim 2, 4 or 8, got {rho.shape}")
    herm_dev = np.abs(rho - rho.conj().T).max()
    if herm_dev > HERM_TOL:
        raise NonHermitianError(f"{name}: Hermiticity violated by {herm_dev:.3e}")
    tr = rho.trace()
    if abs(tr - 1.0) > TRACE_TOL:
        raise ValueError(f"{name}: trace {tr} differs from 1 beyond {TRACE_TOL:.0e}")
    w = np.linalg.eigvalsh(rho)
    if w.min() < EIG_CLAMP:
        raise ValueError(f"{name}: eigenvalue {w.min():.3e} below clamp {EIG_CLAMP:.0e}")
    return rho


def herm_eigvals(m: np.ndarray) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, sorted descending.

    Raises :class:`NonHermitianError` when the anti-Hermitian part exceeds
    1e-10 (relative to the matrix scale).
    """
    m = np.asarray(m, dtype=complex)
    scale = max(np.abs(m).max(), 1.0)
    dev = np.abs(m - m.conj().T).max()
    if dev > 1e-10 * scale:
        raise NonHermitianError(f"Hermiticity violated by {dev:.3e}")
    w = np.linalg.eigvalsh(hermitize(m))
    return w[::-1].copy()


def clamp_spectrum(w: np.ndarray) -> np.ndarray:
    """Clamp eigenvalue noise in [-1e-10, 0) to 0; more negative is an error."""
    w = np.asarray(w, dtype=float)
    if w.min() < EIG_CLAMP:
        raise ValueError(f"eigenvalue {w.min():.3e} below clamp {EIG_CLAMP:.0e}")
    return np.where(w < 0.0, 0.0, w)


def density_spectrum(rho: np.ndarray) -> np.ndarray:
    """Descending, clamped eigenvalues of a density matrix."""
    return clamp_spectrum(herm_eigvals(rho))


def _party_positions(dim: int) -> Sequence[str]:
    if dim == 8:
        return PARTIES
    if dim == 4:
        return PARTIES[:2]
    raise ValueError(f"partial trace needs an 8x8 or 4x4 matrix, got dim {dim}")


def partial_trace(
    rho: np.ndarray,
    keep: Iterable[str],
    parties: Sequence[str] | None = None,
) -> np.ndarray:
    """Trace out every party not in ``keep``; kept parties stay in order.

    ``parties`` labels the tensor factors of ``rho`` (defaults to (A, B, C)
    for 8x8 inputs and (A, B) for 4x4 inputs).
    """
    rho = np.asarray(rho, dtype=complex)
    d = rho.shape[0]
    if parties is None:
        parties = _party_positions(d)
    parties = tuple(parties)
    n = len(parties)
    if 2**n != d:
        raise ValueError(f"{n} party labels do not match dimension {d}")
    keep = tuple(p for p in parties if p in set(keep))
    if len(keep) == 0 or len(keep) == n:
        raise ValueError("keep must be a nonempty proper subset of the parties")

    t = rho.reshape((2,) * (2 * n))
    # Trace axis pairs for discarded parties, highest position first so the
    # remaining axis numbers stay valid.
    positions = [i for i, p in enumerate(parties) if p not in keep]
    remaining = n
    for pos in sorted(positions, reverse=True):
        t = np.trace(t, axis1=pos, axis2=pos + remaining)
        remaining -= 1
    return t.reshape(2**remaining, 2**remaining)


def trace_out_first(rho: np.ndarray, dim_first: int) -> np.ndarray:
    """Marginal of the second factor of a bipartite dim_first x dim_second split."""
    d = rho.shape[0]
    if d % dim_first:
        raise ValueError(f"dimension {d} not divisible by {dim_first}")
    dim_second = d // dim_first
    t = rho.reshape(dim_first, dim_second, dim_first, dim_second)
    return np.trace(t, axis1=0, axis2=2)


def psd_sqrt(rho: np.ndarray) -> np.ndarray:
    """Hermitian PSD square root via eigendecomposition.

    Eigenvalues in [-1e-8, 0) are treated as noise and floored at 0; anything
    more negative raises.
    """
    rho = np.asarray(rho, dtype=complex)
    w, v = np.linalg.eigh(hermitize(rho))
    if w.min() < PSD_HARD_FLOOR:
        raise ValueError(f"matrix not PSD: eigenvalue {w.min():.3e}")
    w = np.sqrt(np.maximum(w, 0.0))
    return hermitize((v * w) @ v.conj().T)


def von_neumann_entropy(rho: np.ndarray) -> float:
    """S(rho) = -tr(rho log2 rho) in bits; eigenvalues below 1e-15 contribute 0."""
    return entropy_of_spectrum(density_spectrum(rho))


def entropy_of_spectrum(w: np.ndarray) -> float:
    """Shannon entropy (base 2) of a probability vector, ignoring p < 1e-15."""
    w = np.asarray(w, dtype=float)
    w = w[w > 1e-15]
    return float(-(w * np.log2(w)).sum() + 0.0)


def binary_entropy(p: float) -> float:
    """H(p) in bits; exactly 0 at the endpoints."""
    if p < -1e-12 or p > 1.0 + 1e-12:
        raise ValueError(f"probability {p} outside [0, 1]")
    p = min(max(p, 0.0), 1.0)
    if p == 0.0 or p == 1.0:
        return 0.0
    return float(-p * np.log2(p) - (1.0 - p) * np.log2(1.0 - p))
