"""Three-qubit pure states: the MDCC family, named references, and samplers.

States are length-8 complex amplitude vectors over |abc> with index
4a + 2b + c.  All samplers are pure functions of (base_seed, index) through
:func:`substream`, so batches are reproducible regardless of how the indices
are scheduled across workers.
"""

from __future__ import annotations

import numpy as np

from . import linalg, measures

NORM_TOL = 1e-12

#: Basis indices of |000>, |010>, |101>, |111>.
_I000, _I010, _I101, _I111 = 0, 2, 5, 7

GHZ_TANGLE_FLOOR = 1e-6
W_SIMPLEX_FLOOR = 1e-6
_MAX_REJECTS = 100


def pure_state(amplitudes) -> np.ndarray:
    """Validate/normalize an 8-amplitude vector into a pure three-qubit state."""
    psi = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if psi.shape != (8,):
        raise ValueError(f"expected 8 amplitudes, got {psi.shape}")
    if not np.all(np.isfinite(psi)):
        raise ValueError("non-finite amplitude")
    norm = float(np.linalg.norm(psi))
    if norm <= 0.0:
        raise ValueError("state has zero norm")
    if abs(norm - 1.0) > NORM_TOL:
        psi = psi / norm
    return psi


def density(psi: np.ndarray) -> np.ndarray:
    """Projector |psi><psi|."""
    return np.outer(psi, psi.conj())


def reduced(psi: np.ndarray, keep) -> np.ndarray:
    """Reduced density matrix of the kept parties (subset of {A, B, C})."""
    return linalg.partial_trace(density(psi), keep)


def mdcc(alpha: float) -> np.ndarray:
    """Maximally-dense-coding-capable family member.

    Unnormalized amplitudes |000> + |111> + alpha(|101> + |010>); the
    returned state is normalized.  alpha = 0 gives GHZ, alpha = 1 factors
    as Bell_AC otimes |+>_B.
    """
    alpha = float(alpha)
    if not np.isfinite(alpha):
        raise ValueError("alpha must be finite")
    if abs(alpha) > 1e6:
        raise ValueError(f"alpha {alpha} out of supported range")
    psi = np.zeros(8, dtype=complex)
    psi[_I000] = 1.0
    psi[_I111] = 1.0
    psi[_I010] = alpha
    psi[_I101] = alpha
    return psi / np.sqrt(2.0 + 2.0 * alpha**2)


_NAMED = {
    "ghz": lambda: mdcc(0.0),
    "w": lambda: pure_state([0, 1, 1, 0, 1, 0, 0, 0]),
    "product000": lambda: pure_state([1, 0, 0, 0, 0, 0, 0, 0]),
    "bell_ab_times_0": lambda: pure_state([1, 0, 0, 0, 0, 0, 1, 0]),
}


def named_state(name: str) -> np.ndarray:
    try:
        return _NAMED[name]()
    except KeyError:
        raise ValueError(f"unknown state name {name!r}; choose from {sorted(_NAMED)}") from None


def named_state_names() -> tuple[str, ...]:
    return tuple(sorted(_NAMED))


# ---------------------------------------------------------------------------
# Seeded sampling.

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix64(base_seed: int, index: int) -> int:
    """SplitMix64 finalizer over (base_seed, index); substream seed derivation."""
    z = (int(base_seed) + _GOLDEN * (int(index) + 1)) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def substream(base_seed: int, index: int) -> np.random.Generator:
    """Independent PCG64 stream for one sample index.

    Output depends only on (base_seed, index), never on which worker draws it.
    """
    return np.random.Generator(np.random.PCG64(mix64(base_seed, index)))


def _box_muller_normals(rng: np.random.Generator, n_pairs: int) -> np.ndarray:
    u = rng.random((n_pairs, 2))
    r = np.sqrt(-2.0 * np.log1p(-u[:, 0]))  # u in [0,1) so 1-u in (0,1]
    ang = 2.0 * np.pi * u[:, 1]
    return np.concatenate([r * np.cos(ang), r * np.sin(ang)])


def haar_random(rng: np.random.Generator) -> np.ndarray:
    """Haar-random pure state: normalized vector of 8 complex standard normals."""
    z = _box_muller_normals(rng, 8)
    psi = z[:8] + 1j * z[8:]
    return psi / np.linalg.norm(psi)


def w_class_random(rng: np.random.Generator) -> np.ndarray:
    """W-class sample in canonical form sqrt(a)|100> + sqrt(b)|010> + sqrt(c)|001> + sqrt(d)|000>.

    (a, b, c, d) is uniform on the probability simplex (normalized exponential
    draws), resampled until a, b, c clear a small floor.  Phases are omitted:
    every measure computed downstream is local-unitary invariant.
    """
    while True:
        e = -np.log1p(-rng.random(4))
        a, b, c, d = e / e.sum()
        if min(a, b, c) >= W_SIMPLEX_FLOOR:
            break
    psi = np.zeros(8, dtype=complex)
    psi[4] = np.sqrt(a)  # |100>
    psi[2] = np.sqrt(b)  # |010>
    psi[1] = np.sqrt(c)  # |001>
    psi[0] = np.sqrt(d)  # |000>
    return pure_state(psi)


def ghz_class_random(rng: np.random.Generator) -> np.ndarray:
    """Haar sample conditioned on positive tangle (GHZ class).

    The rejection set has Haar measure zero, so redraws are essentially
    never needed; a run of 100 rejections signals a broken tangle
    computation rather than bad luck.
    """
    for _ in range(_MAX_REJECTS):
        psi = haar_random(rng)
        if measures.tangle(psi) > GHZ_TANGLE_FLOOR:
            return psi
    raise RuntimeError(
        f"{_MAX_REJECTS} consecutive tangle rejections; tangle computation suspect"
    )


def random_product_unitary(rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Independent Haar-random single-qubit unitaries (U_A, U_B, U_C)."""
    us = []
    for _ in range(3):
        z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        q, r = np.linalg.qr(z)
        q = q * (np.diag(r) / np.abs(np.diag(r)))
        us.append(q)
    return tuple(us)


def apply_product_unitary(psi: np.ndarray, ua, ub, uc) -> np.ndarray:
    """Apply U_A otimes U_B otimes U_C to a three-qubit state."""
    u = np.kron(np.kron(ua, ub), uc)
    return u @ psi
