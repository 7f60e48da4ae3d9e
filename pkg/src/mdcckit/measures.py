"""Multipartite correlation measures for three-qubit pure states.

Covers the generalized geometric measure (GGM), Wootters concurrence, the
three-tangle, quantum discord under rank-one projective measurements, and
the discord monogamy score.

Discord minimization runs a dense (theta, phi) grid over the Bloch sphere
followed by Nelder-Mead refinement from the best grid cell; the grid
evaluation is vectorized, the refinement reuses the same scalar objective.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from . import linalg

PARTY_SET = frozenset(linalg.PARTIES)

SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_YY = np.kron(SIGMA_Y, SIGMA_Y)

TANGLE_CLAMP = -1e-8
DISCORD_CLAMP = -1e-6

GRID_THETA = 64
GRID_PHI = 128
REFINE_XATOL = 1e-9
REFINE_MAXFEV = 500

_OTHERS = {"A": ("B", "C"), "B": ("A", "C"), "C": ("A", "B")}


def _check_party(p: str) -> str:
    if p not in PARTY_SET:
        raise ValueError(f"unknown party label {p!r}")
    return p


def _projector(psi: np.ndarray) -> np.ndarray:
    return np.outer(psi, psi.conj())


def single_party_marginal(psi: np.ndarray, party: str) -> np.ndarray:
    return linalg.partial_trace(_projector(psi), {_check_party(party)})


def marginal_spectra(psi: np.ndarray) -> dict[str, np.ndarray]:
    """Descending eigenvalues of each single-qubit marginal."""
    return {
        p: linalg.density_spectrum(single_party_marginal(psi, p))
        for p in linalg.PARTIES
    }


def ggm(psi: np.ndarray) -> float:
    """Generalized geometric measure of a three-qubit pure state.

    1 minus the largest squared Schmidt coefficient over the three
    bipartitions, which for qubits reduces to the largest single-party
    marginal eigenvalue.  Range [0, 1/2].
    """
    spectra = marginal_spectra(psi)
    lam = max(float(spectra[p][0]) for p in linalg.PARTIES)
    return min(0.5, max(0.0, 1.0 - lam))


def spin_flip(rho: np.ndarray) -> np.ndarray:
    """Two-qubit spin flip (sigma_y x sigma_y) rho* (sigma_y x sigma_y)."""
    return _YY @ rho.conj() @ _YY


def concurrence(rho: np.ndarray) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    Uses the Hermitian form sqrt(rho) rho~ sqrt(rho), whose eigenvalues match
    those of rho rho~, so a single Hermitian eigensolver serves throughout.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"concurrence needs a 4x4 density matrix, got {rho.shape}")
    rt = linalg.psd_sqrt(rho)
    # sqrt(rho) rho~ sqrt(rho) factors as A^dag A with A = sqrt(rho)* YY sqrt(rho),
    # so its eigenvalue square roots are the singular values of A.  The SVD
    # route avoids sqrt-amplified noise in the (often exact) zero eigenvalues.
    a = rt.conj() @ _YY @ rt
    lam = np.linalg.svd(a, compute_uv=False)
    return max(0.0, float(lam[0] - lam[1] - lam[2] - lam[3]))


def pure_cut_concurrence_sq(psi: np.ndarray, nodal: str) -> float:
    """Squared concurrence of the pure nodal : rest bipartite cut.

    Equals 4 det(rho_nodal) = 4 lambda_max lambda_min of the nodal marginal.
    """
    w = linalg.density_spectrum(single_party_marginal(psi, nodal))
    return float(4.0 * w[0] * w[1])


def tangle(psi: np.ndarray, nodal: str = "A") -> float:
    """Three-tangle C^2_{nodal:rest} - C^2_{nodal,X} - C^2_{nodal,Y}.

    Values in [-1e-8, 0) are numerical noise and clamp to 0.  Independence of
    the nodal party is a verified property, not an assumption.
    """
    x, y = _OTHERS[_check_party(nodal)]
    rho = _projector(psi)
    c2_cut = pure_cut_concurrence_sq(psi, nodal)
    c2_x = concurrence(linalg.partial_trace(rho, {nodal, x})) ** 2
    c2_y = concurrence(linalg.partial_trace(rho, {nodal, y})) ** 2
    value = c2_cut - c2_x - c2_y
    if TANGLE_CLAMP <= value < 0.0:
        return 0.0
    return value


# ---------------------------------------------------------------------------
# Quantum discord.


@dataclass(frozen=True)
class MeasurementBasis:
    """Rank-one projective basis on the Bloch sphere.

    B0 = |v><v| with |v> = (cos(theta/2), e^{i phi} sin(theta/2)), B1 = I - B0.
    """

    theta: float
    phi: float

    def vector(self) -> np.ndarray:
        return np.array(
            [np.cos(self.theta / 2.0), np.exp(1j * self.phi) * np.sin(self.theta / 2.0)]
        )

    def projectors(self) -> tuple[np.ndarray, np.ndarray]:
        b0 = _projector(self.vector())
        return b0, np.eye(2) - b0


@dataclass(frozen=True)
class DiscordResult:
    value: float
    optimal_basis: MeasurementBasis
    iterations: int
    converged: bool = True


def _swap_factors(rho: np.ndarray) -> np.ndarray:
    return rho.reshape(2, 2, 2, 2).transpose(1, 0, 3, 2).reshape(4, 4)


def _basis_vectors(thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
    v = np.empty(thetas.shape + (2,), dtype=complex)
    v[..., 0] = np.cos(thetas / 2.0)
    v[..., 1] = np.exp(1j * phis) * np.sin(thetas / 2.0)
    return v


def _cond_entropy_batch(rho: np.ndarray, thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
    """Conditional entropies sum_i p_i S(rho_{A|i}) at many bases (measured: second factor).

    Fully vectorized: unnormalized post-measurement 2x2 operators on the
    unmeasured party via one einsum per outcome, spectra in closed form.
    """
    t = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    vs = _basis_vectors(np.asarray(thetas, dtype=float), np.asarray(phis, dtype=float))
    vs = vs.reshape(-1, 2)
    # Orthogonal complement of each basis vector.
    ws = np.empty_like(vs)
    ws[:, 0] = -vs[:, 1].conj()
    ws[:, 1] = vs[:, 0].conj()

    total = np.zeros(vs.shape[0])
    for u in (vs, ws):
        m = np.einsum("nb,abcd,nd->nac", u.conj(), t, u, optimize=True)
        p = np.real(m[:, 0, 0] + m[:, 1, 1])
        half_gap = 0.5 * np.sqrt(
            np.real(m[:, 0, 0] - m[:, 1, 1]) ** 2
            + np.imag(m[:, 0, 0] - m[:, 1, 1]) ** 2
            + 4.0 * np.abs(m[:, 0, 1]) ** 2
        )
        lo = np.maximum(0.5 * p - half_gap, 0.0)
        hi = np.maximum(0.5 * p + half_gap, 0.0)
        ok = p > 1e-12
        contrib = np.zeros_like(p)
        for lam in (lo, hi):
            nz = ok & (lam > 1e-15)
            contrib[nz] -= lam[nz] * np.log2(lam[nz] / p[nz])
        total += contrib
    return total.reshape(np.shape(thetas))


def conditional_entropy(
    rho: np.ndarray, basis: MeasurementBasis, measured: str = "second"
) -> float:
    """sum_i p_i S(rho_{A|i}) for a fixed projective basis on the measured qubit."""
    if measured == "first":
        rho = _swap_factors(rho)
    elif measured != "second":
        raise ValueError(f"measured must be 'first' or 'second', got {measured!r}")
    return float(_cond_entropy_batch(rho, np.array(basis.theta), np.array(basis.phi)))


def _canonical_angles(theta: float, phi: float) -> tuple[float, float]:
    theta = theta % (2.0 * np.pi)
    if theta > np.pi:
        theta = 2.0 * np.pi - theta
        phi = phi + np.pi
    return theta, phi % (2.0 * np.pi)


def discord(rho: np.ndarray, measured: str = "second") -> DiscordResult:
    """Quantum discord I - J of a two-qubit state, minimizing over projective bases.

    Coarse 64x128 (theta, phi) grid, then Nelder-Mead from the best cell
    (terminates at simplex size 1e-9 or 500 evaluations).  Small negative
    optimizer slack in [-1e-6, 0) is clamped to 0.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"discord needs a 4x4 density matrix, got {rho.shape}")
    if measured == "first":
        rho = _swap_factors(rho)
    elif measured != "second":
        raise ValueError(f"measured must be 'first' or 'second', got {measured!r}")

    s_joint = linalg.von_neumann_entropy(rho)
    s_measured = linalg.von_neumann_entropy(
        linalg.partial_trace(rho, {"B"}, parties=("A", "B"))
    )

    thetas = np.linspace(0.0, np.pi, GRID_THETA)
    phis = np.linspace(0.0, 2.0 * np.pi, GRID_PHI, endpoint=False)
    tg, pg = np.meshgrid(thetas, phis, indexing="ij")
    grid = _cond_entropy_batch(rho, tg, pg)
    i, j = np.unravel_index(int(np.argmin(grid)), grid.shape)
    best_cond = float(grid[i, j])
    x0 = np.array([tg[i, j], pg[i, j]])

    def objective(x: np.ndarray) -> float:
        return float(_cond_entropy_batch(rho, np.array(x[0]), np.array(x[1])))

    res = minimize(
        objective,
        x0,
        method="Nelder-Mead",
        options={
            "xatol": REFINE_XATOL,
            "fatol": 1e-15,
            "maxfev": REFINE_MAXFEV,
            "initial_simplex": np.array(
                [x0, x0 + [0.05, 0.0], x0 + [0.0, 0.05]]
            ),
        },
    )
    if res.fun < best_cond:
        best_cond = float(res.fun)
        theta, phi = _canonical_angles(float(res.x[0]), float(res.x[1]))
    else:
        theta, phi = float(x0[0]), float(x0[1])

    value = s_measured - s_joint + best_cond
    if value < DISCORD_CLAMP:
        raise ValueError(f"discord {value:.3e} below optimizer slack {DISCORD_CLAMP:.0e}")
    if value < 0.0:
        value = 0.0
    return DiscordResult(
        value=value,
        optimal_basis=MeasurementBasis(theta, phi),
        iterations=int(res.nfev),
        converged=bool(res.success),
    )


def discord_pure_cut(psi: np.ndarray, nodal: str) -> float:
    """Discord across the pure nodal : rest cut; reduces to S(rho_nodal).

    For a globally pure state I = 2 S(rho_nodal) and the optimal classical
    correlation is S(rho_nodal), so the measurement optimization is exact in
    closed form.
    """
    return linalg.von_neumann_entropy(single_party_marginal(psi, _check_party(nodal)))


def _pair_discord(
    psi: np.ndarray, nodal: str, other: str, measured_convention: str
) -> DiscordResult:
    rho = linalg.partial_trace(_projector(psi), {nodal, other})
    # partial_trace keeps alphabetical party order; map the measured party
    # (the non-nodal one under the 'second' convention) onto a factor slot.
    first, _second = tuple(sorted((nodal, other)))
    target = other if measured_convention == "second" else nodal
    measured = "first" if target == first else "second"
    return discord(rho, measured=measured)


def discord_monogamy_score(
    psi: np.ndarray, nodal: str = "A", measured_convention: str = "second"
) -> float:
    """delta_D = D_{nodal:rest} - D_{nodal,X} - D_{nodal,Y}.

    Sign is meaningful (discord can be non-monogamous), so no clamping.
    ``measured_convention`` picks which party of each pair is measured:
    'second' measures the non-nodal party (matching S(rho_{A|B})), 'first'
    flips it.
    """
    if measured_convention not in ("second", "first"):
        raise ValueError(f"bad measured_convention {measured_convention!r}")
    x, y = _OTHERS[_check_party(nodal)]
    d_cut = discord_pure_cut(psi, nodal)
    d_x = _pair_discord(psi, nodal, x, measured_convention).value
    d_y = _pair_discord(psi, nodal, y, measured_convention).value
    return d_cut - d_x - d_y
