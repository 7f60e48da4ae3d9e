import numpy as np
import pytest

from mdcckit import linalg, states

I2 = np.eye(2, dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])


def test_tensor_identity():
    assert np.allclose(linalg.tensor(I2, I2), np.eye(4))


def test_tensor_projectors():
    out = linalg.tensor(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]))
    assert np.allclose(out, np.diag([0.0, 1.0, 0.0, 0.0]))


def test_tensor_sigma_y_matches_spin_flip_convention(bell_pair):
    yy = linalg.tensor(SY, SY)
    flipped = yy @ bell_pair.conj() @ yy
    # Bell state is invariant under the spin flip
    assert np.allclose(flipped, bell_pair, atol=1e-14)


def test_tensor_dimension_overflow():
    with pytest.raises(ValueError):
        linalg.tensor(np.eye(4), np.eye(4))


def test_partial_trace_product_state():
    rho = np.zeros((8, 8), dtype=complex)
    rho[0, 0] = 1.0  # |000><000|
    assert np.allclose(linalg.partial_trace(rho, {"A"}), np.diag([1.0, 0.0]))


def test_partial_trace_ghz_marginal(ghz):
    rho = np.outer(ghz, ghz.conj())
    assert np.allclose(linalg.partial_trace(rho, {"B"}), I2 / 2, atol=1e-14)


def test_partial_trace_mdcc_a_marginal_maximally_mixed():
    for alpha in np.linspace(0.0, 5.0, 21):
        rho = np.outer(states.mdcc(alpha), states.mdcc(alpha).conj())
        assert np.allclose(linalg.partial_trace(rho, {"A"}), I2 / 2, atol=1e-12)


def test_partial_trace_rejects_bad_keep():
    rho = np.eye(8, dtype=complex) / 8
    with pytest.raises(ValueError):
        linalg.partial_trace(rho, set())
    with pytest.raises(ValueError):
        linalg.partial_trace(rho, {"A", "B", "C"})


def test_partial_trace_composition():
    rng = np.random.default_rng(11)
    for _ in range(20):
        psi = states.haar_random(rng)
        rho = np.outer(psi, psi.conj())
        via_two_steps = linalg.partial_trace(
            linalg.partial_trace(rho, {"A", "B"}), {"A"}, parties=("A", "B")
        )
        at_once = linalg.partial_trace(rho, {"A"})
        assert np.abs(via_two_steps - at_once).max() <= 1e-12


def test_partial_trace_preserves_trace():
    rng = np.random.default_rng(12)
    psi = states.haar_random(rng)
    rho = np.outer(psi, psi.conj())
    for keep in ({"A"}, {"B"}, {"C"}, {"A", "B"}, {"A", "C"}, {"B", "C"}):
        assert abs(linalg.partial_trace(rho, keep).trace() - 1.0) <= 1e-12


def test_herm_eigvals_maximally_mixed():
    assert np.allclose(linalg.herm_eigvals(I2 / 2), [0.5, 0.5])


def test_herm_eigvals_diagonal_descending():
    w = linalg.herm_eigvals(np.diag([0.2, 0.7, 0.0, 0.1]).astype(complex))
    assert np.allclose(w, [0.7, 0.2, 0.1, 0.0])


def test_herm_eigvals_mdcc1_b_marginal_pure():
    # mdcc(1) factorizes as Bell_AC x |+>_B, so rho_B is a pure projector
    rho_b = states.reduced(states.mdcc(1.0), {"B"})
    assert np.allclose(linalg.herm_eigvals(rho_b), [1.0, 0.0], atol=1e-12)


def test_herm_eigvals_rejects_non_hermitian():
    with pytest.raises(linalg.NonHermitianError):
        linalg.herm_eigvals(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_eigendecomposition_reconstructs_input():
    rng = np.random.default_rng(13)
    z = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    h = linalg.hermitize(z)
    w, v = np.linalg.eigh(h)
    assert np.abs((v * w) @ v.conj().T - h).max() <= 1e-10


def test_psd_sqrt_trivial_cases():
    assert np.allclose(linalg.psd_sqrt(I2 / 2), I2 / np.sqrt(2))
    assert np.allclose(linalg.psd_sqrt(np.diag([0.64, 0.36])), np.diag([0.8, 0.6]))
    proj = np.outer([1, 1j], np.conj([1, 1j])) / 2
    assert np.allclose(linalg.psd_sqrt(proj), proj, atol=1e-14)


def test_psd_sqrt_squares_back():
    rng = np.random.default_rng(14)
    for _ in range(20):
        psi = states.haar_random(rng)
        rho = states.reduced(psi, {"A", "B"})
        rt = linalg.psd_sqrt(rho)
        assert np.abs(rt @ rt - rho).max() <= 1e-10


def test_psd_sqrt_rejects_negative():
    with pytest.raises(ValueError):
        linalg.psd_sqrt(np.diag([1.0, -1e-6]))


def test_von_neumann_entropy_trivial():
    assert linalg.von_neumann_entropy(I2 / 2) == pytest.approx(1.0, abs=1e-14)
    assert linalg.von_neumann_entropy(np.diag([1.0, 0.0])) == 0.0


def test_von_neumann_entropy_mdcc_half():
    # rho_B of mdcc(0.5) has eigenvalues {0.9, 0.1}
    s = linalg.von_neumann_entropy(states.reduced(states.mdcc(0.5), {"B"}))
    assert s == pytest.approx(0.4689955935892812, abs=1e-12)


def test_schmidt_symmetry_of_pure_marginals():
    rng = np.random.default_rng(15)
    for _ in range(20):
        psi = states.haar_random(rng)
        for keep, complement in ((("A",), ("B", "C")), (("B",), ("A", "C"))):
            s1 = linalg.von_neumann_entropy(states.reduced(psi, set(keep)))
            s2 = linalg.von_neumann_entropy(states.reduced(psi, set(complement)))
            assert abs(s1 - s2) <= 1e-10


@pytest.mark.parametrize(
    "p,expected",
    [(0.5, 1.0), (0.0, 0.0), (1.0, 0.0), (0.1, 0.4689955935892812)],
)
def test_binary_entropy(p, expected):
    assert linalg.binary_entropy(p) == pytest.approx(expected, abs=1e-12)


def test_binary_entropy_exact_at_endpoints():
    assert linalg.binary_entropy(0.0) == 0.0
    assert linalg.binary_entropy(1.0) == 0.0


def test_binary_entropy_rejects_out_of_range():
    with pytest.raises(ValueError):
        linalg.binary_entropy(1.1)
    with pytest.raises(ValueError):
        linalg.binary_entropy(-0.1)


def test_check_density_accepts_valid_rejects_invalid():
    linalg.check_density(I2 / 2)
    with pytest.raises(ValueError):
        linalg.check_density(I2)  # trace 2
    bad = np.array([[0.5, 0.1], [0.2, 0.5]], dtype=complex)
    with pytest.raises(linalg.NonHermitianError):
        linalg.check_density(bad)
