import numpy as np
import pytest

from mdcckit import linalg, measures, states

DELTA_D_W = -0.18179968511102484  # frozen from the optimizer at first build


def test_ggm_reference_values(ghz):
    assert measures.ggm(ghz) == pytest.approx(0.5, abs=1e-12)
    assert measures.ggm(states.named_state("product000")) == 0.0
    assert measures.ggm(states.mdcc(0.5)) == pytest.approx(0.1, abs=1e-12)


def test_ggm_range_on_samples():
    for i in range(200):
        g = measures.ggm(states.haar_random(states.substream(21, i)))
        assert 0.0 <= g <= 0.5


def test_ggm_zero_iff_product_cut():
    psi = states.named_state("bell_ab_times_0")
    spectra = measures.marginal_spectra(psi)
    assert measures.ggm(psi) <= 1e-12
    assert max(w[0] for w in spectra.values()) >= 1.0 - 1e-10


def test_concurrence_bell(bell_pair):
    assert measures.concurrence(bell_pair) == pytest.approx(1.0, abs=1e-10)


def test_concurrence_product_pure():
    assert measures.concurrence(np.diag([1.0, 0, 0, 0]).astype(complex)) == 0.0


@pytest.mark.parametrize("alpha", [0.25, 0.5, 2.0])
def test_concurrence_mdcc_ac_closed_form(alpha):
    rho_ac = states.reduced(states.mdcc(alpha), {"A", "C"})
    assert measures.concurrence(rho_ac) == pytest.approx(
        2 * alpha / (1 + alpha**2), abs=1e-10
    )


def test_concurrence_wrong_shape():
    with pytest.raises(ValueError):
        measures.concurrence(np.eye(2) / 2)


def test_pure_cut_concurrence_sq(ghz):
    assert measures.pure_cut_concurrence_sq(ghz, "A") == pytest.approx(1.0, abs=1e-12)
    assert measures.pure_cut_concurrence_sq(states.named_state("product000"), "A") == 0.0
    for alpha in (0.0, 0.5, 1.0, 3.0):
        assert measures.pure_cut_concurrence_sq(states.mdcc(alpha), "A") == pytest.approx(
            1.0, abs=1e-10
        )


def test_tangle_reference_values(ghz, w_state):
    assert measures.tangle(ghz) == pytest.approx(1.0, abs=1e-10)
    assert measures.tangle(w_state) == pytest.approx(0.0, abs=1e-8)


def test_tangle_w_decomposition(w_state):
    # C^2_{A:BC} = 8/9 and both pair concurrences are 2/3
    assert measures.pure_cut_concurrence_sq(w_state, "A") == pytest.approx(8 / 9, abs=1e-10)
    rho_ab = states.reduced(w_state, {"A", "B"})
    assert measures.concurrence(rho_ab) == pytest.approx(2 / 3, abs=1e-10)


def test_tangle_mdcc_closed_form():
    for alpha in np.linspace(0.0, 2.0, 101):
        expected = (1 - alpha**2) ** 2 / (1 + alpha**2) ** 2
        assert measures.tangle(states.mdcc(alpha)) == pytest.approx(expected, abs=1e-9)


def test_tangle_nodal_party_independence():
    for i in range(100):
        psi = states.haar_random(states.substream(22, i))
        t = measures.tangle(psi, "A")
        assert abs(t - measures.tangle(psi, "B")) <= 1e-8
        assert abs(t - measures.tangle(psi, "C")) <= 1e-8


def test_tangle_nonnegative_on_haar():
    for i in range(500):
        assert measures.tangle(states.haar_random(states.substream(23, i))) >= -1e-8


def test_measurement_basis_completeness():
    rng = np.random.default_rng(0)
    for _ in range(10):
        b = measures.MeasurementBasis(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi))
        b0, b1 = b.projectors()
        assert np.abs(b0 + b1 - np.eye(2)).max() <= 1e-14


def test_conditional_entropy_bell_any_basis(bell_pair):
    rng = np.random.default_rng(1)
    for _ in range(5):
        b = measures.MeasurementBasis(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi))
        assert measures.conditional_entropy(bell_pair, b) == pytest.approx(0.0, abs=1e-12)


def test_conditional_entropy_classical_mixture(classically_correlated):
    b = measures.MeasurementBasis(0.0, 0.0)
    assert measures.conditional_entropy(classically_correlated, b) == pytest.approx(
        0.0, abs=1e-12
    )


def test_conditional_entropy_product_state():
    rho_a = np.diag([0.7, 0.3]).astype(complex)
    rho_b = np.diag([0.4, 0.6]).astype(complex)
    rho = np.kron(rho_a, rho_b)
    s_a = linalg.von_neumann_entropy(rho_a)
    rng = np.random.default_rng(2)
    for _ in range(5):
        b = measures.MeasurementBasis(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi))
        assert measures.conditional_entropy(rho, b) == pytest.approx(s_a, abs=1e-12)


def test_conditional_entropy_matches_projector_route():
    # cross-check the vectorized evaluator against a direct projector build
    rng = np.random.default_rng(3)
    psi = states.haar_random(rng)
    rho = states.reduced(psi, {"A", "B"})
    for _ in range(10):
        basis = measures.MeasurementBasis(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi))
        direct = 0.0
        for proj in basis.projectors():
            big = np.kron(np.eye(2), proj)
            post = big @ rho @ big
            p = float(post.trace().real)
            if p > 1e-12:
                direct += p * linalg.von_neumann_entropy(
                    linalg.partial_trace(post / p, {"A"}, parties=("A", "B"))
                )
        assert measures.conditional_entropy(rho, basis) == pytest.approx(direct, abs=1e-10)


def test_discord_bell(bell_pair):
    res = measures.discord(bell_pair)
    assert res.value == pytest.approx(1.0, abs=1e-6)
    assert res.converged


def test_discord_classical_mixture(classically_correlated):
    assert measures.discord(classically_correlated).value == pytest.approx(0.0, abs=1e-6)


def test_discord_product_state():
    rho = np.kron(np.diag([0.7, 0.3]), np.diag([0.4, 0.6])).astype(complex)
    assert measures.discord(rho).value == pytest.approx(0.0, abs=1e-6)


def test_discord_measured_first_on_symmetric_marginal(w_state):
    rho = states.reduced(w_state, {"A", "B"})
    second = measures.discord(rho, measured="second").value
    first = measures.discord(rho, measured="first").value
    assert first == pytest.approx(second, abs=1e-6)  # W marginal is symmetric


def test_discord_dominance_over_probe_bases():
    # the grid-plus-refinement minimum must not exceed any probed basis value
    rng = np.random.default_rng(4)
    for i in range(50):
        psi = states.haar_random(states.substream(24, i))
        rho = states.reduced(psi, {"A", "B"})
        res = measures.discord(rho)
        s_b = linalg.von_neumann_entropy(linalg.partial_trace(rho, {"B"}, parties=("A", "B")))
        s_ab = linalg.von_neumann_entropy(rho)
        for _ in range(50):
            b = measures.MeasurementBasis(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi))
            probe = s_b - s_ab + measures.conditional_entropy(rho, b)
            assert res.value <= probe + 1e-9


def test_discord_pure_cut(ghz):
    assert measures.discord_pure_cut(ghz, "A") == pytest.approx(1.0, abs=1e-12)
    assert measures.discord_pure_cut(states.named_state("product000"), "A") == 0.0
    for alpha in (0.25, 1.5):
        assert measures.discord_pure_cut(states.mdcc(alpha), "A") == pytest.approx(
            1.0, abs=1e-10
        )


def test_discord_monogamy_score_reference(ghz, w_state):
    assert measures.discord_monogamy_score(ghz) == pytest.approx(1.0, abs=1e-6)
    assert measures.discord_monogamy_score(states.named_state("product000")) == pytest.approx(
        0.0, abs=1e-6
    )
    assert measures.discord_monogamy_score(w_state) == pytest.approx(DELTA_D_W, abs=1e-6)


def test_local_unitary_invariance_of_measures():
    for i in range(25):
        rng = states.substream(25, i)
        psi = states.haar_random(rng)
        psi2 = states.apply_product_unitary(psi, *states.random_product_unitary(rng))
        assert abs(measures.ggm(psi) - measures.ggm(psi2)) <= 1e-8
        assert abs(measures.tangle(psi) - measures.tangle(psi2)) <= 1e-8
        c1 = measures.concurrence(states.reduced(psi, {"A", "B"}))
        c2 = measures.concurrence(states.reduced(psi2, {"A", "B"}))
        assert abs(c1 - c2) <= 1e-8
