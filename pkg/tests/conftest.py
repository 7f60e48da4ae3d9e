import numpy as np
import pytest

from mdcckit import states


@pytest.fixture
def ghz():
    return states.named_state("ghz")


@pytest.fixture
def w_state():
    return states.named_state("w")


@pytest.fixture
def bell_pair():
    """Two-qubit Bell state (|00> + |11>)/sqrt(2) as a density matrix."""
    psi = np.zeros(4, dtype=complex)
    psi[0] = psi[3] = 2**-0.5
    return np.outer(psi, psi.conj())


@pytest.fixture
def classically_correlated():
    """(|00><00| + |11><11|)/2."""
    return np.diag([0.5, 0.0, 0.0, 0.5]).astype(complex)
