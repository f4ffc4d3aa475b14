import functools

import numpy as np
import pytest

from graphcheck.graph import RhgSpec, build_rhg

# Dense single-qubit matrices, used as an oracle independent of the bit encoding.
PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def dense_pauli(letters: str) -> np.ndarray:
    """Kronecker product of single-qubit Paulis, first letter most significant."""
    return functools.reduce(np.kron, (PAULI_MATRICES[c] for c in letters), np.eye(1, dtype=complex))


def dense_anticommute(a: str, b: str) -> bool:
    A, B = dense_pauli(a), dense_pauli(b)
    if np.allclose(A @ B, -(B @ A)):
        return True
    assert np.allclose(A @ B, B @ A)
    return False


@pytest.fixture(scope="session")
def rhg_222():
    return build_rhg(RhgSpec((2, 2, 2), "periodic"))


@pytest.fixture(scope="session")
def rhg_333():
    return build_rhg(RhgSpec((3, 3, 3), "periodic"))


@pytest.fixture(scope="session")
def rhg_cell():
    return build_rhg(RhgSpec((1, 1, 1), "open"))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
