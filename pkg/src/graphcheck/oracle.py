"""Dense statevector cross-check for small graph states.

Qubit ``k`` is bit ``k`` of the basis-state index (little endian). This
module is deliberately independent of the commutation bookkeeping in
:mod:`graphcheck.pauli`: Paulis are applied as explicit permutations and
phases on the amplitude vector.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from graphcheck.errors import TooManyQubits
from graphcheck.graph import Graph, ball, stabilizer_generator
from graphcheck.noise import p_flip_exact, sample_letters
from graphcheck.pauli import SinglePauli, SparsePauli
from graphcheck.protocol import TestPlan, run_one_shot

MAX_QUBITS = 16


@dataclass(frozen=True)
class DenseState:
    n: int
    amplitudes: np.ndarray

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def _check_size(n: int) -> None:
    if n > MAX_QUBITS:
        raise TooManyQubits(f"{n} qubits exceeds the dense-state cap of {MAX_QUBITS}")


def build_graph_state(g: Graph) -> DenseState:
    """CZ on every edge applied to |+>^n."""
    n = g.vertex_count
    _check_size(n)
    amps = np.full(1 << n, 2.0 ** (-n / 2), dtype=np.complex128)
    index = np.arange(1 << n)
    for u, v in g.edges():
        both = ((index >> u) & 1) & ((index >> v) & 1)
        amps = np.where(both == 1, -amps, amps)
    return DenseState(n, amps)


def _masks(s: SparsePauli, n: int) -> tuple[int, int, int]:
    x_mask = z_mask = n_y = 0
    for v, op in s.items():
        if v >= n:
            raise TooManyQubits(f"Pauli acts on qubit {v} but the state has {n} qubits")
        if op in (SinglePauli.X, SinglePauli.Y):
            x_mask |= 1 << v
        if op in (SinglePauli.Z, SinglePauli.Y):
            z_mask |= 1 << v
        n_y += op is SinglePauli.Y
    return x_mask, z_mask, n_y


def _action(s: SparsePauli, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gather indices and complex factors with ``(s psi)[j] = factor[j] * psi[source[j]]``."""
    x_mask, z_mask, n_y = _masks(s, n)
    source = np.arange(1 << n) ^ x_mask
    signs = 1 - 2 * (np.bitwise_count(source & z_mask) & 1).astype(np.int64)
    return source, (1j**n_y) * signs


def apply_pauli(state: DenseState, s: SparsePauli) -> DenseState:
    """Return ``s |state>``, with Y = iXZ on each site."""
    source, factor = _action(s, state.n)
    return DenseState(state.n, factor * state.amplitudes[source])


def expectation_of_generator(state: DenseState, s: SparsePauli) -> float:
    source, factor = _action(s, state.n)
    return float(np.vdot(state.amplitudes, factor * state.amplitudes[source]).real)


def star_graph(degree: int) -> Graph:
    """Centre 0 joined to leaves ``1..degree``."""
    return Graph.from_edges(degree + 1, [(0, k) for k in range(1, degree + 1)])


def restrict_to_stabilizer(g: Graph, v: int, radius: int = 2) -> tuple[Graph, int]:
    """Induced subgraph on the radius-``radius`` ball around ``v``.

    With radius >= 1 the closed neighbourhood of ``v`` is kept intact, so
    the generator at ``v`` is the same operator in both graphs. Returns the
    subgraph and the new id of ``v``.
    """
    sub, old_ids = g.subgraph(ball(g, v, radius))
    return sub, old_ids.index(v)


@dataclass(frozen=True)
class CrossValidation:
    trials: int
    checked_parities: int
    mismatches: int
    nondeterministic: int
    mean_parity: float
    predicted_mean: float
    stderr: float

    @property
    def deviation(self) -> float:
        return abs(self.mean_parity - self.predicted_mean)

    @property
    def ok(self) -> bool:
        return self.mismatches == 0 and self.nondeterministic == 0


def cross_validate(g: Graph, plan: TestPlan, p: float, trials: int, seed: int) -> CrossValidation:
    """Compare commutation-sign parities with statevector parities on shared errors.

    For each trial an error is drawn on all of ``g``; every test vertex's
    parity is computed by :func:`run_one_shot` and by measuring the
    generator on ``error |G>``. The latter must be exactly +-1.
    ``mean_parity`` averages the first test vertex's parity and is compared
    with ``1 - 2 p_flip`` for that vertex's degree.
    """
    _check_size(g.vertex_count)
    state = build_graph_state(g)
    actions = [_action(stabilizer_generator(g, v), g.vertex_count) for v in plan.test_vertices]
    # same letters sample_error(g, DepolarizingModel(p), seed, trial=t) would draw
    codes = sample_letters(p, seed, np.arange(trials), np.arange(g.vertex_count))
    mismatches = nondeterministic = 0
    total = 0
    for row in codes:
        error = SparsePauli((int(v), SinglePauli(int(c))) for v, c in enumerate(row) if c)
        predicted = run_one_shot(plan, error).parities
        noisy = apply_pauli(state, error).amplitudes
        for k, (source, factor) in enumerate(actions):
            value = float(np.vdot(noisy, factor * noisy[source]).real)
            sign = 1 if value > 0 else -1
            if abs(abs(value) - 1.0) > 1e-9:
                nondeterministic += 1
            if sign != predicted[k]:
                mismatches += 1
            if k == 0:
                total += sign
    degree = len(plan.z_measure[0])
    predicted_mean = 1.0 - 2.0 * p_flip_exact(degree, p)
    mean = total / trials
    stderr = float(np.sqrt(max(1.0 - predicted_mean**2, 0.0) / trials))
    return CrossValidation(
        trials=trials,
        checked_parities=trials * len(actions),
        mismatches=mismatches,
        nondeterministic=nondeterministic,
        mean_parity=mean,
        predicted_mean=predicted_mean,
        stderr=stderr,
    )
