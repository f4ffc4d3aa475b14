"""Parameter planning, test-vertex selection and one-shot execution.

The test measures X on each chosen vertex and Z on its neighbours, forms the
parity of every stabilizer generator from those outcomes, and accepts only if
all parities are +1. Under Pauli noise on a graph state the parity of S_v is
-1 exactly when the error anticommutes with S_v, which is how
:func:`run_one_shot` evaluates it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from graphcheck.errors import DomainError, InsufficientVertices
from graphcheck.graph import Graph, ball
from graphcheck.noise import BOUND_DOMAIN_MAX, lower_bound, p_flip_exact, upper_bound
from graphcheck.pauli import SinglePauli, SparsePauli, anticommutes


@dataclass(frozen=True)
class ProtocolParams:
    delta: float
    p_th: float
    D: int
    N_test: int
    p_goal: float

    @property
    def measured_qubits(self) -> int:
        return (self.D + 1) * self.N_test

    def as_dict(self) -> dict:
        return {
            "delta": self.delta,
            "p_th": self.p_th,
            "degree": self.D,
            "N_test": self.N_test,
            "p_goal": self.p_goal,
            "measured_qubits": self.measured_qubits,
        }


def _check_inputs(delta: float, p_th: float, D: int) -> float:
    if not 0.0 < delta < 1.0:
        raise DomainError(f"delta must lie in (0, 1), got {delta!r}")
    if not 0.0 < p_th < BOUND_DOMAIN_MAX:
        raise DomainError(f"p_th must lie in (0, 3/8), got {p_th!r}")
    l_th = lower_bound(D, p_th)
    if l_th <= 0.0:
        raise DomainError(f"lower bound l_{D}({p_th}) = {l_th:.3g} is not positive")
    return l_th


def required_n_test(delta: float, p_th: float, D: int) -> int:
    """``ceil(ln(1/delta) / l_D(p_th))``: enough parities to reject above ``p_th``."""
    l_th = _check_inputs(delta, p_th, D)
    return max(1, math.ceil(math.log(1.0 / delta) / l_th))


def compute_params(delta: float, p_th: float, D: int) -> ProtocolParams:
    """Derive ``N_test`` and ``p_goal`` for significance ``delta`` and threshold ``p_th``.

    ``N_test`` comes from :func:`required_n_test`; ``p_goal`` is the largest
    rate with ``u/(1-u) <= (delta/ln(1/delta)) * l_D(p_th)`` where
    ``u = u_D(p_goal)`` is linear in ``p_goal``.

    Raises:
        DomainError: if ``delta`` is not in (0, 1), ``p_th`` is not in
            (0, 3/8), the lower bound at ``p_th`` is not positive, or the
            resulting ``p_goal`` is not below ``p_th`` (which happens once
            ``delta/ln(1/delta)`` approaches 1, i.e. delta above about 0.56).
    """
    l_th = _check_inputs(delta, p_th, D)
    N_test = required_n_test(delta, p_th, D)
    r = delta / math.log(1.0 / delta) * l_th
    p_goal = r / (1.0 + r) / upper_bound(D, 1.0)
    if p_goal >= p_th:
        raise DomainError(
            f"no promise gap: p_goal = {p_goal:.4g} is not below p_th = {p_th:.4g} at delta = {delta:.4g}"
        )
    return ProtocolParams(delta=delta, p_th=p_th, D=D, N_test=N_test, p_goal=p_goal)


@dataclass(frozen=True)
class ParamsReport:
    """Outcome of checking a parameter set against the two promise requirements.

    ``reject_slack`` is ``1 - (1 - l_D(p_th))^N - (1 - delta)`` and
    ``accept_slack`` is ``(1 - u_D(p_goal))^N - (1 - delta)``; each check
    passes when its slack is nonnegative. ``linear_accept_slack`` is the
    slack of the linearised sufficient condition
    ``N <= delta (1 - u) / u``, reported for reference only: the ceiling in
    ``N_test`` can push it slightly negative even when the requirement holds.
    """

    reject_ok: bool
    reject_slack: float
    accept_ok: bool
    accept_slack: float
    linear_accept_ok: bool
    linear_accept_slack: float

    @property
    def passed(self) -> bool:
        return self.reject_ok and self.accept_ok

    def as_dict(self) -> dict:
        return {
            "reject_ok": self.reject_ok,
            "reject_slack": self.reject_slack,
            "accept_ok": self.accept_ok,
            "accept_slack": self.accept_slack,
            "linear_accept_ok": self.linear_accept_ok,
            "linear_accept_slack": self.linear_accept_slack,
            "passed": self.passed,
        }


def verify_params(params: ProtocolParams) -> ParamsReport:
    target = 1.0 - params.delta
    l_th = lower_bound(params.D, params.p_th)
    u_goal = upper_bound(params.D, params.p_goal)
    reject_slack = 1.0 - (1.0 - l_th) ** params.N_test - target
    accept_slack = (1.0 - u_goal) ** params.N_test - target
    if u_goal > 0.0:
        linear_slack = params.delta * (1.0 - u_goal) / u_goal - params.N_test
    else:
        linear_slack = math.inf
    return ParamsReport(
        reject_ok=reject_slack >= 0.0,
        reject_slack=reject_slack,
        accept_ok=accept_slack >= 0.0,
        accept_slack=accept_slack,
        linear_accept_ok=linear_slack >= 0.0,
        linear_accept_slack=linear_slack,
    )


# ---------------------------------------------------------------------------
# Test plans
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TestPlan:
    """Which qubits to measure: X on each test vertex, Z on its neighbours."""

    __test__ = False  # keep pytest from collecting this class

    D: int
    test_vertices: tuple[int, ...]
    z_measure: tuple[tuple[int, ...], ...]

    @property
    def x_measure(self) -> tuple[int, ...]:
        return self.test_vertices

    @property
    def measured_qubits(self) -> int:
        return len(self.test_vertices) + sum(len(z) for z in self.z_measure)

    def stabilizers(self) -> list[SparsePauli]:
        out = []
        for v, zs in zip(self.test_vertices, self.z_measure):
            terms = {u: SinglePauli.Z for u in zs}
            terms[v] = SinglePauli.X
            out.append(SparsePauli(terms))
        return out

    def support_order(self) -> list[int]:
        """Measured qubits grouped per test vertex as ``[v, *neighbours(v)]``."""
        return [q for v, zs in zip(self.test_vertices, self.z_measure) for q in (v, *zs)]

    def to_json(self) -> str:
        return json.dumps(
            {
                "D": self.D,
                "vertices": list(self.test_vertices),
                "x_measure": list(self.x_measure),
                "z_measure": [list(z) for z in self.z_measure],
            },
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text: str | bytes) -> TestPlan:
        doc = json.loads(text)
        vertices = tuple(int(v) for v in doc["vertices"])
        if list(vertices) != [int(v) for v in doc.get("x_measure", vertices)]:
            raise ValueError("x_measure must equal vertices")
        z_measure = tuple(tuple(int(u) for u in z) for z in doc["z_measure"])
        if len(z_measure) != len(vertices):
            raise ValueError("z_measure needs one neighbour list per test vertex")
        return cls(D=int(doc["D"]), test_vertices=vertices, z_measure=z_measure)


def select_test_vertices(g: Graph, D: int, N_test: int) -> TestPlan:
    """Greedily pick ``N_test`` degree-``D`` vertices at pairwise distance >= 3.

    Vertices are scanned in ascending id order; each pick excludes its
    radius-2 ball from later picks.

    Raises:
        InsufficientVertices: if the scan ends with fewer than ``N_test`` picks.
    """
    if N_test < 1:
        raise ValueError(f"N_test must be positive, got {N_test}")
    if D < 1:
        raise ValueError(f"degree must be positive, got {D}")
    chosen: list[int] = []
    blocked: set[int] = set()
    for v in range(g.vertex_count):
        if len(g.adjacency[v]) != D or v in blocked:
            continue
        chosen.append(v)
        if len(chosen) == N_test:
            break
        blocked |= ball(g, v, 2)
    if len(chosen) < N_test:
        raise InsufficientVertices(len(chosen), N_test, D)
    return TestPlan(D=D, test_vertices=tuple(chosen), z_measure=tuple(g.adjacency[v] for v in chosen))


@dataclass(frozen=True)
class Outcome:
    parities: tuple[int, ...]

    @property
    def accept(self) -> bool:
        return all(b == 1 for b in self.parities)


def run_one_shot(plan: TestPlan, error: SparsePauli) -> Outcome:
    return Outcome(tuple(-1 if anticommutes(error, s) else 1 for s in plan.stabilizers()))


def accept_probability_analytic(D: int, p: float, N_test: int) -> float:
    """Probability that none of ``N_test`` disjoint degree-D parities flips."""
    return (1.0 - p_flip_exact(D, p)) ** N_test
