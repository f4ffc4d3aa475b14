import dataclasses
import itertools
import json
import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphcheck.errors import DomainError, InsufficientVertices
from graphcheck.graph import Graph, RhgSpec, build_rhg, stabilizer_generator
from graphcheck.noise import lower_bound, upper_bound
from graphcheck.pauli import SinglePauli, SparsePauli
from graphcheck.protocol import (
    Outcome,
    TestPlan,
    accept_probability_analytic,
    compute_params,
    required_n_test,
    run_one_shot,
    select_test_vertices,
    verify_params,
)


def test_worked_example():
    params = compute_params(1 / 3, 1.4e-2, 4)
    assert params.N_test == 25
    assert float(f"{params.p_goal:.1e}") == 4.0e-3
    assert params.measured_qubits == 125
    assert params.p_goal < params.p_th


def test_worked_example_matches_degree_four_formula():
    delta, p_th = 1 / 3, 1.4e-2
    l4 = 10 / 3 * p_th - 80 / 9 * p_th**2
    r = delta / math.log(1 / delta) * l4
    params = compute_params(delta, p_th, 4)
    assert params.N_test == math.ceil(math.log(1 / delta) / l4)
    assert params.p_goal == pytest.approx(3 / 10 * r / (1 + r), rel=1e-14)


def test_gap_ratio_small_threshold():
    delta = 1 / 3
    limit = delta / math.log(1 / delta)
    assert limit == pytest.approx(0.303, abs=5e-4)
    ratio = compute_params(delta, 1e-7, 4).p_goal / 1e-7
    assert ratio == pytest.approx(limit, rel=1e-5)


def test_delta_near_one_needs_one_vertex():
    assert required_n_test(1 - 1e-9, 0.014, 4) == 1
    assert required_n_test(1 / 3, 0.014, 4) == 25


def test_no_gap_for_large_delta():
    # delta / ln(1/delta) exceeds 1 past delta ~ 0.567, pushing p_goal above p_th
    with pytest.raises(DomainError, match="promise gap"):
        compute_params(0.75, 0.014, 4)
    with pytest.raises(DomainError, match="promise gap"):
        compute_params(1 - 1e-9, 0.014, 4)
    assert compute_params(0.5, 0.014, 4).p_goal < 0.014


@pytest.mark.parametrize(
    "delta,p_th,D",
    [(0.0, 0.01, 4), (1.0, 0.01, 4), (0.3, 0.0, 4), (0.3, 0.375, 4), (0.3, 0.5, 4), (0.3, 0.2, 8)],
)
def test_compute_params_domain(delta, p_th, D):
    with pytest.raises(DomainError):
        compute_params(delta, p_th, D)


def test_verify_worked_example():
    report = verify_params(compute_params(1 / 3, 0.014, 4))
    assert report.reject_ok and report.accept_ok and report.passed
    assert report.reject_slack == pytest.approx(1 - (1 - 0.04492444444) ** 25 - 2 / 3, abs=1e-9)
    # the linearised sufficient condition loses to the ceiling: 25 > 24.45
    assert not report.linear_accept_ok
    assert report.linear_accept_slack == pytest.approx(24.454666 - 25, abs=1e-5)


def test_verify_detects_halved_n_test():
    params = compute_params(1 / 3, 0.014, 4)
    report = verify_params(dataclasses.replace(params, N_test=params.N_test // 2))
    assert not report.reject_ok
    assert report.accept_ok


def test_verify_detects_doubled_p_goal():
    params = compute_params(1 / 3, 0.014, 4)
    report = verify_params(dataclasses.replace(params, p_goal=2 * params.p_goal))
    assert report.reject_ok
    assert not report.accept_ok


@settings(max_examples=200)
@given(st.floats(0.01, 0.5), st.floats(1e-5, 0.05), st.integers(1, 8))
def test_params_are_sound(delta, p_th, D):
    params = compute_params(delta, p_th, D)
    assert params.p_goal < params.p_th
    assert params.measured_qubits == (D + 1) * params.N_test
    report = verify_params(params)
    assert report.reject_ok, report
    # p_goal is tuned to the real-valued bound ln(1/delta)/l_D(p_th); at that
    # N the acceptance requirement holds exactly
    n_real = math.log(1 / delta) / lower_bound(D, p_th)
    u = upper_bound(D, params.p_goal)
    assert (1 - u) ** n_real >= (1 - delta) * (1 - 1e-12)


def test_ceiling_can_break_acceptance_requirement():
    # rounding N_test up can cost a little acceptance probability at p_goal
    params = compute_params(0.01171875, 0.046875, 1)
    report = verify_params(params)
    assert report.reject_ok
    assert not report.accept_ok
    assert -1e-4 < report.accept_slack < 0
    assert accept_probability_analytic(1, params.p_goal, params.N_test) < 1 - params.delta


# -- vertex selection -------------------------------------------------------


def _assert_valid_plan(g, plan, D):
    h = nx.Graph(g.edges())
    h.add_nodes_from(range(g.vertex_count))
    for u, v in itertools.combinations(plan.test_vertices, 2):
        assert nx.shortest_path_length(h, u, v) >= 3
    supports = [s.support for s in plan.stabilizers()]
    assert sum(len(s) for s in supports) == len(frozenset().union(*supports))
    for v, zs in zip(plan.test_vertices, plan.z_measure):
        assert g.degree(v) == D
        assert set(zs) == set(g.adjacency[v])


def test_plan_on_rhg_333(rhg_333):
    assert rhg_333.vertex_count == 162
    plan = select_test_vertices(rhg_333, 4, 25)
    assert len(plan.test_vertices) == 25
    assert plan.measured_qubits == 125
    _assert_valid_plan(rhg_333, plan, 4)


def test_plan_greedy_order(rhg_333):
    plan = select_test_vertices(rhg_333, 4, 25)
    assert list(plan.test_vertices) == sorted(plan.test_vertices)
    assert plan.test_vertices[0] == 0


def test_single_vertex_plan_picks_smallest_id():
    g = Graph.from_edges(8, [(5, 0), (5, 1), (5, 2), (5, 3), (6, 0), (6, 1), (6, 2), (6, 4)])
    plan = select_test_vertices(g, 4, 1)
    assert plan.test_vertices == (5,)
    assert plan.x_measure == (5,)
    assert plan.z_measure == ((0, 1, 2, 3),)


def test_insufficient_vertices():
    path = Graph.from_edges(3, [(0, 1), (1, 2)])
    with pytest.raises(InsufficientVertices) as info:
        select_test_vertices(path, 4, 1)
    assert info.value.found == 0 and info.value.requested == 1
    with pytest.raises(InsufficientVertices) as info:
        select_test_vertices(build_rhg(RhgSpec((2, 2, 2))), 4, 9)
    assert info.value.found == 8


def test_open_lattice_plan():
    g = build_rhg(RhgSpec((3, 3, 3), "open"))
    plan = select_test_vertices(g, 4, 10)
    _assert_valid_plan(g, plan, 4)


def test_plan_json_schema(rhg_333):
    plan = select_test_vertices(rhg_333, 4, 3)
    doc = json.loads(plan.to_json())
    assert set(doc) == {"D", "vertices", "x_measure", "z_measure"}
    assert doc["D"] == 4
    assert doc["vertices"] == doc["x_measure"] == list(plan.test_vertices)
    assert doc["z_measure"] == [list(rhg_333.adjacency[v]) for v in plan.test_vertices]
    assert TestPlan.from_json(plan.to_json()) == plan


def test_plan_stabilizers_match_graph(rhg_333):
    plan = select_test_vertices(rhg_333, 4, 5)
    assert plan.stabilizers() == [stabilizer_generator(rhg_333, v) for v in plan.test_vertices]


# -- one-shot runs ----------------------------------------------------------


@pytest.fixture(scope="module")
def plan_333():
    return select_test_vertices(build_rhg(RhgSpec((3, 3, 3))), 4, 25)


def test_no_error_accepts(plan_333):
    outcome = run_one_shot(plan_333, SparsePauli())
    assert outcome.parities == (1,) * 25
    assert outcome.accept


def test_z_on_test_vertex_rejects(plan_333):
    v = plan_333.test_vertices[3]
    outcome = run_one_shot(plan_333, SparsePauli({v: SinglePauli.Z}))
    assert outcome.parities[3] == -1
    assert outcome.parities.count(-1) == 1
    assert not outcome.accept


def test_error_outside_supports_accepts(plan_333):
    measured = set(plan_333.support_order())
    outside = next(v for v in range(162) if v not in measured)
    assert run_one_shot(plan_333, SparsePauli({outside: SinglePauli.Z})).accept


def test_outcome_accept_rule():
    assert Outcome((1, 1, 1)).accept
    assert not Outcome((1, -1, 1)).accept
    assert Outcome(()).accept


paulis_162 = st.dictionaries(st.integers(0, 161), st.sampled_from([1, 2, 3]), max_size=40).map(SparsePauli)


@given(paulis_162, paulis_162)
def test_locality(plan_333, e1, e2):
    measured = set(plan_333.support_order())
    e2 = SparsePauli({v: op for v, op in e2.items() if v not in measured})
    assert run_one_shot(plan_333, e1 * e2) == run_one_shot(plan_333, e1)
    assert run_one_shot(plan_333, e1) == run_one_shot(plan_333, e1)


def test_analytic_examples():
    assert accept_probability_analytic(4, 0.0, 25) == 1.0
    assert accept_probability_analytic(4, 0.004, 25) == pytest.approx(0.7175, abs=5e-5)
    assert accept_probability_analytic(4, 0.004, 25) >= 2 / 3
    reject = 1 - accept_probability_analytic(4, 0.02, 25)
    assert reject == pytest.approx(0.8045, abs=5e-5)
    assert reject >= 2 / 3


def test_analytic_monotone():
    grid = np.linspace(0, 0.375, 300)
    values = [accept_probability_analytic(4, p, 25) for p in grid]
    assert all(b <= a for a, b in zip(values, values[1:]))
    by_n = [accept_probability_analytic(4, 0.01, n) for n in range(1, 60)]
    assert all(b <= a for a, b in zip(by_n, by_n[1:]))
