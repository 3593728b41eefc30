import numpy as np
import pytest

from fbptf.errors import RejectedInputError
from fbptf.l21.config import L21Config
from fbptf.l21.problem import L21Problem, assemble_problem, extract_e, extract_pq
from fbptf.l21.solver import solve
from fbptf.model.state import reconstruct
from fbptf.numerics.linalg import l21_norm


def _coupling_problem(count=12, dimension=4, seed=0):

    generator = np.random.default_rng(seed)

    return generator.standard_normal((dimension, count)), generator.standard_normal((dimension, count))


def test_sparsest_row_is_selected():

    solution = solve(L21Problem(np.array([[1.0, 2.0]]), np.array([2.0])), L21Config())

    assert solution.get_objective() == pytest.approx(1.0, abs=1e-6)
    assert solution.get_X()[:, 0] == pytest.approx([0.0, 1.0], abs=1e-6)


def test_rows_are_selected_jointly():

    solution = solve(L21Problem(np.array([[1.0, 2.0]]), np.array([[2.0, 4.0]])), L21Config())

    assert solution.get_objective() == pytest.approx(np.sqrt(5.0), abs=1e-6)
    assert np.allclose(solution.get_X()[1], [1.0, 2.0], atol=1e-6)


def test_first_iterate_is_minimum_norm_solution():

    generator = np.random.default_rng(1)
    Z = generator.standard_normal((3, 7))
    B = generator.standard_normal((3, 2))

    solution = solve(L21Problem(Z, B), L21Config())

    assert solution.get_objective_trace()[0] == pytest.approx(l21_norm(np.linalg.pinv(Z) @ B), rel=1e-9)
    assert solution.get_objective() <= solution.get_objective_trace()[0] + 1e-12


def test_objective_does_not_increase():

    F, U = _coupling_problem()

    trace = solve(assemble_problem(F, U, L21Config()), L21Config()).get_objective_trace()

    assert all(current <= previous * (1 + 1e-9) for previous, current in zip(trace, trace[1:]))


def test_solution_is_feasible():

    F, U = _coupling_problem()
    problem = assemble_problem(F, U, L21Config())

    solution = solve(problem, L21Config())

    residual = np.linalg.norm(problem.get_Z() @ solution.get_X() - problem.get_B())

    assert residual <= 1e-8 * max(1.0, np.linalg.norm(problem.get_B()))
    assert solution.get_feasibility_residual() == pytest.approx(residual, abs=1e-12)


def test_structured_and_dense_paths_agree():

    F, U = _coupling_problem(seed=3)
    config = L21Config(max_iter=30)
    problem = assemble_problem(F, U, config)

    structured = solve(problem, config)
    dense = solve(L21Problem(problem.get_Z(), problem.get_B()), config)

    assert np.allclose(structured.get_X(), dense.get_X(), atol=1e-6)


def test_solution_beats_projected_subgradient():

    F, U = _coupling_problem(count=8, dimension=3, seed=5)
    config = L21Config()
    problem = assemble_problem(F, U, config)
    Z, B = problem.get_Z(), problem.get_B()

    pinv = np.linalg.pinv(Z)
    projector = np.eye(Z.shape[1]) - pinv @ Z
    X = pinv @ B
    best = l21_norm(X)

    for step in range(1, 3001):
        norms = np.maximum(np.linalg.norm(X, axis=1, keepdims=True), 1e-12)
        X = X - (0.05 / np.sqrt(step)) * (projector @ (X / norms))
        best = min(best, l21_norm(X))

    assert solve(problem, config).get_objective() <= best * (1 + 1e-3)


def test_coupling_blocks_reproduce_target():

    F, U = _coupling_problem()
    config = L21Config(beta=0.2, delta=2.0)

    solution = solve(assemble_problem(F, U, config), config)
    P, Q = extract_pq(solution, config)

    assert P.shape == (4, 4)
    assert Q.shape == (1, 4)
    assert np.allclose(reconstruct(F, P, Q) - U, config.beta * extract_e(solution).T, atol=1e-8)


def test_intercept_can_be_disabled():

    F, U = _coupling_problem()
    config = L21Config(intercept=False)

    problem = assemble_problem(F, U, config)
    _, Q = extract_pq(solve(problem, config), config)

    assert problem.get_Z().shape == (12, 12 + 4)
    assert np.array_equal(Q, np.zeros((1, 4)))


def test_assembly_rejects_mismatched_shapes():

    with pytest.raises(RejectedInputError):
        assemble_problem(np.ones((3, 4)), np.ones((3, 5)), L21Config())


def test_config_from_beta_gamma():

    config = L21Config.from_beta_gamma(0.1, 0.3)

    assert config.beta == 0.1
    assert config.delta == pytest.approx(3.0)

    with pytest.raises(RejectedInputError):
        L21Config(beta=0.0)

    with pytest.raises(RejectedInputError):
        L21Config(max_iter=0)


def test_every_iterate_records_its_residual():

    F, U = _coupling_problem()
    problem = assemble_problem(F, U, L21Config())

    solution = solve(problem, L21Config())
    residuals = solution.get_residual_trace()

    assert len(residuals) == len(solution.get_objective_trace())
    assert residuals[-1] == solution.get_feasibility_residual()
    assert max(residuals) <= 1e-8 * (1.0 + np.linalg.norm(problem.get_B()))


def _random_coupling_problem(generator):

    count = int(generator.integers(2, 21))
    dimension = int(generator.integers(1, 16))

    F = generator.standard_normal((dimension, count))
    U = generator.standard_normal((dimension, count))

    return assemble_problem(F, U, L21Config())


@pytest.mark.slow
def test_random_instances_decrease_stay_feasible_and_beat_pinv():

    generator = np.random.default_rng(2024)

    for _ in range(100):

        problem = _random_coupling_problem(generator)
        Z, B = problem.get_Z(), problem.get_B()

        solution = solve(problem, L21Config())
        trace = solution.get_objective_trace()

        assert all(current <= previous + 1e-10 * max(1.0, previous) for previous, current in zip(trace, trace[1:]))
        assert solution.get_feasibility_residual() <= 1e-8 * (1.0 + np.linalg.norm(B))
        assert solution.get_objective() <= l21_norm(np.linalg.pinv(Z) @ B) + 1e-6


@pytest.mark.slow
def test_random_instances_match_projected_subgradient():

    generator = np.random.default_rng(77)

    for _ in range(10):

        problem = _random_coupling_problem(generator)
        Z, B = problem.get_Z(), problem.get_B()

        pinv = np.linalg.pinv(Z)
        projector = np.eye(Z.shape[1]) - pinv @ Z
        X = pinv @ B
        best = l21_norm(X)

        for step in range(1, 5001):
            norms = np.maximum(np.linalg.norm(X, axis=1, keepdims=True), 1e-12)
            X = X - (0.05 / np.sqrt(step)) * (projector @ (X / norms))
            best = min(best, l21_norm(X))

        assert solve(problem, L21Config()).get_objective() <= best + 1e-3


def test_assembled_constraint_layout():

    F, U = _coupling_problem(count=5, dimension=3)
    config = L21Config(beta=0.2, delta=4.0)

    problem = assemble_problem(F, U, config)
    Z = problem.get_Z()

    assert problem.get_blocks() == (5, 3, 1)
    assert np.array_equal(Z[:, :5], -0.2 * np.eye(5))
    assert np.array_equal(Z[:, 5:8], F.T)
    assert np.array_equal(Z[:, 8], np.full(5, 0.25))
    assert np.array_equal(problem.get_B(), U.T)


def test_solve_is_deterministic():

    F, U = _coupling_problem(seed=9)
    problem = assemble_problem(F, U, L21Config())

    first, second = solve(problem, L21Config()), solve(problem, L21Config())

    assert np.array_equal(first.get_X(), second.get_X())
    assert first.get_objective_trace() == second.get_objective_trace()
