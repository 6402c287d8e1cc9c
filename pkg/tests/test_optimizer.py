import numpy as np
import pytest
from pydantic import ValidationError  # pylint: disable=no-name-in-module

from gmocso.metrics import FrontPair, rgd, spacing
from gmocso.optimizer import (Gmocso, GmocsoConfig, greedy_select, initialize, iterate, run,
                              seeking_step, tracing_step)
from gmocso.problems import PROBLEMS, get_problem
from gmocso.utils import ConfigError
from tests.conftest import brute_force_non_dominated, solution

SMALL = dict(population_size=10, max_iterations=10, archive_capacity=15)


def small_problem(problem_id: str = "ZDT1"):
    return get_problem(problem_id, n_vars=6) if problem_id != "PressureVessel" else get_problem(problem_id)


def test_defaults():
    cfg = GmocsoConfig()
    assert (cfg.population_size, cfg.max_iterations, cfg.smp, cfg.cdc, cfg.n_grid) == (100, 100, 2, 1, 10)
    assert (cfg.c1, cfg.inertia_weight, cfg.srd, cfg.archive_capacity) == (1.0, 1.0, 1.0, 100)


def test_config_rejects_unknown_keys_and_bad_values():
    with pytest.raises(ValidationError):
        GmocsoConfig(population=5)
    with pytest.raises(ValidationError):
        GmocsoConfig(smp=0)
    with pytest.raises(ValidationError):
        GmocsoConfig(seed=-1)


def test_cdc_larger_than_dimension():
    with pytest.raises(ConfigError):
        initialize(GmocsoConfig(cdc=5), get_problem("PressureVessel"))


def test_initialize_state():
    problem = small_problem()
    state = initialize(GmocsoConfig(**SMALL), problem)
    assert len(state.population) == 10
    assert state.iteration == 0
    assert 1 <= len(state.archive) <= 15
    assert all(np.all(cat.velocity == 0) for cat in state.population)
    assert brute_force_non_dominated(state.archive.objectives()).all()
    assert state.grid.size == len(state.archive)


def test_same_seed_same_front():
    problem = small_problem()
    first = run(GmocsoConfig(seed=11, **SMALL), problem)
    second = run(GmocsoConfig(seed=11, **SMALL), problem)
    assert first.final_front == second.final_front
    assert first.final_positions == second.final_positions


def test_different_seed_different_front():
    problem = small_problem()
    first = run(GmocsoConfig(seed=1, **SMALL), problem)
    second = run(GmocsoConfig(seed=2, **SMALL), problem)
    assert first.final_front != second.final_front


def test_zero_iterations():
    result = run(GmocsoConfig(max_iterations=0, population_size=6), small_problem())
    assert result.iterations_completed == 0
    assert len(result.archive_sizes) == 1
    assert len(result.final_front) == result.archive_sizes[0]


def test_run_result_shape():
    result = run(GmocsoConfig(seed=3, **SMALL), small_problem())
    assert result.iterations_completed == 10
    assert len(result.archive_sizes) == 11
    assert len(result.final_front) == len(result.final_positions)
    assert all(len(x) == 6 for x in result.final_positions)
    assert result.elapsed_seconds >= 0


@pytest.mark.parametrize("problem_id", list(PROBLEMS))
def test_archive_invariants_every_iteration(problem_id):
    problem = small_problem(problem_id)
    config = GmocsoConfig(population_size=5, max_iterations=20, archive_capacity=8, seed=5)
    seen = []

    def check(state):
        objectives = state.archive.objectives()
        assert len(state.archive) <= config.archive_capacity
        assert brute_force_non_dominated(objectives).all()
        assert len(state.population) == config.population_size
        for cat in state.population:
            assert np.all(cat.position >= problem.lower_bounds)
            assert np.all(cat.position <= problem.upper_bounds)
            for dim, step in problem.discrete_dims.items():
                assert cat.position[dim] / step == pytest.approx(round(cat.position[dim] / step))
        for member in state.population + state.archive.members:
            np.testing.assert_array_equal(member.objectives, problem.evaluate(member.position))
        seen.append(state.iteration)

    result = Gmocso(config=config, problem=problem).run(callback=check)
    assert seen == list(range(21))
    assert len(result.final_front) <= config.archive_capacity
    assert brute_force_non_dominated(np.array(result.final_front)).all()


def test_pressure_vessel_violation_objective():
    problem = get_problem("PressureVessel")
    result = run(GmocsoConfig(population_size=10, max_iterations=5, seed=4), problem)
    for x, (_, f2) in zip(result.final_positions, result.final_front):
        assert f2 == pytest.approx(sum(max(-g, 0.0) for g in problem.constraints(x)))


def test_per_dimension_tracing_draws():
    problem = small_problem()
    result = run(GmocsoConfig(per_dimension_rand=True, seed=8, **SMALL), problem)
    assert result.iterations_completed == 10
    other = run(GmocsoConfig(per_dimension_rand=False, seed=8, **SMALL), problem)
    assert result.final_front != other.final_front


def test_seeking_with_single_candidate_is_a_no_op():
    problem = small_problem()
    config = GmocsoConfig(smp=1, **SMALL)
    state = initialize(config, problem)
    before = [cat.position.copy() for cat in state.population]
    rng_state = state.rng.bit_generator.state
    seeking_step(state, config, problem)
    assert all(np.array_equal(b, cat.position) for b, cat in zip(before, state.population))
    assert state.rng.bit_generator.state == rng_state


def test_iterate_advances_counter():
    problem = small_problem()
    config = GmocsoConfig(**SMALL)
    state = initialize(config, problem)
    iterate(state, config, problem)
    iterate(state, config, problem)
    assert state.iteration == 2


def test_greedy_select_single_survivor_draws_nothing(rng):
    state = rng.bit_generator.state
    assert greedy_select(np.array([[1.0, 1.0], [0.5, 0.5], [2.0, 0.6]]), rng) == 1
    assert rng.bit_generator.state == state


def test_greedy_select_is_uniform_over_survivors():
    rng = np.random.default_rng(3)
    objectives = np.array([[0.0, 1.0], [1.0, 0.0], [2.0, 2.0]])
    picks = [greedy_select(objectives, rng) for _ in range(2000)]
    assert 2 not in picks
    assert 900 < picks.count(0) < 1100



def one_cat_state(position, velocity, **overrides):
    problem = get_problem("ZDT1", n_vars=2)
    config = GmocsoConfig(population_size=1, **overrides)
    state = initialize(config, problem)
    cat = state.population[0]
    cat.position = np.array(position, dtype=float)
    cat.velocity = np.array(velocity, dtype=float)
    return state, config, problem


def test_tracing_leaves_cat_on_leader_in_place():
    state, config, problem = one_cat_state([0.3, 0.6], [0.0, 0.0])
    leader = state.population[0].clone()
    tracing_step(state, config, problem, leader)
    cat = state.population[0]
    assert cat.position.tolist() == [0.3, 0.6]
    assert cat.velocity.tolist() == [0.0, 0.0]


def test_tracing_without_attraction_drifts_by_velocity():
    state, config, problem = one_cat_state([0.5, 0.5], [0.2, 0.2], c1=0.0)
    tracing_step(state, config, problem, solution(0.0, 1.0))
    cat = state.population[0]
    assert cat.position.tolist() == pytest.approx([0.7, 0.7])
    np.testing.assert_array_equal(cat.objectives, problem.evaluate(cat.position))


def test_tracing_clamps_to_upper_bound():
    state, config, problem = one_cat_state([0.9, 0.9], [0.5, 0.5], c1=0.0)
    tracing_step(state, config, problem, solution(0.0, 1.0))
    assert state.population[0].position.tolist() == [1.0, 1.0]


def test_unbounded_archive_matches_filter_of_everything_offered():
    problem = small_problem()
    config = GmocsoConfig(population_size=5, max_iterations=10, archive_capacity=10**6, seed=21)
    offered = []

    def front_of(rows):
        points = np.vstack(rows)
        return {tuple(p) for p in points[brute_force_non_dominated(points)].tolist()}

    def check(state):
        if offered:
            assert {tuple(p) for p in state.archive.objectives().tolist()} == front_of(offered)
        offered.append(np.stack([cat.objectives for cat in state.population]))

    result = run(config, problem, callback=check)
    assert {tuple(p) for p in result.final_front} == front_of(offered)


@pytest.mark.slow
def test_archive_improves_over_the_run():
    problem = get_problem("ZDT1")
    reference = problem.reference_front(1000)

    def mean_rgd(iterations):
        fronts = [run(GmocsoConfig(seed=s, max_iterations=iterations), problem).final_front for s in range(30)]
        return np.mean([rgd(FrontPair(reference=reference, approximate=f)) for f in fronts])

    assert mean_rgd(100) < mean_rgd(1)

@pytest.mark.slow
def test_zdt1_reproduction():
    problem = get_problem("ZDT1")
    reference = problem.reference_front(1000)
    results = [run(GmocsoConfig(seed=seed), problem) for seed in range(30)]
    rgds = [rgd(FrontPair(reference=reference, approximate=r.final_front)) for r in results]
    spacings = [spacing(r.final_front) for r in results]
    assert np.mean(rgds) <= 0.05
    assert np.mean(spacings) <= 0.3
    assert max(r.elapsed_seconds for r in results) <= 60


@pytest.mark.slow
@pytest.mark.parametrize("problem_id", ["ZDT2", "ZDT3", "ZDT6"])
def test_zdt_reproduction(problem_id):
    problem = get_problem(problem_id)
    reference = problem.reference_front(1000)
    rgds = [
        rgd(FrontPair(reference=reference, approximate=run(GmocsoConfig(seed=s), problem).final_front))
        for s in range(30)
    ]
    assert np.mean(rgds) <= 0.1


@pytest.mark.slow
def test_pressure_vessel_finds_feasible_design():
    problem = get_problem("PressureVessel")
    fronts = [run(GmocsoConfig(seed=s), problem).final_front for s in range(30)]
    assert any(f2 == 0.0 for front in fronts for _, f2 in front)


@pytest.mark.slow
@pytest.mark.xfail(reason="multimodal g; default seeking settings stall far from the ZDT4 front", strict=False)
def test_zdt4_stretch_target():
    problem = get_problem("ZDT4")
    reference = problem.reference_front(1000)
    rgds = [
        rgd(FrontPair(reference=reference, approximate=run(GmocsoConfig(seed=s), problem).final_front))
        for s in range(30)
    ]
    assert np.mean(rgds) <= 0.5
