"""Smoke tests for the python bindings."""

import numpy as np
import pytest

import tmsim


def uniform_state(n, level):
    return tmsim.TeamState(np.full((n, n), 1.0 / n), np.full(n, level))


def test_step_preserves_row_sums_and_monotonicity():
    state, params = tmsim.random_team(6, seed=42)
    result = tmsim.step(state, params)
    assert result.state.time == 1
    assert np.allclose(result.state.appraisal.sum(axis=1), 1.0, atol=1e-9)
    assert (result.delta.expertise_change >= -1e-15).all()
    assert result.state.expertise.max() == pytest.approx(state.expertise.max(), abs=1e-12)


def test_validation_reports_name_the_agent():
    state = uniform_state(3, 0.5)
    state.expertise = np.array([0.5, 0.0, 0.5])
    params = tmsim.ModelParams(np.full(3, 0.5), np.full(3, 0.5))
    report = tmsim.validate_initial(state, params)
    assert len(report) == 1
    assert report[0].index == 1
    assert "expertise" in report[0].message

    with pytest.raises(ValueError):
        tmsim.normalized_expertise(np.zeros(3))


def test_simulate_reaches_the_predicted_limit():
    state, params = tmsim.random_team(10, seed=7)
    prediction = tmsim.predict_limit(state, params)
    assert isinstance(prediction, tmsim.ExactLimit)
    trajectory = tmsim.simulate(state, params)
    assert trajectory.converged
    assert np.abs(trajectory.final_state.expertise - prediction.expertise).max() <= 1e-6
    assert np.abs(trajectory.final_state.appraisal - prediction.appraisal).max() <= 1e-6


def test_frobenius_form_on_a_chain():
    m = np.array([[1.0, 0.0, 0.0], [0.5, 0.5, 0.0], [0.0, 0.5, 0.5]])
    decomp = tmsim.frobenius_form(m)
    assert decomp.class_count == 3
    assert [c.members for c in decomp.classes] == [[0], [1], [2]]
    assert decomp.accessibility[0][2]  # transitive access along the chain
    assert not tmsim.is_irreducible(m)
    assert tmsim.classify_structure(m) == tmsim.MatrixStructure.Reducible

    bounds = tmsim.class_bounds(decomp, np.array([0.2, 0.8, 0.5]))
    assert bounds[2].lower == 0.2
    assert bounds[2].upper == 0.8


def test_regimes_and_mixed_prediction():
    params = tmsim.ModelParams(np.array([0.0, 0.5]), np.array([0.5, 0.5]))
    assert tmsim.classify_regime(params) == tmsim.Regime.Mixed

    state = uniform_state(2, 0.5)
    prediction = tmsim.predict_limit(state, params)
    assert isinstance(prediction, tmsim.UnsupportedPrediction)


def test_random_team_is_deterministic():
    state_a, params_a = tmsim.random_team(9, seed=123)
    state_b, params_b = tmsim.random_team(9, seed=123)
    assert (state_a.appraisal == state_b.appraisal).all()
    assert (state_a.expertise == state_b.expertise).all()
    assert (params_a.lambda_ == params_b.lambda_).all()
    assert (params_a.learning == params_b.learning).all()


def test_run_experiment_and_sweep():
    config = tmsim.ExperimentConfig()
    config.n_agents = 5
    config.seed = 11
    summary = tmsim.run_experiment(config)
    assert summary.converged
    assert summary.residuals.expertise <= 1e-6

    grid = tmsim.SweepGrid()
    grid.lambda_values = [0.2, 0.9]
    cells = tmsim.batch_sweep(config, grid, [1, 2, 3])
    assert len(cells) == 6
    assert all(cell.error == "" for cell in cells)


def test_equilibrium_report():
    state = uniform_state(4, 0.6)
    params = tmsim.ModelParams(np.full(4, 0.5), np.full(4, 0.5))
    report = tmsim.is_equilibrium(state, params, 1e-12)
    assert report.is_equilibrium
    assert report.residual_appraisal <= 1e-12

    sums = tmsim.discounted_share_partial_sums(
        [np.full(4, 0.3)] * 50, lambda_=0.5, agent=0
    )
    assert sums[-1] == pytest.approx(0.5, abs=1e-9)
    assert sums == sorted(sums)
    assert sums[-1] <= tmsim.discounted_share_bound(0.5, 4 * 0.3) + 1e-12
