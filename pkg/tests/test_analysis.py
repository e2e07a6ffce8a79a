# -*- coding:utf-8 -*-
from types import SimpleNamespace

import numpy as np
import pytest

from DGMultigrid import DGLevel, MethodConfig, CycleParams, assemble_operator, build_initial_mesh
from DGMultigrid.common import (spectral_decompose, norm_s, smoothing_constant, smoothing_ratio_samples,
                                approximation_constant, build_error_propagator, two_level_propagator,
                                stability_constants, inherited_smoothing_constant, continuity_coercivity_constants,
                                dg_norm_level_ratio, convergence_study, estimate_lambda, build_prolongation,
                                make_hierarchy, refine_uniform, wcycle)
from DGMultigrid.errors import CapacityError, InvalidArgumentError
from DGMultigrid._functions.tools import fit_slope


@pytest.fixture
def small_op(quad_level):
    return assemble_operator(quad_level)


@pytest.fixture
def decomp(small_op):
    return spectral_decompose(small_op)


def _energy_norm(op, z):
    return np.sqrt(op.energy(z, z))


def test_single_element_spectrum():
    level = DGLevel(build_initial_mesh(n_cells_per_side=1), 1, 1)
    decomp = spectral_decompose(assemble_operator(level))
    assert len(decomp.eigenvalues) == 4
    assert decomp.eigenvalues[0] > 0


def test_decomposition_reconstructs_operator(small_op, decomp):
    assert decomp.eigenvalues[0] > 0
    assert decomp.reconstruction_error() < 1e-8
    assert decomp.eigenvalues[-1] == pytest.approx(estimate_lambda(small_op, safety=1.), rel=1e-8)


def test_capacity_error(small_op):
    with pytest.raises(CapacityError):
        spectral_decompose(small_op, cap=10)


def test_norms(small_op, decomp, rng):
    v = rng.standard_normal(small_op.n)
    assert norm_s(v, 0, decomp) == pytest.approx(np.sqrt(small_op.scale * (v @ v)), rel=1e-10)
    assert norm_s(v, 1, decomp) ** 2 == pytest.approx(small_op.energy(v, v), rel=1e-10)
    psi = decomp.k_vectors[:, 5]
    assert norm_s(psi, 2, decomp) == pytest.approx(decomp.eigenvalues[5], rel=1e-10)
    both = norm_s(np.column_stack((v, psi)), 1, decomp)
    assert both[0] == pytest.approx(norm_s(v, 1, decomp))


@pytest.mark.parametrize('s', [0., .5, 1.])
def test_generalized_cauchy_schwarz(small_op, decomp, rng, s):
    for _ in range(500):
        v, w = rng.standard_normal((2, small_op.n))
        assert small_op.energy(v, w) <= norm_s(v, 1 + s, decomp) * norm_s(w, 1 - s, decomp) * (1 + 1e-12)


def test_smoothing_constant_trivial_cases(decomp):
    lam = decomp.eigenvalues[-1]
    assert smoothing_constant(decomp, lam, 0, 1, 1) == 1.
    single = SimpleNamespace(eigenvalues=np.array([3.]))
    assert smoothing_constant(single, 3., 1, 2, 0) == 0.
    with pytest.raises(InvalidArgumentError):
        smoothing_constant(decomp, lam, 1, 1, 2)
    with pytest.raises(InvalidArgumentError):
        smoothing_constant(decomp, lam, 1, 3, 0)


def test_random_samples_stay_below_closed_form(decomp):
    lam = decomp.eigenvalues[-1]
    for m in (1, 2, 4):
        sampled = smoothing_ratio_samples(decomp, lam, m, n_samples=1000)
        assert 0 < sampled <= smoothing_constant(decomp, lam, m) * (1 + 1e-10)


def test_smoothing_constant_decays_with_m(decomp):
    lam = decomp.eigenvalues[-1]
    values = [smoothing_constant(decomp, lam, m) for m in (1, 2, 4, 8)]
    assert all(a > b for a, b in zip(values, values[1:]))


@pytest.mark.slow
def test_smoothing_constant_grows_like_p_to_the_fourth(quad_mesh):
    degrees = list(range(1, 11))
    values = []
    for p in degrees:
        decomp = spectral_decompose(assemble_operator(DGLevel(quad_mesh, p)))
        values.append(smoothing_constant(decomp, decomp.eigenvalues[-1], 2))
    # 低次时处于前渐近区，与p²(p+1)²成正比
    assert fit_slope([p ** 2 * (p + 1) ** 2 for p in degrees], values) == pytest.approx(1., abs=.15)
    assert fit_slope(degrees[:5], values[:5]) < fit_slope(degrees[5:], values[5:]) < 4.5


def _approximation(n_cells, p=1):
    mesh = build_initial_mesh(n_cells_per_side=n_cells)
    coarse, fine = DGLevel(mesh, p, 1), DGLevel(refine_uniform(mesh), p, 2)
    return approximation_constant(assemble_operator(fine), assemble_operator(coarse), build_prolongation(coarse, fine))


def test_approximation_constant_decreases_under_refinement():
    coarse, fine = _approximation(2), _approximation(4)
    assert 0 < fine < coarse


@pytest.mark.slow
def test_approximation_constant_h_squared_law():
    values = [_approximation(n) for n in (2, 4, 8)]
    assert np.log2(values[1] / values[2]) == pytest.approx(2., abs=.2)


def test_error_propagator_on_coarsest_level(two_level):
    propagator = build_error_propagator(two_level, 1, CycleParams(1, 1))
    assert not propagator.matrix.any()
    assert propagator.energy_norm == 0.


def test_smoother_is_self_adjoint(two_level, rng):
    op = two_level.operators[-1]
    lam = two_level.lambdas[-1]
    for _ in range(20):
        v, w = rng.standard_normal((2, op.n))
        gv, gw = v - op.apply(v) / lam, w - op.apply(w) / lam
        assert op.energy(gv, w) == pytest.approx(op.energy(v, gw), rel=1e-10, abs=1e-10)


def test_propagator_matches_wcycle(three_level, rng):
    params = CycleParams(2, 1)
    propagator = build_error_propagator(three_level, 3, params)
    e = rng.standard_normal(propagator.matrix.shape[0])
    cycled = wcycle(three_level, 3, np.zeros_like(e), e, params)
    assert np.allclose(cycled, propagator.apply(e), atol=1e-10 * np.abs(cycled).max())


def test_two_level_propagator_matches_full_on_two_levels(two_level):
    params = CycleParams(1, 1)
    full = build_error_propagator(two_level, 2, params)
    two = two_level_propagator(two_level, 2, params)
    assert np.allclose(full.matrix, two.matrix)


def test_energy_norm_equals_asymptotic_contraction(three_level, rng):
    params = CycleParams(2, 2)
    op = three_level.operators[-1]
    propagator = build_error_propagator(three_level, 3, params)
    assert propagator.energy_norm == pytest.approx(propagator.spectral_radius, rel=1e-6)
    e = rng.standard_normal(op.n)
    for _ in range(40):
        previous = e / _energy_norm(op, e)
        e = wcycle(three_level, 3, np.zeros(op.n), previous, params)
    assert _energy_norm(op, e) == pytest.approx(propagator.spectral_radius, abs=.02)


def test_stability_constants_are_level_independent():
    hier = make_hierarchy('SIPG', 'quad', n_cells=4, k=3, p=1)
    coarse, fine = stability_constants(hier, 2), stability_constants(hier, 3)
    for key in ('prolongation', 'projection'):
        assert coarse[key] > 0
        assert fine[key] == pytest.approx(coarse[key], rel=.2)
    with pytest.raises(InvalidArgumentError):
        stability_constants(hier, 1)


def test_inherited_smoothing_scaling():
    hier = make_hierarchy('SIPG', 'quad', n_cells=2, k=3, p=1, mode='inherited')
    normalized = [inherited_smoothing_constant(hier, k, 2)[1] for k in (1, 2, 3)]
    assert max(normalized) / min(normalized) < 1.5


def test_continuity_and_coercivity(small_op):
    constants = continuity_coercivity_constants(small_op)
    assert 0 < constants['coercivity'] <= constants['continuity']


def test_continuity_stable_under_refinement(quad_mesh):
    base = continuity_coercivity_constants(assemble_operator(DGLevel(quad_mesh, 1)))
    finer_h = continuity_coercivity_constants(assemble_operator(DGLevel(refine_uniform(quad_mesh), 1)))
    finer_p = continuity_coercivity_constants(assemble_operator(DGLevel(quad_mesh, 2)))
    for other in (finer_h, finer_p):
        assert other['coercivity'] > 0
        assert 1 / 1.5 < other['continuity'] / base['continuity'] < 1.5


@pytest.mark.parametrize('shape', ['quad', 'triangle'])
def test_dg_norm_grows_under_refinement(shape):
    mesh = build_initial_mesh(n_cells_per_side=2, shape=shape)
    low, high = dg_norm_level_ratio(DGLevel(mesh, 2), DGLevel(refine_uniform(mesh), 2))
    assert low >= 1 - 1e-10
    assert high >= low


def test_convergence_study_p1():
    rows, orders = convergence_study(MethodConfig('SIPG'), 'quad', degrees=[1], n_refinements=3, n_cells=4)
    assert len(rows) == 4
    assert all(a.l2_error > b.l2_error and a.dg_error > b.dg_error for a, b in zip(rows, rows[1:]))
    l2, dg = orders[1]
    assert l2 == pytest.approx(2., abs=.2)
    assert dg == pytest.approx(1., abs=.2)


@pytest.mark.slow
@pytest.mark.parametrize('method, shape', [('SIPG', 'quad'), ('LDG', 'triangle')])
def test_convergence_study_p3(method, shape):
    _, orders = convergence_study(MethodConfig(method), shape, degrees=[3], n_refinements=3, n_cells=4)
    l2, dg = orders[3]
    assert l2 == pytest.approx(4., abs=.3)
    assert dg == pytest.approx(3., abs=.3)
