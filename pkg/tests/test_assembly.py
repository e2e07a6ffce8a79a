# -*- coding:utf-8 -*-
import numpy as np
import pytest
from scipy.io import mmread
from scipy.linalg import eigh

from DGMultigrid import DGLevel, MethodConfig, assemble_operator, build_initial_mesh
from DGMultigrid._base.assembly import _FaceData
from DGMultigrid.common import (assemble_rhs, assemble_lifting, assemble_flux_form, assemble_dg_norm_matrix,
                                penalty, penalty_value, dg_norm, export_operator, l2_project, refine_uniform)
from DGMultigrid.errors import InvalidArgumentError, UnsupportedConfigurationError
from DGMultigrid.items import GridFunction
from DGMultigrid.version import __version__
from .conftest import constant

ALL_METHODS = ['SIPG', 'SIPG_delta', 'LDG', 'BassiEtAl', 'BrezziEtAl']


def test_penalty_values():
    assert penalty_value(10., 1, .25, .25) == pytest.approx(40.)
    assert penalty_value(10., 2, .125) == pytest.approx(320.)
    assert penalty_value(10., 1, .25, .125) == pytest.approx(80.)


def test_face_penalty_uses_spacing(quad_level):
    face = next(f for f in quad_level.mesh.faces if not f.is_boundary)
    assert penalty(face, quad_level, 10.) == pytest.approx(40.)
    assert penalty(face, quad_level, 10., 'diameter') == pytest.approx(40. / np.sqrt(2))


@pytest.mark.parametrize('kwargs', [{'method': 'IIPG'}, {'alpha': 0.}, {'method': 'SIPG_delta', 'delta': 1.5},
                                    {'h_measure': 'area'}])
def test_method_config_rejects_bad_input(kwargs):
    with pytest.raises(InvalidArgumentError):
        MethodConfig(**kwargs)


def test_method_aliases():
    assert MethodConfig('sipg(delta)').method == 'SIPG_delta'
    assert MethodConfig('Bassi').method == 'BassiEtAl'
    assert MethodConfig('ldg', beta=(.5, 0.)).theta == 1
    assert MethodConfig('SIPG_delta').delta == .75


def test_constant_energy_is_boundary_penalty(quad_level):
    one = l2_project(constant(), quad_level).coefficients
    op = assemble_operator(quad_level, MethodConfig('SIPG', 10.))
    assert op.energy(one, one) == pytest.approx(160., rel=1e-12)
    assert dg_norm(GridFunction(quad_level, one)) == pytest.approx(np.sqrt(160.), rel=1e-12)
    assert dg_norm(quad_level.zeros()) == 0.


@pytest.mark.parametrize('shape', ['quad', 'triangle'])
@pytest.mark.parametrize('method', ALL_METHODS)
def test_operator_symmetric_positive_definite(shape, method):
    level = DGLevel(build_initial_mesh(n_cells_per_side=2, shape=shape), 2, 1)
    config = MethodConfig(method, beta=(.3, -.2))
    if config.requires_quads and shape == 'triangle':
        with pytest.raises(UnsupportedConfigurationError):
            assemble_operator(level, config)
        return
    op = assemble_operator(level, config)
    assert op.symmetry_error() < 1e-10
    assert np.linalg.eigvalsh(op.to_dense())[0] > 0


def test_ldg_is_sipg_plus_lifting_product(tri_level):
    sipg = assemble_operator(tri_level, MethodConfig('SIPG'))
    ldg = assemble_operator(tri_level, MethodConfig('LDG'))
    product = assemble_lifting(tri_level, MethodConfig('LDG')).product
    diff = (ldg.matrix - sipg.matrix - product).toarray()
    assert np.abs(diff).max() < 1e-10 * np.abs(ldg.matrix).max()


@pytest.mark.parametrize('method, shape', [('SIPG', 'quad'), ('SIPG', 'triangle'), ('SIPG_delta', 'quad'),
                                           ('SIPG_delta', 'triangle')])
def test_flux_form_matches_lifting_form(method, shape):
    level = DGLevel(build_initial_mesh(n_cells_per_side=3, shape=shape), 2, 1)
    config = MethodConfig(method)
    lifted = assemble_operator(level, config).matrix.toarray()
    flux = assemble_flux_form(level, config).matrix.toarray()
    assert np.abs(lifted - flux).max() < 1e-10 * np.abs(flux).max()


def test_flux_form_rejects_theta_methods(quad_level):
    with pytest.raises(UnsupportedConfigurationError):
        assemble_flux_form(quad_level, MethodConfig('LDG'))


def test_lifting_of_constant_vanishes_inside(quad_level):
    lifting = assemble_lifting(quad_level)
    one = l2_project(constant(), quad_level)
    for face in quad_level.mesh.faces:
        blocks = lifting.face_lifting(face.id, one)
        assert set(blocks) == set(face.elements)
        if not face.is_boundary:
            assert all(np.abs(b).max() < 1e-13 for b in blocks.values())


def test_lifting_support(quad_level, rng):
    lifting = assemble_lifting(quad_level)
    v = rng.standard_normal(quad_level.n_k)
    for face in quad_level.mesh.faces:
        blocks = lifting.face_lifting(face.id, v)
        assert set(blocks) == set(face.elements)
        assert all(b.shape == (2, quad_level.n_local) for b in blocks.values())
    # 只改动面外单元的系数不影响该面的提升
    face = next(f for f in quad_level.mesh.faces if not f.is_boundary)
    w = v.copy()
    outside = [e for e in range(quad_level.mesh.n_elements) if e not in face.elements]
    for e in outside:
        w[e * quad_level.n_local:(e + 1) * quad_level.n_local] = rng.standard_normal(quad_level.n_local)
    before = lifting.face_lifting(face.id, v)
    after = lifting.face_lifting(face.id, w)
    assert all(np.allclose(before[e], after[e]) for e in face.elements)


def test_face_norms_sum_to_stabilization(tri_level, rng):
    lifting = assemble_lifting(tri_level)
    v = rng.standard_normal(tri_level.n_k)
    total = sum(lifting.norm_sq(face.id, v) for face in tri_level.mesh.faces)
    assert total == pytest.approx(v @ (lifting.face_stabilization() @ v), rel=1e-10)


def _face_ratio_bounds(level, alpha=10.):
    """每个面上 α‖r_F(⟦v⟧)‖² / ‖σ^{1/2}⟦v⟧‖²_F 在跳跃值域上的最小、最大值"""
    lifting = assemble_lifting(level)
    dets = level.mesh.dets
    lows, highs = [], []
    for face in level.mesh.faces:
        data = _FaceData(level, face)
        jump = penalty(face, level, alpha) * data.jump.T @ (data.weights[:, None] * data.jump)
        _, _, sides = lifting.faces[face.id]
        lifted = alpha * sum(dets[e] * block.T @ block for e, block in sides)
        values, vectors = np.linalg.eigh(jump)
        basis = vectors[:, values > 1e-10 * values.max()]
        ratios = eigh(basis.T @ lifted @ basis, basis.T @ jump @ basis, eigvals_only=True)
        lows.append(ratios[0])
        highs.append(ratios[-1])
    return min(lows), max(highs)


def test_lifting_bound_independent_of_h():
    """α‖r_F(⟦v⟧)‖² 与 ‖σ^{1/2}⟦v⟧‖²_F 之比的上下界不随h变化"""
    mesh = build_initial_mesh(n_cells_per_side=2)
    lo1, hi1 = _face_ratio_bounds(DGLevel(mesh, 2))
    lo2, hi2 = _face_ratio_bounds(DGLevel(refine_uniform(mesh), 2))
    assert lo1 > 0 and lo2 > 0
    assert lo2 == pytest.approx(lo1, rel=.2)
    assert hi2 == pytest.approx(hi1, rel=.2)


def test_rhs(quad_level):
    zero = assemble_rhs(quad_level, constant(0.))
    assert not zero.coefficients.any()
    b = assemble_rhs(quad_level, constant())
    one = l2_project(constant(), quad_level).coefficients
    assert b.coefficients @ one * quad_level.scale == pytest.approx(1., abs=1e-12)


def test_coercivity_spot_check(quad_level, rng):
    op = assemble_operator(quad_level)
    norm = assemble_dg_norm_matrix(quad_level)
    ratios = []
    for _ in range(100):
        v = rng.standard_normal(quad_level.n_k)
        ratios.append(op.energy(v, v) / (v @ (norm @ v)))
    assert min(ratios) > .05


def test_export_operator(tmp_path):
    level = DGLevel(build_initial_mesh(n_cells_per_side=1), 1, 1)
    op = assemble_operator(level)
    path = export_operator(op, tmp_path / 'op.mtx')
    assert np.allclose(mmread(path).toarray(), op.matrix.toarray())
    assert __version__


def test_switch_flux_lifts_onto_plus_side(tri_level, rng):
    config = MethodConfig('LDG', beta='switch')
    assert config.switch and 'switch' in repr(config)
    lifting = assemble_lifting(tri_level, config)
    v = rng.standard_normal(tri_level.n_k)
    for face in tri_level.mesh.faces:
        blocks = lifting.face_lifting(face.id, v)
        if not face.is_boundary:
            assert np.abs(blocks[face.element_minus]).max() == 0.
            assert np.abs(blocks[face.element_plus]).max() > 0.
    op = assemble_operator(tri_level, config)
    assert op.symmetry_error() < 1e-10
    assert np.linalg.eigvalsh(op.to_dense())[0] > 0
    with pytest.raises(InvalidArgumentError):
        MethodConfig('LDG', beta='upwind')
