# -*- coding:utf-8 -*-
import numpy as np
import pytest

from DGMultigrid.common import build_initial_mesh, refine_uniform, build_hierarchy, mesh_summary_csv, dump_mesh
from DGMultigrid.errors import InvalidArgumentError


@pytest.mark.parametrize('n, shape, counts', [
    (4, 'quad', (16, 24, 16)),
    (1, 'quad', (1, 0, 4)),
    (1, 'triangle', (2, 1, 4)),
    (4, 'triangle', (32, 40, 16)),
])
def test_initial_mesh_counts(n, shape, counts):
    mesh = build_initial_mesh(n_cells_per_side=n, shape=shape)
    assert (mesh.n_elements, mesh.n_interior_faces, mesh.n_boundary_faces) == counts
    assert mesh.area == pytest.approx(1.)


def test_quad_spacing_and_diameter(quad_mesh):
    assert quad_mesh.h_k == pytest.approx(.25)
    assert quad_mesh.max_diameter == pytest.approx(.25 * np.sqrt(2))
    assert quad_mesh.quasi_uniformity == pytest.approx(1.)


def test_triangle_spacing(tri_mesh):
    assert tri_mesh.h_k == pytest.approx(.25)
    assert np.allclose(tri_mesh.dets, .0625)


@pytest.mark.parametrize('kwargs', [
    {'n_cells_per_side': 0},
    {'n_cells_per_side': 2.5},
    {'n_cells_per_side': 2, 'shape': 'hexagon'},
    {'n_cells_per_side': 2, 'domain': (1., 0., 0., 1.)},
])
def test_initial_mesh_rejects_bad_input(kwargs):
    with pytest.raises(InvalidArgumentError):
        build_initial_mesh(**kwargs)


@pytest.mark.parametrize('shape', ['quad', 'triangle'])
def test_faces_are_consistent(shape):
    mesh = refine_uniform(build_initial_mesh(n_cells_per_side=2, shape=shape))
    for face in mesh.faces:
        plus = mesh.elements[face.element_plus]
        centroid = mesh.vertices[list(plus.vertex_ids)].mean(axis=0)
        midpoint = face.coords.mean(axis=0)
        # 法向指向plus单元外侧
        assert face.normal @ (midpoint - centroid) > 0
        assert np.linalg.norm(face.normal) == pytest.approx(1.)
        if not face.is_boundary:
            minus = mesh.elements[face.element_minus]
            assert set(face.endpoints) <= set(plus.vertex_ids)
            assert set(face.endpoints) <= set(minus.vertex_ids)
        else:
            x0, x1, y0, y1 = mesh.domain
            x, y = midpoint
            assert min(abs(x - x0), abs(x - x1), abs(y - y0), abs(y - y1)) < 1e-14
    for e, faces in enumerate(mesh.element_faces):
        assert len(faces) == len(mesh.elements[e].vertex_ids)


def test_refine_quads(quad_mesh):
    fine = refine_uniform(quad_mesh)
    assert fine.n_elements == 64
    assert fine.h_k == pytest.approx(.125)
    assert fine.is_refinement_of(quad_mesh)
    assert quad_mesh.elements[3].child_ids == (12, 13, 14, 15)
    assert all(fine.elements[c].parent_id == 3 for c in quad_mesh.elements[3].child_ids)


def test_refine_triangles():
    mesh = build_initial_mesh(n_cells_per_side=1, shape='triangle')
    fine = refine_uniform(mesh)
    assert fine.n_elements == 8
    assert np.allclose(fine.dets, mesh.dets[0] / 4)


def test_children_follow_reference_map():
    for shape in ('quad', 'triangle'):
        coarse = build_initial_mesh(n_cells_per_side=2, shape=shape)
        fine = refine_uniform(coarse)
        ref = np.array([[.2, .1], [.3, .4], [.05, .6]])
        for child in fine.elements:
            parent = coarse.elements[child.parent_id]
            S, t = child.ref_map
            assert np.allclose(child.map(ref), parent.map(ref @ S.T + t), atol=1e-14)


def test_grandchildren_are_congruent():
    fine = refine_uniform(refine_uniform(build_initial_mesh(n_cells_per_side=1, shape='quad')))
    assert fine.n_elements == 16
    for element in fine.elements:
        assert np.allclose(element.jacobian, fine.elements[0].jacobian, atol=1e-14)


def test_inverse_map(tri_mesh):
    element = tri_mesh.elements[5]
    ref = np.array([[.1, .2], [.7, .1]])
    assert np.allclose(element.inverse_map(element.map(ref)), ref)


def test_h_hierarchy(quad_mesh):
    hierarchy, degrees = build_hierarchy(quad_mesh, ['h', 'h', 'h'], 1)
    assert hierarchy.K == 4
    assert np.allclose(hierarchy.spacings, [.25, .125, .0625, .03125])
    assert degrees == [1, 1, 1, 1]
    assert hierarchy.level(1) is quad_mesh


def test_p_hierarchy_keeps_mesh():
    mesh = build_initial_mesh(n_cells_per_side=16)
    hierarchy, degrees = build_hierarchy(mesh, ['p', 'p', 'p'], 2)
    assert degrees == [2, 3, 4, 5]
    assert all(level is mesh for level in hierarchy.levels)
    assert mesh.h_k == pytest.approx(.0625)


def test_hp_hierarchy(quad_mesh):
    hierarchy, degrees = build_hierarchy(quad_mesh, ['hp'], 1, p_increment=2)
    assert degrees == [1, 3]
    assert hierarchy.level(2).n_elements == 64


def test_single_level_hierarchy(quad_mesh):
    hierarchy, degrees = build_hierarchy(quad_mesh, [], 3)
    assert hierarchy.K == 1
    assert degrees == [3]
    with pytest.raises(InvalidArgumentError):
        hierarchy.level(2)


@pytest.mark.parametrize('steps, p_1, inc', [(['x'], 1, 1), (['h'], 0, 1), (['p'], 1, -1)])
def test_hierarchy_rejects_bad_input(quad_mesh, steps, p_1, inc):
    with pytest.raises(InvalidArgumentError):
        build_hierarchy(quad_mesh, steps, p_1, inc)


def test_element_out_of_range(quad_mesh):
    with pytest.raises(InvalidArgumentError):
        quad_mesh.element(16)


def test_summary_csv(quad_mesh, tmp_path):
    hierarchy, degrees = build_hierarchy(quad_mesh, ['h'], 2)
    path = tmp_path / 'mesh.csv'
    text = mesh_summary_csv(hierarchy, degrees, path)
    lines = text.splitlines()
    assert lines[0] == 'level,shape,elements,interior_faces,boundary_faces,h_k,max_diameter,p'
    assert lines[1].startswith('1,quad,16,24,16,0.25,')
    assert lines[2].startswith('2,quad,64,112,32,0.125,')
    assert path.read_text(encoding='utf-8') == text


def test_dump_mesh():
    text = dump_mesh(build_initial_mesh(n_cells_per_side=1, shape='triangle'))
    assert 'interior' in text
    assert text.count('boundary') == 4
