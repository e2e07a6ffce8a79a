# -*- coding:utf-8 -*-
"""
@Project  : DGMultigrid
@License  : BSD-3-Clause

矩形区域上的结构化网格：四边形（笛卡尔）与三角形（统一对角线方向）两类，支持一致（red）加密与h/p/hp层级。
"""
from logging import getLogger
from math import sqrt

import numpy as np

from .._functions.settings import Settings as _S
from .._functions.tools import rows_to_csv
from ..errors import InvalidArgumentError

logger = getLogger(__name__)

SHAPES = ('quad', 'triangle')
STEPS = ('h', 'p', 'hp')

REF_AREA = {'quad': 1., 'triangle': .5}
REF_VERTICES = {'quad': np.array([[0., 0.], [1., 0.], [1., 1.], [0., 1.]]),
                'triangle': np.array([[0., 0.], [1., 0.], [0., 1.]])}

_I2 = np.eye(2) / 2.
# 参考单元的四个子单元，子单元参考坐标到父单元参考坐标的映射 ξ -> S ξ + t
SUBDIVISION = {
    'quad': ((_I2, np.array([0., 0.])),
             (_I2, np.array([.5, 0.])),
             (_I2, np.array([.5, .5])),
             (_I2, np.array([0., .5]))),
    'triangle': ((_I2, np.array([0., 0.])),
                 (_I2, np.array([.5, 0.])),
                 (_I2, np.array([0., .5])),
                 (-_I2, np.array([.5, .5]))),
}


class Element(object):
    def __init__(self, id, shape, vertex_ids, coords, jacobian, offset, parent_id=None, ref_map=None):
        """
        :param id: 单元编号
        :param shape: 'quad' 或 'triangle'
        :param vertex_ids: 逆时针顶点编号
        :param coords: 顶点坐标
        :param jacobian: 仿射映射矩阵B，F(ξ) = Bξ + b
        :param offset: 仿射映射平移b
        :param parent_id: 父单元编号
        :param ref_map: 相对父单元的参考映射(S, t)
        """
        self.id = id
        self.shape = shape
        self.vertex_ids = tuple(vertex_ids)
        self.jacobian = jacobian
        self.offset = offset
        self.parent_id = parent_id
        self.ref_map = ref_map
        self.child_ids = ()
        self.det = float(jacobian[0, 0] * jacobian[1, 1] - jacobian[0, 1] * jacobian[1, 0])
        if self.det <= 0:
            raise InvalidArgumentError(_S._lang.INCORRECT_VAL_, 'jacobian', CURR_VAL=jacobian.tolist())
        self.area = self.det * REF_AREA[shape]
        diff = coords[:, None, :] - coords[None, :, :]
        self.diameter = float(np.sqrt((diff ** 2).sum(axis=2)).max())
        # 结构化网格的网格间距：平行四边形为√面积，三角形为√(2·面积)
        self.size = sqrt(self.area) if shape == 'quad' else sqrt(2. * self.area)

    def __repr__(self):
        return f'<Element {self.id} {self.shape}>'

    def map(self, ref_points):
        return np.asarray(ref_points) @ self.jacobian.T + self.offset

    def inverse_map(self, points):
        return np.linalg.solve(self.jacobian, (np.asarray(points) - self.offset).T).T


class Face(object):
    def __init__(self, id, endpoints, coords, element_plus, element_minus=None):
        """endpoints按plus单元的逆时针方向给出，因此(dy, -dx)即为plus侧外法向"""
        self.id = id
        self.endpoints = tuple(endpoints)
        self.coords = coords
        self.element_plus = element_plus
        self.element_minus = element_minus
        d = coords[1] - coords[0]
        self.length = float(np.hypot(d[0], d[1]))
        self.normal = np.array([d[1], -d[0]]) / self.length

    def __repr__(self):
        return f'<Face {self.id} {self.kind}>'

    @property
    def kind(self):
        return 'boundary' if self.element_minus is None else 'interior'

    @property
    def is_boundary(self):
        return self.element_minus is None

    @property
    def elements(self):
        return (self.element_plus,) if self.element_minus is None else (self.element_plus, self.element_minus)

    def points(self, t):
        """把[0,1]上的参数映射到面上的物理点"""
        return self.coords[0] + np.asarray(t)[:, None] * (self.coords[1] - self.coords[0])


class MeshLevel(object):
    def __init__(self, vertices, elements, element_shape, domain, coarser=None):
        self.vertices = vertices
        self.elements = elements
        self.element_shape = element_shape
        self.domain = domain
        self.coarser = coarser
        self.faces, self.element_faces = _build_faces(vertices, elements)

        sizes = np.array([e.size for e in elements])
        diameters = np.array([e.diameter for e in elements])
        self.h_k = float(sizes.max())
        self.max_diameter = float(diameters.max())
        self.min_diameter = float(diameters.min())

        self.jacobians = np.array([e.jacobian for e in elements])
        self.offsets = np.array([e.offset for e in elements])
        self.dets = np.array([e.det for e in elements])
        self.inverse_jacobians = np.linalg.inv(self.jacobians)
        self.sizes = sizes
        self.diameters = diameters

    def __repr__(self):
        return f'<MeshLevel {self.element_shape} elements={self.n_elements} h={self.h_k:.6g}>'

    @property
    def n_elements(self):
        return len(self.elements)

    @property
    def n_interior_faces(self):
        return sum(1 for f in self.faces if not f.is_boundary)

    @property
    def n_boundary_faces(self):
        return sum(1 for f in self.faces if f.is_boundary)

    @property
    def area(self):
        return float(sum(e.area for e in self.elements))

    @property
    def quasi_uniformity(self):
        return self.min_diameter / self.max_diameter

    def element(self, element_id):
        if not 0 <= element_id < len(self.elements):
            raise InvalidArgumentError(_S._lang.ELEMENT_OUT_OF_RANGE_, element_id)
        return self.elements[element_id]

    def is_refinement_of(self, other):
        return self.coarser is other

    def summary(self):
        return {'shape': self.element_shape,
                'elements': self.n_elements,
                'interior_faces': self.n_interior_faces,
                'boundary_faces': self.n_boundary_faces,
                'h_k': self.h_k,
                'max_diameter': self.max_diameter}


class MeshHierarchy(object):
    def __init__(self, levels, domain, steps=()):
        self.levels = levels
        self.domain = domain
        self.steps = tuple(steps)

    def __repr__(self):
        return f'<MeshHierarchy K={self.K}>'

    def __len__(self):
        return len(self.levels)

    @property
    def K(self):
        return len(self.levels)

    def level(self, k):
        """按1起始的层号取网格"""
        if not 1 <= k <= len(self.levels):
            raise InvalidArgumentError(_S._lang.LEVEL_OUT_OF_RANGE_, k)
        return self.levels[k - 1]

    @property
    def spacings(self):
        return [level.h_k for level in self.levels]


def _check_domain(domain):
    try:
        x0, x1, y0, y1 = (float(i) for i in domain)
    except (TypeError, ValueError):
        raise InvalidArgumentError(_S._lang.INCORRECT_VAL_, 'domain', CURR_VAL=domain)
    if x1 <= x0 or y1 <= y0:
        raise InvalidArgumentError(_S._lang.INCORRECT_VAL_, 'domain', CURR_VAL=domain)
    return x0, x1, y0, y1


def _make_element(id, shape, vertex_ids, vertices, parent_id=None, ref_map=None):
    coords = vertices[list(vertex_ids)]
    if shape == 'quad':
        jacobian = np.column_stack((coords[1] - coords[0], coords[3] - coords[0]))
    else:
        jacobian = np.column_stack((coords[1] - coords[0], coords[2] - coords[0]))
    return Element(id, shape, vertex_ids, coords, jacobian, coords[0].copy(), parent_id, ref_map)


def _build_faces(vertices, elements):
    edges = {}
    for e in elements:
        n = len(e.vertex_ids)
        for i in range(n):
            a, b = e.vertex_ids[i], e.vertex_ids[(i + 1) % n]
            key = (a, b) if a < b else (b, a)
            if key in edges:
                edges[key][1].append(e.id)
            else:
                edges[key] = ((a, b), [e.id])

    faces = []
    element_faces = [[] for _ in elements]
    for num, (ends, owners) in enumerate(edges.values()):
        if len(owners) > 2:
            raise InvalidArgumentError(_S._lang.INCORRECT_VAL_, 'mesh', INFO=f'edge {ends}')
        face = Face(num, ends, vertices[list(ends)], owners[0], owners[1] if len(owners) == 2 else None)
        faces.append(face)
        for i in owners:
            element_faces[i].append(num)
    return faces, [tuple(i) for i in element_faces]


def build_initial_mesh(domain=(0., 1., 0., 1.), n_cells_per_side=4, shape='quad'):
    """生成矩形区域上的结构化网格
    :param domain: (x0, x1, y0, y1)
    :param n_cells_per_side: 每边的单元格数
    :param shape: 'quad' 或 'triangle'，三角形沿左下到右上的对角线切分
    :return: MeshLevel对象
    """
    if isinstance(n_cells_per_side, bool) or not isinstance(n_cells_per_side, (int, np.integer)) \
            or n_cells_per_side < 1:
        raise InvalidArgumentError(_S._lang.NON_POSITIVE_CELLS, CURR_VAL=n_cells_per_side)
    if shape not in SHAPES:
        raise InvalidArgumentError(_S._lang.UNKNOWN_SHAPE_, shape, ALLOW_VAL=SHAPES)
    x0, x1, y0, y1 = _check_domain(domain)

    n = int(n_cells_per_side)
    xs = np.linspace(x0, x1, n + 1)
    ys = np.linspace(y0, y1, n + 1)
    vertices = np.array([(x, y) for y in ys for x in xs])

    elements = []
    for j in range(n):
        for i in range(n):
            v0 = i + j * (n + 1)
            v1, v2, v3 = v0 + 1, v0 + n + 2, v0 + n + 1
            if shape == 'quad':
                elements.append(_make_element(len(elements), shape, (v0, v1, v2, v3), vertices))
            else:
                elements.append(_make_element(len(elements), shape, (v0, v1, v2), vertices))
                elements.append(_make_element(len(elements), shape, (v0, v2, v3), vertices))

    level = MeshLevel(vertices, elements, shape, (x0, x1, y0, y1))
    logger.debug(repr(level))
    return level


def refine_uniform(level):
    """每个单元连接各边中点一分为四，子单元编号为4e..4e+3
    :param level: MeshLevel对象
    :return: 加密后的MeshLevel对象
    """
    shape = level.element_shape
    ref_vertices = REF_VERTICES[shape]
    vertices = [tuple(v) for v in level.vertices]
    midpoints = {}

    def midpoint(a, b):
        key = (a, b) if a < b else (b, a)
        if key not in midpoints:
            midpoints[key] = len(vertices)
            vertices.append(tuple((level.vertices[a] + level.vertices[b]) / 2.))
        return midpoints[key]

    children = []
    for parent in level.elements:
        vids = parent.vertex_ids
        nv = len(vids)
        # 父单元参考坐标放大两倍后的整点 -> 顶点编号
        lookup = {}
        for i in range(nv):
            lookup[tuple((2 * ref_vertices[i]).astype(int))] = vids[i]
            mid = (ref_vertices[i] + ref_vertices[(i + 1) % nv]).astype(int)
            lookup[tuple(mid)] = midpoint(vids[i], vids[(i + 1) % nv])
        if shape == 'quad':
            lookup[(1, 1)] = len(vertices)
            vertices.append(tuple(parent.map(np.array([.5, .5]))))

        ids = []
        for S, t in SUBDIVISION[shape]:
            child_ref = ref_vertices @ S.T + t
            child_vids = [lookup[tuple(np.rint(2 * p).astype(int))] for p in child_ref]
            ids.append(len(children))
            children.append((child_vids, parent.id, (S, t)))
        parent.child_ids = tuple(ids)

    vertices = np.array(vertices)
    elements = [_make_element(num, shape, vids, vertices, parent_id, ref_map)
                for num, (vids, parent_id, ref_map) in enumerate(children)]
    fine = MeshLevel(vertices, elements, shape, level.domain, coarser=level)
    logger.debug(repr(fine))
    return fine


def build_hierarchy(initial, steps, p_1, p_increment=1):
    """由初始网格和步骤列表建立层级
    :param initial: 最粗层MeshLevel
    :param steps: 'h'、'p'、'hp'组成的列表
    :param p_1: 最粗层多项式次数
    :param p_increment: p步骤的次数增量
    :return: (MeshHierarchy对象, 各层次数列表)
    """
    if isinstance(steps, str):
        steps = [steps]
    if p_1 < 1:
        raise InvalidArgumentError(_S._lang.DEGREE_TOO_LOW, CURR_VAL=p_1)
    if p_increment < 0:
        raise InvalidArgumentError(_S._lang.NEGATIVE_P_INCREMENT, CURR_VAL=p_increment)
    for step in steps:
        if step not in STEPS:
            raise InvalidArgumentError(_S._lang.UNKNOWN_STEP_, step, ALLOW_VAL=STEPS)

    levels = [initial]
    degrees = [int(p_1)]
    for step in steps:
        mesh, p = levels[-1], degrees[-1]
        if 'h' in step:
            mesh = refine_uniform(mesh)
        if 'p' in step:
            p += p_increment
        levels.append(mesh)
        degrees.append(p)
    return MeshHierarchy(levels, initial.domain, steps), degrees


def mesh_summary_csv(levels, degrees=None, path=None):
    """网格层级概要导出为CSV
    :param levels: MeshHierarchy或MeshLevel列表
    :param degrees: 各层次数，可选
    :param path: 保存路径，为None时只返回文本
    :return: CSV文本
    """
    if isinstance(levels, MeshHierarchy):
        levels = levels.levels
    header = ['level', 'shape', 'elements', 'interior_faces', 'boundary_faces', 'h_k', 'max_diameter']
    if degrees is not None:
        header.append('p')
    rows = []
    for k, level in enumerate(levels, 1):
        s = level.summary()
        row = [k, s['shape'], s['elements'], s['interior_faces'], s['boundary_faces'],
               f"{s['h_k']:.10g}", f"{s['max_diameter']:.10g}"]
        if degrees is not None:
            row.append(degrees[k - 1])
        rows.append(row)
    return rows_to_csv(header, rows, path)


def dump_mesh(level):
    """调试用的纯文本网格描述"""
    lines = [repr(level), 'vertices:']
    lines.extend(f'  {i}: {x:.10g} {y:.10g}' for i, (x, y) in enumerate(level.vertices))
    lines.append('elements:')
    lines.extend(f'  {e.id}: {" ".join(str(v) for v in e.vertex_ids)} parent={e.parent_id}'
                 for e in level.elements)
    lines.append('faces:')
    for f in level.faces:
        minus = '-' if f.element_minus is None else f.element_minus
        lines.append(f'  {f.id}: {f.endpoints[0]} {f.endpoints[1]} {f.kind} '
                     f'plus={f.element_plus} minus={minus} n=({f.normal[0]:.6g}, {f.normal[1]:.6g})')
    return '\n'.join(lines)
