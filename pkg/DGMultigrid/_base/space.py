# -*- coding:utf-8 -*-
"""
@Project  : DGMultigrid
@License  : BSD-3-Clause

每层的DG空间：参考单元上L²正交归一的模态基、求积表、自由度排布和网格相关内积。
自由度按单元优先排列，每个单元占连续的n_local个位置。
"""
from functools import lru_cache
from logging import getLogger
from pathlib import Path

import numpy as np
from numpy.polynomial.legendre import legvander, legder
from scipy.linalg import cholesky, solve_triangular

from .mesh import SHAPES
from .._functions.quadrature import quad_rule, gauss_line
from .._functions.settings import Settings as _S
from .._functions.tools import rows_to_csv
from ..errors import InvalidArgumentError

logger = getLogger(__name__)


class ReferenceBasis(object):
    """四边形上为张量积Legendre基，三角形上为总次数不超过p的Legendre乘积经Cholesky正交化后的基"""

    def __init__(self, shape, p):
        self.shape = shape
        self.p = p
        if shape == 'quad':
            self.exponents = [(a, b) for a in range(p + 1) for b in range(p + 1)]
        else:
            self.exponents = [(a, total - a) for total in range(p + 1) for a in range(total, -1, -1)]
        self._ax = np.array([a for a, _ in self.exponents])
        self._ay = np.array([b for _, b in self.exponents])
        self._norms = np.sqrt(2. * np.arange(p + 1) + 1.)
        self._dcoef = legder(np.eye(p + 1), axis=0)
        self._coeffs = None
        if shape == 'triangle':
            self._coeffs = self._orthonormalize()

    def __repr__(self):
        return f'<ReferenceBasis {self.shape} p={self.p}>'

    @property
    def n_local(self):
        return len(self.exponents)

    def _legendre(self, t):
        s = 2. * np.asarray(t, dtype=float) - 1.
        v = legvander(s, self.p) * self._norms
        dv = 2. * (legvander(s, self.p - 1) @ self._dcoef) * self._norms
        return v, dv

    def _raw(self, pts):
        pts = np.atleast_2d(pts)
        lx, dlx = self._legendre(pts[:, 0])
        ly, dly = self._legendre(pts[:, 1])
        values = lx[:, self._ax] * ly[:, self._ay]
        grads = np.stack((dlx[:, self._ax] * ly[:, self._ay], lx[:, self._ax] * dly[:, self._ay]), axis=2)
        return values, grads

    def _orthonormalize(self):
        points, weights = quad_rule(self.shape, 2 * self.p + 2)
        raw, _ = self._raw(points)
        coeffs = np.eye(self.n_local)
        # 两遍Cholesky，第二遍修正第一遍的舍入误差
        for _ in range(2):
            v = raw @ coeffs
            gram = v.T @ (weights[:, None] * v)
            lower = cholesky(gram, lower=True)
            coeffs = coeffs @ solve_triangular(lower, np.eye(self.n_local), lower=True).T
        return coeffs

    def values(self, pts):
        """
        :param pts: 参考坐标 (npts, 2)
        :return: (npts, n_local)
        """
        values, _ = self._raw(pts)
        return values if self._coeffs is None else values @ self._coeffs

    def grads(self, pts):
        """
        :param pts: 参考坐标 (npts, 2)
        :return: (npts, n_local, 2)
        """
        _, grads = self._raw(pts)
        return grads if self._coeffs is None else np.einsum('qrd,rn->qnd', grads, self._coeffs)

    def gram(self, degree=None):
        points, weights = quad_rule(self.shape, 2 * self.p + 2 if degree is None else degree)
        v = self.values(points)
        return v.T @ (weights[:, None] * v)


@lru_cache()
def build_basis(shape, p):
    """
    :param shape: 'quad' 或 'triangle'
    :param p: 多项式次数，不小于1
    :return: ReferenceBasis对象
    """
    if isinstance(p, bool) or not isinstance(p, (int, np.integer)) or p < 1:
        raise InvalidArgumentError(_S._lang.DEGREE_TOO_LOW, CURR_VAL=p)
    if shape not in SHAPES:
        raise InvalidArgumentError(_S._lang.UNKNOWN_SHAPE_, shape, ALLOW_VAL=SHAPES)
    return ReferenceBasis(shape, int(p))


class DGLevel(object):
    def __init__(self, mesh, p, index=None):
        """
        :param mesh: MeshLevel对象
        :param p: 本层多项式次数
        :param index: 层号（1起始），可选
        """
        self.mesh = mesh
        self.basis = build_basis(mesh.element_shape, p)
        self.p = int(p)
        self.index = index
        self.basis_kind = 'tensor-product' if mesh.element_shape == 'quad' else 'total-degree'
        self.n_local = self.basis.n_local
        self.n_k = self.n_local * mesh.n_elements
        self.h = mesh.h_k
        self.scale = self.h ** 2

        self.quad_points, self.quad_weights = quad_rule(mesh.element_shape, 2 * self.p + 2)
        self.face_points, self.face_weights = gauss_line(self.p + 2)
        self.values = self.basis.values(self.quad_points)
        self.grads = self.basis.grads(self.quad_points)
        self._trace_cache = {}

    def __repr__(self):
        return f'<DGLevel k={self.index} p={self.p} n_k={self.n_k}>'

    @property
    def shape(self):
        return self.mesh.element_shape

    def dofs(self, element_id):
        return slice(element_id * self.n_local, (element_id + 1) * self.n_local)

    def physical_points(self, ref_points=None):
        """所有单元上求积点的物理坐标 (ne, nq, 2)"""
        ref_points = self.quad_points if ref_points is None else ref_points
        return np.einsum('eij,qj->eqi', self.mesh.jacobians, ref_points) + self.mesh.offsets[:, None, :]

    def physical_grads(self, ref_grads=None):
        """所有单元上基函数的物理梯度 (ne, nq, n_local, 2)"""
        ref_grads = self.grads if ref_grads is None else ref_grads
        return np.einsum('qnj,eji->eqni', ref_grads, self.mesh.inverse_jacobians)

    def trace(self, element_id, points):
        """单元上给定物理点处的基函数值与物理梯度，按参考坐标缓存
        :return: (values (nq, n), grads (nq, n, 2))
        """
        element = self.mesh.elements[element_id]
        ref = element.inverse_map(points)
        key = np.round(ref, 12).tobytes()
        if key not in self._trace_cache:
            self._trace_cache[key] = (self.basis.values(ref), self.basis.grads(ref))
        values, ref_grads = self._trace_cache[key]
        return values, ref_grads @ self.mesh.inverse_jacobians[element_id]

    def zeros(self):
        return GridFunction(self)

    def function(self, coefficients):
        return GridFunction(self, coefficients)


class GridFunction(object):
    def __init__(self, level, coefficients=None):
        self.level = level
        if coefficients is None:
            coefficients = np.zeros(level.n_k)
        coefficients = np.asarray(coefficients, dtype=float)
        if coefficients.shape != (level.n_k,):
            raise InvalidArgumentError(_S._lang.SIZE_MISMATCH_, coefficients.shape, CURR_VAL=level.n_k)
        self.coefficients = coefficients

    def __repr__(self):
        return f'<GridFunction n_k={self.level.n_k}>'

    def __add__(self, other):
        _check_same_level(self, other)
        return GridFunction(self.level, self.coefficients + other.coefficients)

    def __sub__(self, other):
        _check_same_level(self, other)
        return GridFunction(self.level, self.coefficients - other.coefficients)

    def __mul__(self, scalar):
        return GridFunction(self.level, self.coefficients * scalar)

    __rmul__ = __mul__

    def copy(self):
        return GridFunction(self.level, self.coefficients.copy())

    def local(self, element_id):
        self.level.mesh.element(element_id)
        return self.coefficients[self.level.dofs(element_id)]

    def evaluate(self, element_id, ref_point):
        """单元element_id上参考点处的值"""
        pts = np.asarray(ref_point, dtype=float)
        values = self.level.basis.values(pts.reshape(-1, 2)) @ self.local(element_id)
        return float(values[0]) if pts.ndim == 1 else values

    def gradient(self, element_id, ref_point):
        """单元element_id上参考点处的物理梯度"""
        pts = np.asarray(ref_point, dtype=float)
        ref = np.einsum('qnd,n->qd', self.level.basis.grads(pts.reshape(-1, 2)), self.local(element_id))
        grads = ref @ self.level.mesh.inverse_jacobians[element_id]
        return grads[0] if pts.ndim == 1 else grads

    def l2_norm(self):
        # 基函数在每个单元上正交，质量矩阵为det(B)·I
        c = self.coefficients.reshape(-1, self.level.n_local)
        return float(np.sqrt((self.level.mesh.dets * (c ** 2).sum(axis=1)).sum()))

    def save(self, path):
        """保存为CSV：表头level,n_k，之后每行一个系数"""
        text = rows_to_csv(['level', 'n_k'], [[self.level.index if self.level.index is not None else '',
                                               self.level.n_k]])
        text += ''.join(f'{c:.17g}\n' for c in self.coefficients)
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding='utf-8')
        return str(path)

    @classmethod
    def load(cls, path, level):
        lines = Path(path).read_text(encoding='utf-8').splitlines()
        index, n_k = lines[1].split(',')
        if int(n_k) != level.n_k or (index and level.index is not None and int(index) != level.index):
            raise InvalidArgumentError(_S._lang.FILE_HEADER_MISMATCH, PATH=path, CURR_VAL=lines[1])
        return cls(level, np.array([float(i) for i in lines[2:] if i.strip()]))


def _check_same_level(u, v):
    if u.level is not v.level:
        raise InvalidArgumentError(_S._lang.LEVEL_MISMATCH)


def discrete_inner_product(u, v):
    """(u, v)_k = h_k² Σ u_i v_i"""
    _check_same_level(u, v)
    return float(u.level.scale * (u.coefficients @ v.coefficients))


def evaluate(u, element_id, ref_point):
    return u.evaluate(element_id, ref_point)


def evaluate_gradient(u, element_id, ref_point):
    return u.gradient(element_id, ref_point)


def l2_project(f, level):
    """逐单元L²投影，基函数正交归一，系数即参考单元上的求积矩
    :param f: 可向量化调用的f(x, y)
    :param level: DGLevel对象
    :return: GridFunction对象
    """
    x = level.physical_points()
    values = np.broadcast_to(np.asarray(f(x[..., 0], x[..., 1]), dtype=float), x.shape[:2])
    return GridFunction(level, ((values * level.quad_weights) @ level.values).ravel())
