# -*- coding:utf-8 -*-
"""
@Project  : DGMultigrid
@License  : BSD-3-Clause

DG方法族的刚度算子组装：SIPG、SIPG(δ)、LDG，以及只用于四边形网格的Bassi和Brezzi两种提升稳定化格式。
所有方法都写成提升算子形式

    A(w, v) = Σ_T ∫ ∇w·∇v + ∫ ∇w·ℒ(v) + ∫ ℒ(w)·∇v + 稳定项 + θ ∫ ℒ(w)·ℒ(v)

其中ℒ = Σ_F (r_F(⟦·⟧) + l_F(β·⟦·⟧))。矩阵M_ij = A(φ_j, φ_i)，系数形式的算子为M / h_k²。
"""
from logging import getLogger

import numpy as np
from scipy.io import mmwrite
from scipy.sparse import bsr_matrix, coo_matrix, diags

from .space import GridFunction, l2_project
from .._functions.settings import Settings as _S
from ..errors import InvalidArgumentError, UnsupportedConfigurationError

logger = getLogger(__name__)

METHODS = ('SIPG', 'SIPG_delta', 'LDG', 'BassiEtAl', 'BrezziEtAl')
_ALIASES = dict({m.lower(): m for m in METHODS},
                **{'sipg(delta)': 'SIPG_delta', 'sipg(δ)': 'SIPG_delta', 'sipg-delta': 'SIPG_delta',
                   'bassi': 'BassiEtAl', 'brezzi': 'BrezziEtAl'})
H_MEASURES = ('size', 'diameter')


class MethodConfig(object):
    def __init__(self, method='SIPG', alpha=10., delta=None, beta=None, h_measure='size'):
        """
        :param method: 'SIPG'、'SIPG_delta'、'LDG'、'BassiEtAl'、'BrezziEtAl'，不区分大小写
        :param alpha: 罚参数α，必须为正
        :param delta: SIPG(δ)的权重，默认0.75
        :param beta: LDG的常向量β，默认(0, 0)；'switch'表示逐面取β = n_F / 2，提升只落在plus侧单元
        :param h_measure: 罚项中h的取法，'size'为网格间距，'diameter'为单元直径
        """
        name = _ALIASES.get(str(method).lower())
        if name is None:
            raise InvalidArgumentError(_S._lang.UNKNOWN_METHOD_, method, ALLOW_VAL=METHODS)
        if not alpha > 0:
            raise InvalidArgumentError(_S._lang.NOT_POSITIVE_, 'alpha', CURR_VAL=alpha)
        if h_measure not in H_MEASURES:
            raise InvalidArgumentError(_S._lang.INCORRECT_VAL_, 'h_measure', ALLOW_VAL=H_MEASURES,
                                       CURR_VAL=h_measure)
        self.method = name
        self.alpha = float(alpha)
        self.h_measure = h_measure

        self.delta = None
        if name == 'SIPG_delta':
            self.delta = .75 if delta is None else float(delta)
            if not 0. <= self.delta <= 1.:
                raise InvalidArgumentError(_S._lang.INCORRECT_VAL_, 'delta', ALLOW_VAL='[0, 1]', CURR_VAL=delta)

        self.beta = np.zeros(2)
        self.switch = False
        if name == 'LDG' and isinstance(beta, str):
            if beta.lower() != 'switch':
                raise InvalidArgumentError(_S._lang.INCORRECT_VAL_, 'beta', ALLOW_VAL="'switch' or (bx, by)",
                                           CURR_VAL=beta)
            self.switch = True
        elif name == 'LDG' and beta is not None:
            self.beta = np.asarray(beta, dtype=float).reshape(2)

    def __repr__(self):
        extra = f' delta={self.delta}' if self.delta is not None else ''
        if self.method == 'LDG':
            extra = ' beta=switch' if self.switch else f' beta=({self.beta[0]:g}, {self.beta[1]:g})'
        return f'<MethodConfig {self.method} alpha={self.alpha:g}{extra}>'

    @property
    def theta(self):
        return 1 if self.method in ('LDG', 'BrezziEtAl') else 0

    @property
    def requires_quads(self):
        return self.method in ('BassiEtAl', 'BrezziEtAl')

    @property
    def lifting_stabilized(self):
        """Bassi/Brezzi格式用α Σ_F ∫ r_F·r_F代替跳跃罚项"""
        return self.method in ('BassiEtAl', 'BrezziEtAl')

    def face_beta(self, face):
        """β·n_F，边界面上为0"""
        if face.is_boundary:
            return 0.
        if self.method == 'SIPG_delta':
            return self.delta - .5
        if self.method == 'LDG':
            return .5 if self.switch else float(self.beta @ face.normal)
        return 0.


class DGOperator(object):
    def __init__(self, level, matrix, kind='assembled', config=None, scale=None):
        """
        :param level: DGLevel对象
        :param matrix: 稀疏矩阵M，M_ij = A(φ_j, φ_i)
        :param kind: 'assembled' 或 'inherited'
        :param config: MethodConfig对象
        :param scale: h_k²，默认取level.scale
        """
        self.level = level
        self.matrix = matrix.tocsr()
        self.kind = kind
        self.config = config
        self.scale = level.scale if scale is None else scale
        self.lambda_max = None

    def __repr__(self):
        return f'<DGOperator {self.kind} n={self.n}>'

    @property
    def n(self):
        return self.matrix.shape[0]

    def apply(self, v):
        """系数形式的算子作用 h_k^{-2} M v"""
        return self.matrix @ v / self.scale

    def energy(self, u, v):
        """A(u, v) = vᵀ M u"""
        return float(v @ (self.matrix @ u))

    def to_dense(self):
        return self.matrix.toarray() / self.scale

    def symmetry_error(self):
        diff = abs(self.matrix - self.matrix.T).max()
        return float(diff / abs(self.matrix).max())

    def export(self, path):
        return export_operator(self, path)


class _Triplets(object):
    def __init__(self):
        self.rows = []
        self.cols = []
        self.vals = []

    def add(self, rows, cols, block):
        rows = np.asarray(rows)
        cols = np.asarray(cols)
        self.rows.append(np.repeat(rows, len(cols)))
        self.cols.append(np.tile(cols, len(rows)))
        self.vals.append(np.asarray(block).ravel())

    def to_csr(self, shape):
        if not self.rows:
            return coo_matrix(shape).tocsr()
        return coo_matrix((np.concatenate(self.vals), (np.concatenate(self.rows), np.concatenate(self.cols))),
                          shape=shape).tocsr()


class _FaceData(object):
    """一个面上的求积点、权重、两侧迹和跳跃矩阵"""

    def __init__(self, level, face):
        self.face = face
        self.points = face.points(level.face_points)
        self.weights = level.face_weights * face.length
        self.sides = []
        for e in face.elements:
            values, grads = level.trace(e, self.points)
            self.sides.append((e, values, grads))
        # ⟦v⟧ = j n_F，j = v⁺ - v⁻
        self.jump = np.hstack([v if i == 0 else -v for i, (_, v, _) in enumerate(self.sides)])
        self.dofs = np.concatenate([np.arange(e * level.n_local, (e + 1) * level.n_local)
                                    for e, _, _ in self.sides])


def _block_diagonal(blocks):
    ne, n, _ = blocks.shape
    return bsr_matrix((blocks, np.arange(ne), np.arange(ne + 1)), shape=(ne * n, ne * n)).tocsr()


def _side_weights(config, face):
    if face.is_boundary:
        return (1.,)
    b = config.face_beta(face) if config is not None else 0.
    return .5 + b, .5 - b


def penalty_value(alpha, p, h_plus, h_minus=None):
    """σ = α p² / min(h⁺, h⁻)，边界面只有h⁺"""
    h = h_plus if h_minus is None else min(h_plus, h_minus)
    return alpha * p ** 2 / h


def penalty(face, level, alpha, h_measure='size'):
    """
    :param face: Face对象
    :param level: DGLevel对象
    :param alpha: 罚参数
    :param h_measure: 'size' 或 'diameter'
    :return: σ_F
    """
    h = level.mesh.sizes if h_measure == 'size' else level.mesh.diameters
    minus = None if face.is_boundary else h[face.element_minus]
    return penalty_value(alpha, level.p, h[face.element_plus], minus)


class LiftingFactors(object):
    """每个面的局部提升块以及整体提升矩阵

    向量场系数排布为(e, d, i) -> (2e + d) n_local + i。
    """

    def __init__(self, level, faces, matrix):
        self.level = level
        self.faces = faces
        self.matrix = matrix
        self.mass = np.repeat(level.mesh.dets, 2 * level.n_local)

    def __repr__(self):
        return f'<LiftingFactors faces={len(self.faces)}>'

    def face_lifting(self, face_id, v):
        """ℒ_F(v)在各相邻单元上的系数
        :return: {单元编号: (2, n_local)数组}
        """
        dofs, normal, sides = self.faces[face_id]
        v = np.asarray(getattr(v, 'coefficients', v))[dofs]
        return {e: np.outer(normal, block @ v) for e, block in sides}

    def norm_sq(self, face_id, v):
        """‖ℒ_F(v)‖²_{L²(Ω)}"""
        dofs, _, sides = self.faces[face_id]
        v = np.asarray(getattr(v, 'coefficients', v))[dofs]
        dets = self.level.mesh.dets
        return float(sum(dets[e] * np.sum((block @ v) ** 2) for e, block in sides))

    @property
    def product(self):
        """∫ ℒ(w)·ℒ(v) 的矩阵"""
        return (self.matrix.T @ diags(self.mass) @ self.matrix).tocsr()

    def face_stabilization(self):
        """Σ_F ∫ ℒ_F(w)·ℒ_F(v) 的矩阵"""
        n = self.level.n_k
        triplets = _Triplets()
        dets = self.level.mesh.dets
        for dofs, _, sides in self.faces:
            local = sum(dets[e] * block.T @ block for e, block in sides)
            triplets.add(dofs, dofs, local)
        return triplets.to_csr((n, n))


def assemble_lifting(level, config=None):
    """组装提升算子r_F(⟦·⟧) + l_F(β·⟦·⟧)

    单元s上分量d的系数为 n_d · L_s v，L_s = -(ω_s / J_s) V_sᵀ diag(W) [V⁺, -V⁻]，
    内部面ω± = 1/2 ± β·n_F，边界面ω = 1。
    :param level: DGLevel对象
    :param config: MethodConfig对象，None时β = 0
    :return: LiftingFactors对象
    """
    n = level.n_local
    dets = level.mesh.dets
    triplets = _Triplets()
    faces = []
    for face in level.mesh.faces:
        data = _FaceData(level, face)
        weighted_jump = data.weights[:, None] * data.jump
        sides = []
        for (e, values, _), omega in zip(data.sides, _side_weights(config, face)):
            block = -(omega / dets[e]) * (values.T @ weighted_jump)
            sides.append((e, block))
            for d in range(2):
                triplets.add(np.arange((2 * e + d) * n, (2 * e + d + 1) * n), data.dofs, face.normal[d] * block)
        faces.append((data.dofs, face.normal, sides))
    return LiftingFactors(level, faces, triplets.to_csr((2 * level.n_k, level.n_k)))


def assemble_volume(level):
    """Σ_T ∫ ∇w·∇v"""
    grads = level.physical_grads()
    blocks = np.einsum('q,eqid,eqjd->eij', level.quad_weights, grads, grads) * level.mesh.dets[:, None, None]
    return _block_diagonal(blocks)


def assemble_gradient(level):
    """逐单元梯度矩阵，块(e, d)为 (1/J) ∫_T φ_i ∂_d φ_j"""
    grads = level.physical_grads()
    n = level.n_local
    ne = level.mesh.n_elements
    blocks = np.einsum('q,qi,eqjd->edij', level.quad_weights, level.values, grads).reshape(2 * ne, n, n)
    return bsr_matrix((blocks, np.repeat(np.arange(ne), 2), np.arange(2 * ne + 1)),
                      shape=(2 * ne * n, ne * n)).tocsr()


def assemble_jump_penalty(level, alpha, h_measure='size'):
    """Σ_F ∫_F σ_F ⟦w⟧·⟦v⟧"""
    triplets = _Triplets()
    for face in level.mesh.faces:
        data = _FaceData(level, face)
        sigma = penalty(face, level, alpha, h_measure)
        triplets.add(data.dofs, data.dofs, sigma * data.jump.T @ (data.weights[:, None] * data.jump))
    return triplets.to_csr((level.n_k, level.n_k))


def assemble_dg_norm_matrix(level, alpha=10., h_measure='size'):
    """vᵀ N v = ‖v‖²_DG = Σ_T ‖∇v‖² + Σ_F ‖σ^{1/2}⟦v⟧‖²"""
    return (assemble_volume(level) + assemble_jump_penalty(level, alpha, h_measure)).tocsr()


def _check_shape(level, config):
    if config.requires_quads and level.shape != 'quad':
        raise UnsupportedConfigurationError(_S._lang.QUAD_ONLY_METHOD_, config.method, SHAPE=level.shape)


def assemble_operator(level, config=None):
    """
    :param level: DGLevel对象
    :param config: MethodConfig对象，默认SIPG、α = 10
    :return: DGOperator对象
    """
    config = MethodConfig() if config is None else config
    _check_shape(level, config)

    lifting = assemble_lifting(level, config)
    coupling = assemble_gradient(level).T @ diags(lifting.mass) @ lifting.matrix
    matrix = assemble_volume(level) + coupling + coupling.T
    if config.lifting_stabilized:
        matrix = matrix + config.alpha * lifting.face_stabilization()
    else:
        matrix = matrix + assemble_jump_penalty(level, config.alpha, config.h_measure)
    if config.theta:
        matrix = matrix + lifting.product

    op = DGOperator(level, matrix, 'assembled', config)
    logger.info(_S._lang.ASSEMBLED_.format(level.index, config.method, level.n_k, op.matrix.nnz))
    return op


def assemble_flux_form(level, config=None):
    """经典面通量形式的组装，只用于θ = 0的SIPG与SIPG(δ)

    面项为 -∫_F ⟦v⟧·{{∇w}}_ω - ∫_F ⟦w⟧·{{∇v}}_ω + ∫_F σ ⟦w⟧·⟦v⟧。
    """
    config = MethodConfig() if config is None else config
    if config.theta or config.lifting_stabilized:
        raise UnsupportedConfigurationError(_S._lang.FLUX_FORM_THETA, METHOD=config.method)

    triplets = _Triplets()
    for face in level.mesh.faces:
        data = _FaceData(level, face)
        flux = np.hstack([omega * (grads @ face.normal)
                          for (_, _, grads), omega in zip(data.sides, _side_weights(config, face))])
        local = -data.jump.T @ (data.weights[:, None] * flux)
        triplets.add(data.dofs, data.dofs, local + local.T)
    faces = triplets.to_csr((level.n_k, level.n_k))
    matrix = assemble_volume(level) + faces + assemble_jump_penalty(level, config.alpha, config.h_measure)
    return DGOperator(level, matrix, 'assembled', config)


def assemble_rhs(level, f):
    """b_i = h_k^{-2} ∫ f φ_i，使 (f_k, v)_k = ∫ f v
    :param level: DGLevel对象
    :param f: 可向量化调用的f(x, y)
    :return: GridFunction对象
    """
    moments = l2_project(f, level).coefficients.reshape(-1, level.n_local)
    return GridFunction(level, (moments * level.mesh.dets[:, None]).ravel() / level.scale)


def dg_norm(v, alpha=10., h_measure='size'):
    """
    :param v: GridFunction对象
    :param alpha: 罚参数
    :param h_measure: 'size' 或 'diameter'
    :return: ‖v‖_DG
    """
    norm = assemble_dg_norm_matrix(v.level, alpha, h_measure)
    return float(np.sqrt(max(v.coefficients @ (norm @ v.coefficients), 0.)))


def export_operator(op, path):
    """以Matrix Market三元组格式导出矩阵M"""
    mmwrite(str(path), op.matrix.tocoo(), comment=f'{op.kind} operator, scale h_k^2 = {op.scale!r}')
    return str(path)
