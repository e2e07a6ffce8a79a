# -*- coding:utf-8 -*-
"""
@Project  : DGMultigrid
@License  : BSD-3-Clause

小规模层级上的稠密估计：|||·|||_{s,k}范数、光滑常数、逼近常数、误差传播算子、层间稳定常数，
以及人造解的收敛阶研究。
"""
from logging import getLogger

import numpy as np
from scipy.linalg import eigh, eigvals
from scipy.sparse.linalg import spsolve

from .multigrid import richardson
from .._base.assembly import assemble_dg_norm_matrix, assemble_jump_penalty, assemble_operator, \
    assemble_rhs, MethodConfig
from .._base.mesh import build_initial_mesh, refine_uniform
from .._base.space import DGLevel
from .._base.transfer import build_P_operator, build_prolongation
from .._functions.quadrature import quad_rule
from .._functions.settings import Settings as _S
from .._functions.tools import fit_slope
from ..errors import CapacityError, InvalidArgumentError

logger = getLogger(__name__)


class SpectralDecomposition(object):
    def __init__(self, op, eigenvalues, vectors):
        """
        :param op: DGOperator对象
        :param eigenvalues: 升序特征值
        :param vectors: 欧氏正交归一的特征向量列
        """
        self.op = op
        self.level = op.level
        self.eigenvalues = eigenvalues
        self.vectors = vectors
        self.scale = op.scale

    def __repr__(self):
        return f'<SpectralDecomposition n={len(self.eigenvalues)}>'

    @property
    def k_vectors(self):
        """(·,·)_k正交归一的特征向量"""
        return self.vectors / np.sqrt(self.scale)

    def coords(self, v):
        return self.vectors.T @ np.asarray(getattr(v, 'coefficients', v))

    def reconstruction_error(self):
        dense = self.op.to_dense()
        rebuilt = (self.vectors * self.eigenvalues) @ self.vectors.T
        return float(np.linalg.norm(dense - rebuilt, 2) / np.linalg.norm(dense, 2))


def _check_cap(n, cap=None):
    cap = _S.dense_cap if cap is None else cap
    if n > cap:
        raise CapacityError(_S._lang.DENSE_CAP_EXCEEDED, SIZE=n, LIMIT=cap, TIP=_S._lang.USE_COARSER)


def spectral_decompose(op, cap=None):
    """A_k的稠密对称特征分解"""
    _check_cap(op.n, cap)
    dense = op.to_dense()
    values, vectors = eigh((dense + dense.T) / 2.)
    return SpectralDecomposition(op, values, vectors)


def norm_s(v, s, decomp):
    """|||v|||_{s,k} = √(h_k² Σ λ_i^s v̂_i²)，v为二维数组时按列计算"""
    c = decomp.coords(v)
    weights = decomp.eigenvalues ** s
    if c.ndim == 1:
        return float(np.sqrt(decomp.scale * (weights @ c ** 2)))
    return np.sqrt(decomp.scale * (weights @ c ** 2))


def _check_st(s, t):
    if not 0 <= t <= s <= 2:
        raise InvalidArgumentError(_S._lang.INVALID_ST_RANGE, CURR_VAL=(s, t))


def smoothing_constant(decomp, lam, m, s=2, t=0):
    """sup_v |||G^m v|||_s / |||v|||_t = max_i |1 - λ_i/Λ|^m λ_i^{(s-t)/2}"""
    _check_st(s, t)
    values = decomp.eigenvalues
    return float(np.max(np.abs(1. - values / lam) ** m * values ** ((s - t) / 2.)))


def smoothing_ratio_samples(decomp, lam, m, s=2, t=0, n_samples=1000, seed=0):
    """随机向量上|||G^m v|||_s / |||v|||_t的最大值，是smoothing_constant的下界"""
    _check_st(s, t)
    v = np.random.default_rng(seed).standard_normal((decomp.op.n, n_samples))
    smoothed = richardson(decomp.op, lam, 0., v, m)
    return float(np.max(norm_s(smoothed, s, decomp) / norm_s(v, t, decomp)))


def approximation_constant(fine_op, coarse_op, pair, decomp=None, cap=None):
    """sup_v |||(I - R P_k^{k-1}) v|||_0 / |||v|||_2 = ‖(I - R P_k^{k-1}) A_k^{-1}‖₂"""
    _check_cap(fine_op.n, cap)
    decomp = spectral_decompose(fine_op, cap) if decomp is None else decomp
    projector = build_P_operator(coarse_op, fine_op, pair).to_dense()
    defect = np.eye(fine_op.n) - pair.P.toarray() @ projector
    inverse = (decomp.vectors / decomp.eigenvalues) @ decomp.vectors.T
    return float(np.linalg.norm(defect @ inverse, 2))


class ErrorPropagator(object):
    def __init__(self, matrix, op):
        self.matrix = matrix
        self.op = op

    def __repr__(self):
        return f'<ErrorPropagator n={self.matrix.shape[0]}>'

    def apply(self, e):
        return self.matrix @ e

    @property
    def energy_norm(self):
        """|||E|||_1 = ‖A^{1/2} E A^{-1/2}‖₂"""
        if not self.matrix.any():
            return 0.
        values, vectors = eigh(self.op.to_dense())
        root = (vectors * np.sqrt(values)) @ vectors.T
        inverse_root = (vectors / np.sqrt(values)) @ vectors.T
        return float(np.linalg.norm(root @ self.matrix @ inverse_root, 2))

    @property
    def spectral_radius(self):
        return float(np.max(np.abs(eigvals(self.matrix))))


def _smoother(hier, i):
    return np.eye(hier.operators[i].n) - hier.operators[i].to_dense() / hier.lambdas[i]


def _propagator(hier, i, params, two_level=False):
    n = hier.operators[i].n
    if i == 0:
        return np.zeros((n, n))
    smoother = _smoother(hier, i)
    pair = hier.transfers[i]
    projector = build_P_operator(hier.operators[i - 1], hier.operators[i], pair).to_dense()
    coarse = np.eye(projector.shape[0])
    if not two_level:
        inner = _propagator(hier, i - 1, params)
        coarse = coarse - inner @ inner
    correction = np.eye(n) - pair.P.toarray() @ coarse @ projector
    return np.linalg.matrix_power(smoother, params.m2) @ correction @ np.linalg.matrix_power(smoother, params.m1)


def build_error_propagator(hier, k, params):
    """E_1 = 0，E_k = G^{m2} (I - R (I - E_{k-1}²) P_k^{k-1}) G^{m1}"""
    i = hier._index(k)
    _check_cap(hier.operators[i].n)
    return ErrorPropagator(_propagator(hier, i, params), hier.operators[i])


def two_level_propagator(hier, k, params):
    """粗层精确求解的两层算子 G^{m2} (I - R P_k^{k-1}) G^{m1}"""
    i = hier._index(k)
    _check_cap(hier.operators[i].n)
    return ErrorPropagator(_propagator(hier, i, params, two_level=True), hier.operators[i])


def stability_constants(hier, k):
    """能量范数下R^k_{k-1}与P_k^{k-1}的算子范数
    :return: {'prolongation': C_R, 'projection': C_P}
    """
    i = hier._index(k)
    if i == 0:
        raise InvalidArgumentError(_S._lang.LEVEL_OUT_OF_RANGE_, k)
    _check_cap(hier.operators[i].n)
    fine = hier.operators[i].matrix.toarray()
    coarse = hier.operators[i - 1].matrix.toarray()
    P = hier.transfers[i].P.toarray()
    prolongation = eigh(P.T @ fine @ P, coarse, eigvals_only=True)[-1]
    lifted = fine @ P @ np.linalg.solve(coarse, P.T @ fine)
    projection = eigh((lifted + lifted.T) / 2., fine, eigvals_only=True)[-1]
    return {'prolongation': float(np.sqrt(prolongation)), 'projection': float(np.sqrt(projection))}


def inherited_smoothing_constant(hier, k, m, s=2, t=0):
    """继承层上的光滑常数
    :return: (常数, 常数 · h_k^{s-t} / 2^{(K-k)(s-t)/2})，后者在各层应大致相同
    """
    i = hier._index(k)
    decomp = spectral_decompose(hier.operators[i])
    constant = smoothing_constant(decomp, hier.lambdas[i], m, s, t)
    level = hier.levels[i]
    return constant, constant * level.h ** (s - t) / 2. ** ((hier.K - k) * (s - t) / 2.)


def continuity_coercivity_constants(op, alpha=None):
    """(A, N)广义特征值的最小值与最大绝对值"""
    _check_cap(op.n)
    config = op.config if op.config is not None else MethodConfig()
    alpha = config.alpha if alpha is None else alpha
    norm = assemble_dg_norm_matrix(op.level, alpha, config.h_measure).toarray()
    values = eigh(op.matrix.toarray(), norm, eigvals_only=True)
    return {'coercivity': float(values[0]), 'continuity': float(np.max(np.abs(values)))}


def dg_norm_level_ratio(coarse, fine, alpha=10.):
    """v ∈ V_{k-1}时‖v‖_{DG,k} / ‖v‖_{DG,k-1}的上下界"""
    _check_cap(coarse.n_k)
    P = build_prolongation(coarse, fine).P
    fine_norm = (P.T @ assemble_dg_norm_matrix(fine, alpha) @ P).toarray()
    values = eigh(fine_norm, assemble_dg_norm_matrix(coarse, alpha).toarray(), eigvals_only=True)
    return float(np.sqrt(values[0])), float(np.sqrt(values[-1]))


class ManufacturedSolution(object):
    """u = sin(πx)sin(πy)，-Δu = 2π² u"""

    @staticmethod
    def u(x, y):
        return np.sin(np.pi * x) * np.sin(np.pi * y)

    @staticmethod
    def grad(x, y):
        return np.stack((np.pi * np.cos(np.pi * x) * np.sin(np.pi * y),
                         np.pi * np.sin(np.pi * x) * np.cos(np.pi * y)), axis=-1)

    @staticmethod
    def f(x, y):
        return 2. * np.pi ** 2 * np.sin(np.pi * x) * np.sin(np.pi * y)


class StudyRow(object):
    def __init__(self, p, h, n_dofs, l2_error, dg_error):
        self.p = p
        self.h = h
        self.n_dofs = n_dofs
        self.l2_error = l2_error
        self.dg_error = dg_error

    def to_row(self):
        return [self.p, f'{self.h:.10g}', self.n_dofs, f'{self.l2_error:.6e}', f'{self.dg_error:.6e}']


def discretization_errors(level, op, coefficients, solution):
    """离散解与精确解之间的L²误差和DG误差"""
    points, weights = quad_rule(level.shape, 2 * level.p + 6)
    x = level.physical_points(points)
    c = coefficients.reshape(-1, level.n_local)
    values = level.basis.values(points)
    grads = level.physical_grads(level.basis.grads(points))
    dets = level.mesh.dets

    diff = solution.u(x[..., 0], x[..., 1]) - c @ values.T
    l2 = np.sum(dets * ((diff ** 2) @ weights))
    grad_diff = solution.grad(x[..., 0], x[..., 1]) - np.einsum('eqnd,en->eqd', grads, c)
    broken = np.sum(dets * (np.sum(grad_diff ** 2, axis=2) @ weights))
    config = op.config if op.config is not None else MethodConfig()
    jumps = coefficients @ (assemble_jump_penalty(level, config.alpha, config.h_measure) @ coefficients)
    return float(np.sqrt(l2)), float(np.sqrt(broken + jumps))


def convergence_study(config=None, shape='quad', degrees=(1, 2, 3), n_refinements=3, n_cells=4, solution=None):
    """在逐次加密的网格上直接求解，计算误差和拟合阶
    :param config: MethodConfig对象
    :param shape: 'quad' 或 'triangle'
    :param degrees: 多项式次数列表
    :param n_refinements: 加密次数，网格数为n_refinements + 1
    :param n_cells: 最粗网格每边单元数
    :param solution: 人造解，默认ManufacturedSolution
    :return: (StudyRow列表, {p: (L²阶, DG阶)})
    """
    config = MethodConfig() if config is None else config
    solution = ManufacturedSolution() if solution is None else solution
    rows = []
    orders = {}
    for p in degrees:
        mesh = build_initial_mesh(n_cells_per_side=n_cells, shape=shape)
        current = []
        for r in range(n_refinements + 1):
            if r:
                mesh = refine_uniform(mesh)
            level = DGLevel(mesh, p, r + 1)
            op = assemble_operator(level, config)
            rhs = assemble_rhs(level, solution.f).coefficients * level.scale
            coefficients = spsolve(op.matrix.tocsc(), rhs)
            l2, dg = discretization_errors(level, op, coefficients, solution)
            logger.info(_S._lang.STUDY_ROW_.format(p, level.h, l2, dg))
            current.append(StudyRow(p, level.h, level.n_k, l2, dg))
        hs = [i.h for i in current]
        orders[p] = (fit_slope(hs, [i.l2_error for i in current]), fit_slope(hs, [i.dg_error for i in current]))
        rows.extend(current)
    return rows, orders
