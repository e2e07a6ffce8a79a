# -*- coding:utf-8 -*-
"""
@Project  : DGMultigrid
@License  : BSD-3-Clause

Richardson光滑、W循环、外层迭代和无预条件CG。所有向量都是系数形式，算子作用为h_k^{-2} M。
"""
from logging import getLogger
from math import exp, log, ceil, floor
from time import perf_counter

import numpy as np
from scipy.sparse.linalg import eigsh, ArpackNoConvergence

from .._base.assembly import assemble_operator, assemble_rhs, MethodConfig
from .._base.space import DGLevel, GridFunction
from .._base.transfer import build_prolongation, galerkin_coarse_operator, factorize
from .._functions.settings import Settings as _S
from ..errors import InvalidArgumentError, NumericalFailureError, NotConvergedError

logger = getLogger(__name__)

MODES = ('assembled', 'inherited')
M_SPLITS = ('symmetric', 'total')


class CycleParams(object):
    def __init__(self, m1, m2):
        if m1 < 0 or m2 < 0:
            raise InvalidArgumentError(_S._lang.NEGATIVE_STEPS, CURR_VAL=(m1, m2))
        if m1 + m2 < 1:
            raise InvalidArgumentError(_S._lang.EMPTY_CYCLE, CURR_VAL=(m1, m2))
        self.m1 = int(m1)
        self.m2 = int(m2)

    def __repr__(self):
        return f'<CycleParams m1={self.m1} m2={self.m2}>'

    @classmethod
    def from_m(cls, m, split='symmetric'):
        """
        :param m: 表格中的光滑步数m
        :param split: 'symmetric'时m1 = m2 = m；'total'时m1 + m2 = m
        :return: CycleParams对象
        """
        if split == 'symmetric':
            return cls(m, m)
        if split == 'total':
            return cls(ceil(m / 2), floor(m / 2))
        raise InvalidArgumentError(_S._lang.INCORRECT_VAL_, 'split', ALLOW_VAL=M_SPLITS, CURR_VAL=split)


class SolveReport(object):
    def __init__(self, iterations, residual_history, converged, wall_time, diverged=False):
        self.iterations = iterations
        self.residual_history = residual_history
        self.converged = converged
        self.wall_time = wall_time
        self.diverged = diverged

    def __repr__(self):
        return f'<SolveReport N={self.iterations} rho={self.rho} converged={self.converged}>'

    @property
    def rho(self):
        """ρ = exp(ln(‖r_N‖/‖r_0‖) / N)，N = 0时为None"""
        n = self.iterations
        if n == 0 or self.residual_history[0] == 0 or self.residual_history[-1] <= 0 \
                or not np.isfinite(self.residual_history[-1]):
            return None
        return exp(log(self.residual_history[-1] / self.residual_history[0]) / n)

    ROW_FIELDS = ('method', 'grid', 'p', 'k', 'm1', 'm2', 'mode', 'N', 'rho', 'converged', 'wall_time')

    def to_row(self, method='', grid='', p='', k='', m1='', m2='', mode=''):
        rho = self.rho
        return [method, grid, p, k, m1, m2, mode, self.iterations,
                '' if rho is None else f'{rho:.6f}', int(self.converged), f'{self.wall_time:.3f}']


def power_iteration(op, tol=1e-10, max_iters=10000, seed=0):
    """Rayleigh商相对变化小于tol时停止
    :return: λ_max的估计
    """
    x = np.random.default_rng(seed).standard_normal(op.n)
    x /= np.linalg.norm(x)
    estimate = prev = None
    for _ in range(max_iters):
        y = op.apply(x)
        estimate = float(x @ y)
        norm = np.linalg.norm(y)
        if norm == 0:
            return 0.
        x = y / norm
        if prev is not None and abs(estimate - prev) <= tol * abs(estimate):
            return estimate
        prev = estimate
    raise NumericalFailureError(_S._lang.POWER_NOT_CONVERGED, best_estimate=estimate, ITERATIONS=max_iters)


def estimate_lambda(op, tol=1e-10, max_iters=10000, method=None, safety=None, seed=0):
    """Λ_k = 安全系数 × λ_max(A_k)

    默认方法'lanczos'：n ≤ 200时直接求稠密矩阵的最大特征值，否则用eigsh（Lanczos）；
    'power'为幂迭代，Lanczos不收敛时也退回幂迭代。
    :param op: DGOperator或带apply、n、matrix、scale的对象
    :param tol: 相对容差
    :param max_iters: 幂迭代最大步数
    :param method: 'lanczos' 或 'power'，默认取Settings.lambda_method
    :param safety: 安全系数，默认取Settings.lambda_safety
    :param seed: 初始随机向量的种子
    :return: Λ
    """
    method = _S.lambda_method if method is None else method
    safety = _S.lambda_safety if safety is None else safety
    if method == 'power':
        value = power_iteration(op, tol, max_iters, seed)
    elif op.n <= 200:
        value = float(np.linalg.eigvalsh(op.matrix.toarray())[-1] / op.scale)
    else:
        try:
            v0 = np.random.default_rng(seed).standard_normal(op.n)
            value = float(eigsh(op.matrix, k=1, which='LA', tol=tol, v0=v0, return_eigenvectors=False)[0]) / op.scale
        except ArpackNoConvergence:
            logger.warning(_S._lang.LANCZOS_FALLBACK)
            value = power_iteration(op, tol, max_iters, seed)
    return safety * value


def richardson(op, lam, g, z, steps):
    """z <- z + (g - A z) / Λ，重复steps次"""
    z = np.array(z, dtype=float)
    for _ in range(steps):
        z += (g - op.apply(z)) / lam
    return z


class Hierarchy(object):
    def __init__(self, levels, operators, transfers, lambdas, mode='assembled'):
        """
        :param levels: DGLevel列表，0号为最粗层
        :param operators: DGOperator列表
        :param transfers: TransferPair列表，transfers[i]把第i-1层延拓到第i层，transfers[0]为None
        :param lambdas: 各层Λ
        :param mode: 'assembled' 或 'inherited'
        """
        self.levels = levels
        self.operators = operators
        self.transfers = transfers
        self.lambdas = lambdas
        self.mode = mode
        for op, lam in zip(operators, lambdas):
            op.lambda_max = lam
        self.coarse_factorization = factorize(operators[0].matrix)

    def __repr__(self):
        return f'<Hierarchy K={self.K} {self.mode} n={self.operators[-1].n}>'

    @property
    def K(self):
        return len(self.levels)

    def operator(self, k):
        return self.operators[self._index(k)]

    def _index(self, k):
        if not 1 <= k <= self.K:
            raise InvalidArgumentError(_S._lang.LEVEL_OUT_OF_RANGE_, k)
        return k - 1

    def coarse_solve(self, g):
        """A_1^{-1} g = h_1² M_1^{-1} g"""
        return self.operators[0].scale * self.coarse_factorization.solve(np.asarray(g, dtype=float))

    @classmethod
    def build(cls, mesh_hierarchy, degrees, config=None, mode='assembled', lambda_safety=None, lambda_method=None,
              seed=0):
        """
        :param mesh_hierarchy: MeshHierarchy对象
        :param degrees: 各层多项式次数
        :param config: MethodConfig对象
        :param mode: 'assembled'各层重新组装，'inherited'只组装最细层，其余由Galerkin乘积得到
        :param lambda_safety: Λ安全系数
        :param lambda_method: 'lanczos' 或 'power'
        :param seed: λ_max估计所用随机向量的种子
        :return: Hierarchy对象
        """
        if mode not in MODES:
            raise InvalidArgumentError(_S._lang.UNKNOWN_MODE_, mode, ALLOW_VAL=MODES)
        config = MethodConfig() if config is None else config
        levels = [DGLevel(mesh, p, k) for k, (mesh, p) in enumerate(zip(mesh_hierarchy.levels, degrees), 1)]
        transfers = [None] + [build_prolongation(levels[i - 1], levels[i]) for i in range(1, len(levels))]

        if mode == 'assembled':
            operators = [assemble_operator(level, config) for level in levels]
        else:
            operators = [assemble_operator(levels[-1], config)]
            for i in range(len(levels) - 1, 0, -1):
                operators.insert(0, galerkin_coarse_operator(operators[0], [transfers[i]]))

        lambdas = []
        for level, op in zip(levels, operators):
            lam = estimate_lambda(op, method=lambda_method, safety=lambda_safety, seed=seed)
            logger.info(_S._lang.LAMBDA_.format(level.index, lam))
            lambdas.append(lam)

        hierarchy = cls(levels, operators, transfers, lambdas, mode)
        logger.info(_S._lang.HIERARCHY_BUILT_.format(hierarchy.K, levels[-1].n_k))
        return hierarchy


def wcycle(hier, k, g, z0, params):
    """W循环MG_W(k, g, z0, m1, m2)，k从1开始"""
    i = hier._index(k)
    if k == 1:
        return hier.coarse_solve(g)
    op = hier.operators[i]
    lam = hier.lambdas[i]
    pair = hier.transfers[i]
    z = richardson(op, lam, g, z0, params.m1)
    r = pair.restrict(g - op.apply(z))
    e = wcycle(hier, k - 1, r, np.zeros_like(r), params)
    e = wcycle(hier, k - 1, r, e, params)
    z = z + pair.prolong(e)
    return richardson(op, lam, g, z, params.m2)


def _load(level, f):
    if isinstance(f, GridFunction):
        return f.coefficients
    if callable(f):
        return assemble_rhs(level, f).coefficients
    return np.asarray(f, dtype=float)


def _finish(report, kind):
    if report.converged:
        logger.info(_S._lang.SOLVE_DONE_.format(report.iterations, report.rho) if kind == 'mg'
                    else _S._lang.CG_DONE_.format(report.iterations, True))
    else:
        logger.info(_S._lang.SOLVE_NOT_CONVERGED_.format(report.iterations))
        if _S.raise_when_not_converged:
            raise NotConvergedError(report=report, ITERATIONS=report.iterations)
    return report


def solve_mg(hier, f, params, tol=1e-8, max_iters=10000, z0=None):
    """从第K层重复W循环，直到‖r_N‖/‖r_0‖ ≤ tol
    :param hier: Hierarchy对象
    :param f: 右端项，GridFunction、系数向量或可调用的f(x, y)
    :param params: CycleParams对象
    :param tol: 相对残差容差
    :param max_iters: 最大迭代次数
    :param z0: 初始值，默认为0
    :return: (解系数, SolveReport)
    """
    op = hier.operators[-1]
    g = _load(hier.levels[-1], f)
    z = np.zeros(op.n) if z0 is None else np.array(z0, dtype=float)
    start = perf_counter()
    r0 = float(np.linalg.norm(g - op.apply(z)))
    history = [r0]
    converged, diverged = r0 == 0., False
    while not converged and len(history) <= max_iters:
        z = wcycle(hier, hier.K, g, z, params)
        r = float(np.linalg.norm(g - op.apply(z)))
        history.append(r)
        if r <= tol * r0:
            converged = True
        elif not np.isfinite(r) or r > _S.divergence_threshold * r0:
            diverged = True
            logger.info(_S._lang.SOLVE_DIVERGED_.format(len(history) - 1))
            break
    report = SolveReport(len(history) - 1, history, converged, perf_counter() - start, diverged)
    return z, _finish(report, 'mg')


def solve_cg(op, f, tol=1e-8, max_iters=None, z0=None):
    """无预条件CG，停止准则与solve_mg相同
    :param op: DGOperator或带apply、n的对象
    :param f: 右端项
    :param tol: 相对残差容差
    :param max_iters: 最大迭代次数，默认10 n
    :param z0: 初始值
    :return: (解系数, SolveReport)
    """
    g = _load(op.level, f) if hasattr(op, 'level') else np.asarray(f, dtype=float)
    max_iters = 10 * op.n if max_iters is None else max_iters
    x = np.zeros(op.n) if z0 is None else np.array(z0, dtype=float)
    start = perf_counter()
    r = g - op.apply(x)
    p = r.copy()
    am = r @ r
    r0 = float(np.sqrt(am))
    history = [r0]
    converged = r0 == 0.
    while not converged and len(history) <= max_iters:
        v = op.apply(p)
        l = am / (p @ v)
        x += l * p
        r -= l * v
        am1 = r @ r
        history.append(float(np.sqrt(am1)))
        if history[-1] <= tol * r0:
            converged = True
            break
        p = r + (am1 / am) * p
        am = am1
    report = SolveReport(len(history) - 1, history, converged, perf_counter() - start)
    return x, _finish(report, 'cg')
