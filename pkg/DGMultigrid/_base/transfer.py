# -*- coding:utf-8 -*-
"""
@Project  : DGMultigrid
@License  : BSD-3-Clause

层间传递：延拓（自然嵌入）、按(·,·)_k伴随的限制、复合延拓、继承（Galerkin）粗层算子和P_k^{k-1}。
"""
from logging import getLogger

import numpy as np
from scipy.sparse.linalg import splu

from .assembly import DGOperator, _Triplets
from .._functions.settings import Settings as _S
from ..errors import InvalidArgumentError, NumericalFailureError

logger = getLogger(__name__)


class TransferPair(object):
    def __init__(self, fine_level, coarse_level, P, step_kind):
        """
        :param fine_level: 细层DGLevel
        :param coarse_level: 粗层DGLevel
        :param P: 延拓矩阵 (n_k, n_{k-1})
        :param step_kind: 'h'、'p' 或 'hp'
        """
        self.fine_level = fine_level
        self.coarse_level = coarse_level
        self.P = P.tocsr()
        self._PT = self.P.T.tocsr()
        self.step_kind = step_kind
        self.scale_ratio = fine_level.scale / coarse_level.scale

    def __repr__(self):
        return f'<TransferPair {self.step_kind} {self.coarse_level.n_k}->{self.fine_level.n_k}>'

    def prolong(self, v):
        v = np.asarray(getattr(v, 'coefficients', v))
        if v.shape[0] != self.coarse_level.n_k:
            raise InvalidArgumentError(_S._lang.SIZE_MISMATCH_, v.shape[0], CURR_VAL=self.coarse_level.n_k)
        return self.P @ v

    def restrict(self, w):
        w = np.asarray(getattr(w, 'coefficients', w))
        if w.shape[0] != self.fine_level.n_k:
            raise InvalidArgumentError(_S._lang.SIZE_MISMATCH_, w.shape[0], CURR_VAL=self.fine_level.n_k)
        return self.scale_ratio * (self._PT @ w)


def _step_kind(coarse, fine):
    if fine.p < coarse.p or fine.shape != coarse.shape:
        raise InvalidArgumentError(_S._lang.NOT_NESTED, CURR_VAL=(coarse, fine))
    if fine.mesh is coarse.mesh:
        return 'p'
    if fine.mesh.coarser is coarse.mesh:
        return 'h' if fine.p == coarse.p else 'hp'
    raise InvalidArgumentError(_S._lang.NOT_NESTED, CURR_VAL=(coarse, fine))


def build_prolongation(coarse, fine):
    """逐细单元计算块 ∫_T̂ φ_i^f(ξ) φ_j^c(χ(ξ)) dξ，χ为细单元参考坐标到粗单元参考坐标的映射
    :param coarse: 粗层DGLevel
    :param fine: 细层DGLevel
    :return: TransferPair对象
    """
    kind = _step_kind(coarse, fine)
    weighted = fine.values * fine.quad_weights[:, None]
    cache = {}
    triplets = _Triplets()
    for element in fine.mesh.elements:
        parent = coarse.mesh.elements[element.id if kind == 'p' else element.parent_id]
        chi = parent.inverse_map(element.map(fine.quad_points))
        key = np.round(chi, 12).tobytes()
        if key not in cache:
            cache[key] = weighted.T @ coarse.basis.values(chi)
        triplets.add(np.arange(element.id * fine.n_local, (element.id + 1) * fine.n_local),
                     np.arange(parent.id * coarse.n_local, (parent.id + 1) * coarse.n_local), cache[key])

    P = triplets.to_csr((fine.n_k, coarse.n_k))
    P.data[np.abs(P.data) < 1e-14] = 0.
    P.eliminate_zeros()
    logger.debug(f'prolongation {kind}: {coarse.n_k} -> {fine.n_k}, {len(cache)} distinct blocks')
    return TransferPair(fine, coarse, P, kind)


def restrict(pair, w):
    """R^{k-1}_k w = (h_k / h_{k-1})² Pᵀ w"""
    return pair.restrict(w)


def _check_chain(chain):
    for upper, lower in zip(chain, chain[1:]):
        if upper.coarse_level is not lower.fine_level:
            raise InvalidArgumentError(_S._lang.CHAIN_MISMATCH)


def composite_prolongation(chain):
    """
    :param chain: 从细到粗排列的TransferPair列表
    :return: 复合延拓矩阵 R^K_k
    """
    _check_chain(chain)
    P = chain[0].P
    for pair in chain[1:]:
        P = P @ pair.P
    return P.tocsr()


def galerkin_coarse_operator(fine_op, chain):
    """M^R = P_compᵀ M_K P_comp，缩放取粗层h_k²
    :param fine_op: 细层DGOperator
    :param chain: 从细到粗排列的TransferPair列表
    :return: kind为'inherited'的DGOperator
    """
    if not chain:
        return fine_op
    if chain[0].fine_level is not fine_op.level:
        raise InvalidArgumentError(_S._lang.CHAIN_MISMATCH)
    P = composite_prolongation(chain)
    coarse = chain[-1].coarse_level
    op = DGOperator(coarse, (P.T @ fine_op.matrix @ P).tocsr(), 'inherited', fine_op.config)
    logger.info(_S._lang.INHERITED_.format(coarse.index, coarse.n_k))
    return op


def factorize(matrix):
    """稀疏LU分解，奇异时抛出NumericalFailureError"""
    try:
        lu = splu(matrix.tocsc())
    except RuntimeError as e:
        raise NumericalFailureError(_S._lang.SINGULAR_MATRIX, INFO=e)
    if not np.all(np.isfinite(lu.U.diagonal())) or np.any(lu.U.diagonal() == 0):
        raise NumericalFailureError(_S._lang.SINGULAR_MATRIX)
    return lu


class CoarseProjector(object):
    """P_k^{k-1} = M_{k-1}^{-1} Pᵀ M_k，由A_{k-1}(P_k^{k-1}v, w) = A_k(v, R^k_{k-1}w)定义"""

    def __init__(self, coarse_op, fine_op, pair):
        self.coarse_op = coarse_op
        self.fine_op = fine_op
        self.pair = pair
        self._lu = factorize(coarse_op.matrix)
        self._rhs = (pair.P.T @ fine_op.matrix).tocsr()

    def __call__(self, v):
        return self._lu.solve(self._rhs @ np.asarray(getattr(v, 'coefficients', v)))

    def to_dense(self):
        return self._lu.solve(self._rhs.toarray())


def build_P_operator(coarse_op, fine_op, pair):
    return CoarseProjector(coarse_op, fine_op, pair)
