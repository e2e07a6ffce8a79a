# -*- coding:utf-8 -*-
"""
@Project  : DGMultigrid
@License  : BSD-3-Clause

参考单元上的求积公式。四边形参考单元为[0,1]²，三角形参考单元为顶点(0,0)、(1,0)、(0,1)的单位单纯形。
"""
from functools import lru_cache

from numpy import meshgrid, column_stack
from numpy.polynomial.legendre import leggauss

from .settings import Settings as _S
from ..errors import InvalidArgumentError


def _frozen(*arrays):
    for a in arrays:
        a.flags.writeable = False
    return arrays


@lru_cache()
def gauss_line(n):
    """[0,1]上的n点Gauss-Legendre公式，对2n-1次多项式精确
    :param n: 点数
    :return: (点, 权重)
    """
    if n < 1:
        raise InvalidArgumentError(_S._lang.INCORRECT_VAL_, 'n', CURR_VAL=n)
    x, w = leggauss(n)
    return _frozen((x + 1.) / 2., w / 2.)


@lru_cache()
def quad_rule(shape, degree):
    """返回对degree次多项式精确的参考单元求积公式
    :param shape: 'quad' 或 'triangle'
    :param degree: 精确次数
    :return: (点 (nq, 2), 权重 (nq,))
    """
    n = degree // 2 + 1
    if shape == 'quad':
        x, wx = gauss_line(n)
        xx, yy = meshgrid(x, x, indexing='ij')
        ww = wx[:, None] * wx[None, :]
        return _frozen(column_stack((xx.ravel(), yy.ravel())), ww.ravel())

    if shape == 'triangle':
        # Duffy变换 x = u, y = (1 - u) v，Jacobian为1 - u
        u, wu = gauss_line(n + 1)
        v, wv = gauss_line(n)
        uu, vv = meshgrid(u, v, indexing='ij')
        ww = (wu * (1. - u))[:, None] * wv[None, :]
        return _frozen(column_stack((uu.ravel(), ((1. - uu) * vv).ravel())), ww.ravel())

    raise InvalidArgumentError(_S._lang.UNKNOWN_SHAPE_, shape)
