# -*- coding:utf-8 -*-
"""
@Project  : DGMultigrid
@License  : BSD-3-Clause
"""
from logging import getLogger, StreamHandler, Formatter

from .texts import get_txt_class


class Settings(object):
    dense_cap = 3000
    lambda_safety = 1.0
    lambda_method = 'lanczos'
    divergence_threshold = 1e10
    raise_when_not_converged = False
    _lang = get_txt_class(None)

    @classmethod
    def set_dense_cap(cls, n):
        """设置稠密分析允许的最大自由度数
        :param n: 自由度上限
        :return: Settings类
        """
        if not isinstance(n, int) or n < 1:
            raise ValueError(cls._lang.join(cls._lang.INCORRECT_VAL_, 'n', CURR_VAL=n))
        cls.dense_cap = n
        return cls

    @classmethod
    def set_lambda_safety(cls, factor):
        """设置Λ的安全系数，允许1.0到1.2
        :param factor: 安全系数
        :return: Settings类
        """
        if not 1. <= factor <= 1.2:
            raise ValueError(cls._lang.join(cls._lang.LAMBDA_SAFETY_RANGE, CURR_VAL=factor))
        cls.lambda_safety = float(factor)
        return cls

    @classmethod
    def set_lambda_method(cls, method):
        """设置Λ的估计方法
        :param method: 'lanczos' 或 'power'
        :return: Settings类
        """
        if method not in ('lanczos', 'power'):
            raise ValueError(cls._lang.join(cls._lang.INCORRECT_VAL_, 'method',
                                            ALLOW_VAL=('lanczos', 'power'), CURR_VAL=method))
        cls.lambda_method = method
        return cls

    @classmethod
    def set_divergence_threshold(cls, ratio):
        cls.divergence_threshold = float(ratio)
        return cls

    @classmethod
    def set_raise_when_not_converged(cls, on_off=True):
        cls.raise_when_not_converged = on_off
        return cls

    @classmethod
    def set_language(cls, code):
        cls._lang = get_txt_class(code)
        return cls

    @classmethod
    def set_log_level(cls, level):
        """设置包日志等级，首次调用时挂上一个输出到stderr的handler
        :param level: logging等级，int或'INFO'之类的字符串
        :return: Settings类
        """
        logger = getLogger('DGMultigrid')
        logger.setLevel(level)
        if not logger.handlers:
            handler = StreamHandler()
            handler.setFormatter(Formatter('%(asctime)s %(name)s %(levelname)s: %(message)s'))
            logger.addHandler(handler)
        return cls
