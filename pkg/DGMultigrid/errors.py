# -*- coding:utf-8 -*-
"""
@Project  : DGMultigrid
@License  : BSD-3-Clause
"""
from ._functions.settings import Settings as _S


class BaseError(Exception):

    def __init__(self, *args, **kwargs):
        self._kwargs = kwargs
        self._args = args if args else [_S._lang.get(self.__class__.__name__.upper())]

    def __str__(self):
        return _S._lang.join(*self._args, **self._kwargs)


class InvalidArgumentError(BaseError):
    pass


class UnsupportedConfigurationError(BaseError):
    pass


class NumericalFailureError(BaseError):

    def __init__(self, *args, best_estimate=None, **kwargs):
        self.best_estimate = best_estimate
        if best_estimate is not None:
            kwargs['ESTIMATE'] = best_estimate
        super().__init__(*args, **kwargs)


class CapacityError(BaseError):
    pass


class ConfigError(BaseError):
    pass


class NotConvergedError(BaseError):

    def __init__(self, *args, report=None, **kwargs):
        self.report = report
        super().__init__(*args, **kwargs)
