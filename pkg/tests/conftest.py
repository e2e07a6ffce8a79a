# -*- coding:utf-8 -*-
import numpy as np
import pytest

from DGMultigrid import build_initial_mesh, DGLevel
from DGMultigrid.common import Settings, make_hierarchy

_SETTINGS = ('dense_cap', 'lambda_safety', 'lambda_method', 'divergence_threshold', 'raise_when_not_converged',
             '_lang')


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False, help='运行耗时较长的表格复现测试')


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: 耗时较长的表格复现测试，需要--runslow')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip = pytest.mark.skip(reason='需要--runslow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip)


@pytest.fixture(autouse=True)
def restore_settings():
    saved = {name: getattr(Settings, name) for name in _SETTINGS}
    yield
    for name, value in saved.items():
        setattr(Settings, name, value)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def quad_mesh():
    return build_initial_mesh(n_cells_per_side=4, shape='quad')


@pytest.fixture
def tri_mesh():
    return build_initial_mesh(n_cells_per_side=4, shape='triangle')


@pytest.fixture
def quad_level(quad_mesh):
    return DGLevel(quad_mesh, 1, 1)


@pytest.fixture
def tri_level(tri_mesh):
    return DGLevel(tri_mesh, 1, 1)


@pytest.fixture
def two_level():
    """2×2四边形上的两层SIPG层级，p = 1"""
    return make_hierarchy('SIPG', 'quad', n_cells=2, k=2, p=1)


@pytest.fixture
def three_level():
    return make_hierarchy('SIPG', 'quad', n_cells=2, k=3, p=1)


def constant(value=1.):
    return lambda x, y: np.full_like(x, value)
