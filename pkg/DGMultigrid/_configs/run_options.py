# -*- coding:utf-8 -*-
"""
@Project  : DGMultigrid
@License  : BSD-3-Clause
"""
from copy import deepcopy
from pathlib import Path

from .options_manage import OptionsManager
from .._base.assembly import MethodConfig, METHODS, H_MEASURES, _ALIASES
from .._base.mesh import build_initial_mesh, build_hierarchy, SHAPES, STEPS
from .._functions.settings import Settings as _S
from .._units.multigrid import MODES, M_SPLITS
from ..errors import ConfigError

TABLES = ('h-vs-m', 'h-inherited', 'h-vs-p', 'p-vs-m', 'p-vs-p')
TARGETS = ('smoothing-p', 'smoothing-m', 'approximation-p')

_SECTIONS = {
    'method': ('method', 'alpha', 'delta', 'beta', 'h_measure'),
    'mesh': ('shape', 'domain', 'h_1', 'fixed_h'),
    'hierarchy': ('steps', 'levels', 'p', 'p_values', 'p_increment', 'mode'),
    'solver': ('m', 'm_values', 'm_split', 'tol', 'max_iters', 'lambda_safety'),
    'analysis': ('dense_cap', 'seed', 'target'),
    'output': ('path', 'table', 'jobs'),
}

_M_ROWS = [1, 2, 3, 4, 5, 6, 8, 10, 12, 14, 16, 18, 20]
_TABLE4_ROWS = [1, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20]

PRESETS = {
    'table1-sipg': {'method': 'SIPG', 'shape': 'quad', 'steps': 'h', 'p': 1, 'levels': [2, 3, 4, 5],
                    'm_values': _M_ROWS, 'mode': 'assembled', 'table': 'h-vs-m'},
    'table1-ldg': {'method': 'LDG', 'shape': 'triangle', 'steps': 'h', 'p': 1, 'levels': [2, 3, 4, 5],
                   'm_values': _M_ROWS, 'mode': 'assembled', 'table': 'h-vs-m'},
    'table2': {'method': 'SIPG', 'shape': 'triangle', 'steps': 'h', 'p': 1, 'levels': [2, 3, 4, 5, 6, 7],
               'm_values': _M_ROWS, 'mode': 'inherited', 'table': 'h-inherited'},
    'table3-sipg': {'method': 'SIPG', 'shape': 'quad', 'steps': 'h', 'm': 6, 'p_values': [1, 2, 3, 4, 5, 6],
                    'levels': [2, 3, 4], 'mode': 'assembled', 'table': 'h-vs-p'},
    'table3-ldg': {'method': 'LDG', 'shape': 'triangle', 'steps': 'h', 'm': 6, 'p_values': [1, 2, 3, 4, 5, 6],
                   'levels': [2, 3, 4], 'mode': 'assembled', 'table': 'h-vs-p'},
    'table4-sipg': {'method': 'SIPG', 'shape': 'quad', 'steps': 'p', 'p': 5, 'fixed_h': .0625,
                    'levels': [2, 3, 4], 'm_values': _TABLE4_ROWS, 'mode': 'assembled', 'table': 'p-vs-m'},
    'table4-ldg': {'method': 'LDG', 'shape': 'triangle', 'steps': 'p', 'p': 5, 'fixed_h': .0625,
                   'levels': [2, 3, 4], 'm_values': _TABLE4_ROWS, 'mode': 'assembled', 'table': 'p-vs-m'},
    'table5-sipg': {'method': 'SIPG', 'shape': 'quad', 'steps': 'p', 'm': 10, 'fixed_h': .0625,
                    'p_values': [2, 3, 4, 5, 6], 'levels': [2, 3, 4], 'mode': 'assembled', 'table': 'p-vs-p'},
    'table5-ldg': {'method': 'LDG', 'shape': 'triangle', 'steps': 'p', 'm': 10, 'fixed_h': .0625,
                   'p_values': [2, 3, 4, 5, 6], 'levels': [2, 3, 4], 'mode': 'assembled', 'table': 'p-vs-p'},
    'fig1a': {'method': 'SIPG', 'shape': 'quad', 'h_1': .25, 'm': 2, 'p_values': list(range(1, 11)),
              'target': 'smoothing-p'},
    'fig1b': {'method': 'SIPG', 'shape': 'quad', 'fixed_h': .0625, 'p': 2, 'm_values': list(range(1, 21)),
              'target': 'smoothing-m'},
    'fig1c': {'method': 'SIPG', 'shape': 'quad', 'h_1': .25, 'p_values': list(range(1, 11)),
              'target': 'approximation-p'},
}


class RunOptions(object):

    def __init__(self, read_file=True, ini_path=None):
        """
        :param read_file: 是否从ini文件读取
        :param ini_path: ini文件路径，为None时按默认顺序查找
        """
        if read_file is False:
            ini_path = False
            self.ini_path = None
        elif ini_path:
            ini_path = Path(ini_path).absolute()
            if not ini_path.exists():
                raise ConfigError(_S._lang.INCORRECT_VAL_, 'ini_path', PATH=ini_path)
            self.ini_path = str(ini_path)
        else:
            self.ini_path = None
        om = OptionsManager(ini_path)
        if self.ini_path is None and om.ini_path is not None:
            self.ini_path = str(om.ini_path)

        self._values = {}
        for section, items in _SECTIONS.items():
            options = om.get_option(section) if om._conf.has_section(section) else {}
            for item in items:
                value = options.get(item, None)
                self._values[item] = deepcopy(value)

    def __repr__(self):
        return f'<RunOptions at {id(self)}>'

    def __getattr__(self, item):
        values = self.__dict__.get('_values', {})
        if item in values:
            return values[item]
        raise AttributeError(item)

    def _set(self, **kwargs):
        for k, v in kwargs.items():
            if v is not None:
                self._values[k] = v
        return self

    @classmethod
    def preset(cls, name, read_file=True, ini_path=None):
        """
        :param name: 预设名称，如'table1-sipg'、'fig1a'
        :return: RunOptions对象
        """
        if name not in PRESETS:
            raise ConfigError(_S._lang.UNKNOWN_PRESET_, name, ALLOW_VAL=tuple(PRESETS))
        return cls(read_file, ini_path)._set(**deepcopy(PRESETS[name]))

    def set_method(self, method=None, alpha=None, delta=None, beta=None, h_measure=None):
        return self._set(method=method, alpha=alpha, delta=delta, beta=beta, h_measure=h_measure)

    def set_mesh(self, shape=None, h_1=None, fixed_h=None, domain=None):
        return self._set(shape=shape, h_1=h_1, fixed_h=fixed_h, domain=domain)

    def set_hierarchy(self, steps=None, levels=None, p=None, p_values=None, p_increment=None, mode=None):
        if isinstance(levels, int):
            levels = [levels]
        return self._set(steps=steps, levels=levels, p=p, p_values=p_values, p_increment=p_increment, mode=mode)

    def set_smoothing(self, m=None, m_values=None, m_split=None):
        return self._set(m=m, m_values=m_values, m_split=m_split)

    def set_solver(self, tol=None, max_iters=None, lambda_safety=None):
        return self._set(tol=tol, max_iters=max_iters, lambda_safety=lambda_safety)

    def set_analysis(self, dense_cap=None, seed=None, target=None):
        return self._set(dense_cap=dense_cap, seed=seed, target=target)

    def set_output(self, path=None, table=None, jobs=None):
        return self._set(path=path, table=table, jobs=jobs)

    def validate(self):
        """检查所有字段，出错时抛出ConfigError"""
        v = self._values
        checks = (('method', str(v['method']).lower() in _ALIASES, METHODS),
                  ('h_measure', v['h_measure'] in H_MEASURES, H_MEASURES),
                  ('shape', v['shape'] in SHAPES, SHAPES),
                  ('steps', v['steps'] in STEPS, STEPS),
                  ('mode', v['mode'] in MODES, MODES),
                  ('m_split', v['m_split'] in M_SPLITS, M_SPLITS),
                  ('table', v['table'] in TABLES, TABLES),
                  ('target', v['target'] in TARGETS, TARGETS))
        for name, ok, allowed in checks:
            if not ok:
                raise ConfigError(_S._lang.INCORRECT_VAL_, name, ALLOW_VAL=allowed, CURR_VAL=v[name])
        for name in ('alpha', 'h_1', 'fixed_h', 'tol', 'max_iters', 'p', 'm', 'dense_cap'):
            if not isinstance(v[name], (int, float)) or v[name] <= 0:
                raise ConfigError(_S._lang.NOT_POSITIVE_, name, CURR_VAL=v[name])
        for name in ('levels', 'p_values', 'm_values'):
            if not v[name] or any(not isinstance(i, int) or i < 1 for i in v[name]):
                raise ConfigError(_S._lang.INCORRECT_VAL_, name, CURR_VAL=v[name])
        if not 1. <= v['lambda_safety'] <= 1.2:
            raise ConfigError(_S._lang.LAMBDA_SAFETY_RANGE, CURR_VAL=v['lambda_safety'])
        for name in ('jobs', 'seed'):
            if not isinstance(v[name], int) or v[name] < 0:
                raise ConfigError(_S._lang.INCORRECT_VAL_, name, CURR_VAL=v[name])
        return self

    def method_config(self):
        name = _ALIASES.get(str(self.method).lower(), self.method)
        return MethodConfig(name, self.alpha, self.delta if name == 'SIPG_delta' else None,
                            self.beta if name == 'LDG' else None, self.h_measure)

    def cells(self, h):
        x0, x1, y0, y1 = self.domain
        return max(1, int(round((x1 - x0) / h)))

    def mesh_hierarchy(self, k, p=None):
        """
        :param k: 层数
        :param p: 最细层次数，默认取self.p
        :return: (MeshHierarchy对象, 各层次数)
        """
        p = self.p if p is None else p
        if self.steps == 'h':
            initial, p_1 = self.cells(self.h_1), p
        elif self.steps == 'p':
            initial, p_1 = self.cells(self.fixed_h), p - (k - 1) * self.p_increment
        else:
            initial, p_1 = self.cells(self.h_1), p - (k - 1) * self.p_increment
        mesh = build_initial_mesh(self.domain, initial, self.shape)
        return build_hierarchy(mesh, [self.steps] * (k - 1), p_1, self.p_increment)

    def save(self, path=None):
        if path == 'default':
            path = (Path(__file__).parent / 'configs.ini').absolute()
        elif path is None:
            path = Path(self.ini_path or (Path(__file__).parent / 'configs.ini')).absolute()
        else:
            path = Path(path).absolute()
        path = path / 'configs.ini' if path.is_dir() else path

        om = OptionsManager(path if path.exists() else (self.ini_path or 'default'))
        for section, items in _SECTIONS.items():
            if not om._conf.has_section(section):
                om._conf.add_section(section)
            for item in items:
                value = self._values[item]
                om.set_item(section, item, '' if value is None else value)
        return om.save(path)
