# -*- coding:utf-8 -*-
"""
@Project  : DGMultigrid
@License  : BSD-3-Clause
"""
from configparser import RawConfigParser, NoSectionError, NoOptionError
from pathlib import Path
from pprint import pformat

from click import echo

from .._functions.settings import Settings as _S

_DEFAULTS = {
    'method': {'method': 'SIPG', 'alpha': '10.0', 'delta': '0.75', 'beta': '(0.0, 0.0)', 'h_measure': 'size'},
    'mesh': {'shape': 'quad', 'domain': '(0.0, 1.0, 0.0, 1.0)', 'h_1': '0.25', 'fixed_h': '0.0625'},
    'hierarchy': {'steps': 'h', 'levels': '[2, 3, 4, 5]', 'p': '1', 'p_values': '[1, 2, 3, 4, 5, 6]',
                  'p_increment': '1', 'mode': 'assembled'},
    'solver': {'m': '6', 'm_values': '[1, 2, 3, 4, 5, 6, 8, 10, 12, 14, 16, 18, 20]', 'm_split': 'symmetric',
               'tol': '1e-08', 'max_iters': '10000', 'lambda_safety': '1.0'},
    'analysis': {'dense_cap': '3000', 'seed': '0', 'target': 'smoothing-p'},
    'output': {'path': '', 'table': 'h-vs-m', 'jobs': '1'},
}


class OptionsManager(object):
    def __init__(self, path=None):
        """
        :param path: ini文件路径，None时先找当前目录的dgmg_configs.ini，再用默认文件；
                     'default'表示默认文件；False表示不读文件，只用内置默认值
        """
        if path is False:
            self.ini_path = None
        else:
            default_configs = Path(__file__).parent / 'configs.ini'
            if path is None:
                local_configs = Path('dgmg_configs.ini')
                self.ini_path = local_configs if local_configs.exists() else default_configs
            elif path == 'default':
                self.ini_path = default_configs
            else:
                self.ini_path = Path(path)

        self._conf = RawConfigParser()
        if path is not False and self.ini_path.exists():
            self.file_exists = True
            self._conf.read(self.ini_path, encoding='utf-8')
        else:
            self.file_exists = False
            for section, items in _DEFAULTS.items():
                self._conf.add_section(section)
                for item, value in items.items():
                    self.set_item(section, item, value)

    def __getattr__(self, item):
        if item.startswith('_'):
            raise AttributeError(item)
        return self.get_option(item)

    def get_value(self, section, item):
        try:
            return eval(self._conf.get(section, item))
        except (SyntaxError, NameError):
            return self._conf.get(section, item)
        except (NoSectionError, NoOptionError):
            return None

    def get_option(self, section):
        option = dict()
        for item, _ in self._conf.items(section):
            option[item] = self.get_value(section, item)
        return option

    def set_item(self, section, item, value):
        self._conf.set(section, item, str(value))
        return self

    def save(self, path=None):
        default_path = (Path(__file__).parent / 'configs.ini').absolute()
        if path == 'default':
            path = default_path
        elif path is None:
            if self.ini_path is None:
                raise RuntimeError(_S._lang.join(_S._lang.INI_NOT_SET))
            path = self.ini_path.absolute()
        else:
            path = Path(path).absolute()

        path = path / 'configs.ini' if path.is_dir() else path
        path.parent.mkdir(exist_ok=True, parents=True)

        path = str(path)
        with open(path, 'w', encoding='utf-8') as f:
            self._conf.write(f)

        echo(f'{_S._lang.OPTIONS_HAVE_SAVED}: {path}')
        if path == str(default_path):
            echo(_S._lang.AUTO_LOAD_TIP)

        self.file_exists = True
        return path

    def show(self):
        """返回所有配置段的文本"""
        return '\n\n'.join(f'[{i}]\n{pformat(self.get_option(i))}' for i in self._conf.sections())
