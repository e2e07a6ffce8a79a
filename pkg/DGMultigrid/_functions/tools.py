# -*- coding:utf-8 -*-
"""
@Project  : DGMultigrid
@License  : BSD-3-Clause
"""
from csv import writer
from io import StringIO
from pathlib import Path

import numpy as np
from psutil import cpu_count

from .._configs.options_manage import OptionsManager


def configs_to_here(save_name=None):
    """把默认配置文件复制到当前目录"""
    om = OptionsManager('default')
    save_name = f'{save_name}.ini' if save_name is not None else 'dgmg_configs.ini'
    return om.save(save_name)


def rows_to_csv(header, rows, path=None):
    """把表头和行写成CSV文本
    :param header: 列名列表
    :param rows: 行列表
    :param path: 保存路径，为None时不写文件
    :return: CSV文本
    """
    buffer = StringIO()
    w = writer(buffer, lineterminator='\n')
    w.writerow(header)
    w.writerows(rows)
    text = buffer.getvalue()
    if path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding='utf-8')
    return text


def fit_slope(x, y):
    """log-log最小二乘拟合斜率"""
    x = np.log(np.asarray(x, dtype=float))
    y = np.log(np.asarray(y, dtype=float))
    return float(np.polyfit(x, y, 1)[0])


def worker_count(jobs=0):
    """jobs为0时按物理核数决定进程数"""
    if jobs and jobs > 0:
        return int(jobs)
    return cpu_count(logical=False) or cpu_count() or 1


def format_rho(report, digits=4):
    return '-' if not report.converged or report.rho is None else f'{report.rho:.{digits}f}'
