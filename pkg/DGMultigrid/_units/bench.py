# -*- coding:utf-8 -*-
"""
@Project  : DGMultigrid
@License  : BSD-3-Clause

表格复现与估计扫描。每组（层数k、次数p）只建立一次层级结构，组之间可以多进程并行，输出顺序固定。
"""
from concurrent.futures import ProcessPoolExecutor
from logging import getLogger

import numpy as np

from .analysis import ManufacturedSolution, spectral_decompose, smoothing_constant, smoothing_ratio_samples, \
    approximation_constant, convergence_study
from .multigrid import Hierarchy, CycleParams, SolveReport, solve_mg, solve_cg
from .._base.assembly import assemble_operator
from .._base.mesh import build_initial_mesh, refine_uniform, mesh_summary_csv
from .._base.space import DGLevel
from .._base.transfer import build_prolongation
from .._configs.run_options import TABLES, TARGETS
from .._functions.settings import Settings as _S
from .._functions.tools import rows_to_csv, fit_slope, worker_count, format_rho
from ..errors import ConfigError

logger = getLogger(__name__)


def build_run(options, k, p=None):
    """按配置建立k层的层级结构
    :param options: RunOptions对象
    :param k: 层数
    :param p: 最细层次数，默认取options.p
    :return: Hierarchy对象
    """
    mesh_hierarchy, degrees = options.mesh_hierarchy(k, p)
    return Hierarchy.build(mesh_hierarchy, degrees, options.method_config(), options.mode, options.lambda_safety,
                           seed=options.seed)


def run_cell(options, k, m, p=None, hierarchy=None):
    """单次W循环求解，右端项取人造解sin(πx)sin(πy)对应的载荷
    :return: SolveReport对象
    """
    hierarchy = build_run(options, k, p) if hierarchy is None else hierarchy
    params = CycleParams.from_m(m, options.m_split)
    _, report = solve_mg(hierarchy, ManufacturedSolution.f, params, options.tol, options.max_iters)
    return report


def cg_load(op, seed=0):
    """CG基准的右端项：系数为标准正态随机数的向量，激发全部特征分量"""
    return np.random.default_rng(seed).standard_normal(op.n)


def run_cg(options, k, p=None, hierarchy=None):
    """最细层上的无预条件CG，右端项为cg_load(op, options.seed)"""
    if hierarchy is not None:
        op = hierarchy.operators[-1]
    else:
        mesh_hierarchy, degrees = options.mesh_hierarchy(k, p)
        level = DGLevel(mesh_hierarchy.levels[-1], degrees[-1], k)
        op = assemble_operator(level, options.method_config())
    _, report = solve_cg(op, cg_load(op, options.seed), options.tol)
    return report


def _run_group(options, k, p, m_values, with_cg):
    hierarchy = build_run(options, k, p)
    reports = []
    for m in m_values:
        reports.append(run_cell(options, k, m, p, hierarchy))
        logger.info(_S._lang.CELL_DONE_.format(f'p={p} k={k} m={m} {format_rho(reports[-1])}'))
    cg = run_cg(options, k, p, hierarchy) if with_cg else None
    return reports, cg


def _run_groups(tasks, jobs):
    workers = min(worker_count(jobs), len(tasks)) if tasks else 1
    if workers <= 1:
        return [_run_group(*task) for task in tasks]
    logger.info(_S._lang.WORKERS_.format(workers))
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(_run_group, *zip(*tasks)))


class BenchTable(object):
    def __init__(self, table, header, rows, records, footer=None):
        """
        :param table: 表格类型
        :param header: 表头
        :param rows: 表格行
        :param records: 每次求解一行的长格式记录
        :param footer: 附加行，如CG迭代次数
        """
        self.table = table
        self.header = header
        self.rows = rows
        self.records = records
        self.footer = footer or []

    def __repr__(self):
        return f'<BenchTable {self.table} rows={len(self.rows)}>'

    def to_csv(self, path=None):
        return rows_to_csv(self.header, self.rows + self.footer, path)

    def records_csv(self, path=None):
        return rows_to_csv(SolveReport.ROW_FIELDS, self.records, path)


def _record(options, report, p, k, m):
    params = CycleParams.from_m(m, options.m_split)
    return report.to_row(options.method_config().method, options.shape, p, k, params.m1, params.m2, options.mode)


def _valid_depth(options, k, p):
    return options.steps == 'h' or p - (k - 1) * options.p_increment >= 1


def cmd_bench(options, table=None):
    """
    :param options: RunOptions对象
    :param table: 'h-vs-m'、'h-inherited'、'h-vs-p'、'p-vs-m'、'p-vs-p'，默认取options.table
    :return: BenchTable对象
    """
    table = options.table if table is None else table
    if table not in TABLES:
        raise ConfigError(_S._lang.UNKNOWN_TABLE_, table, ALLOW_VAL=TABLES)
    if table == 'h-inherited' and options.mode != 'inherited':
        options.set_hierarchy(mode='inherited')
    levels = list(options.levels)

    if table in ('h-vs-m', 'h-inherited', 'p-vs-m'):
        tasks = [(options, k, options.p, list(options.m_values), table == 'p-vs-m' and num == len(levels) - 1)
                 for num, k in enumerate(levels)]
        results = _run_groups(tasks, options.jobs)
        header = ['m'] + [f'k={k}' for k in levels]
        rows = [[m] + [format_rho(reports[i]) for reports, _ in results] for i, m in enumerate(options.m_values)]
        records = [_record(options, reports[i], options.p, k, m)
                   for (reports, _), k in zip(results, levels) for i, m in enumerate(options.m_values)]
        footer = []
        if table == 'p-vs-m':
            footer = [[_S._lang.CG_COUNTS, results[-1][1].iterations] + [''] * (len(levels) - 1)]
        return BenchTable(table, header, rows, records, footer)

    # h-vs-p与p-vs-p：行为次数p，固定m
    m = options.m
    tasks = [(options, k, p, [m], table == 'h-vs-p' or k == levels[-1])
             for p in options.p_values for k in levels if _valid_depth(options, k, p)]
    results = dict(zip([(task[2], task[1]) for task in tasks], _run_groups(tasks, options.jobs)))

    if table == 'h-vs-p':
        header = (['p'] + [f'N(k={k})' for k in levels] + [f'rho(k={k})' for k in levels]
                  + [f'CG(k={k})' for k in levels])
    else:
        header = ['p'] + [f'N(k={k})' for k in levels] + [f'rho(k={k})' for k in levels] + ['CG']
    rows = []
    records = []
    for p in options.p_values:
        counts, rhos, cgs = [], [], []
        for k in levels:
            if (p, k) not in results:
                counts.append('-')
                rhos.append('-')
                cgs.append('-')
                continue
            (report,), cg = results[(p, k)]
            counts.append(report.iterations if report.converged else '-')
            rhos.append(format_rho(report, 2))
            cgs.append(cg.iterations if cg is not None and cg.converged else '-')
            records.append(_record(options, report, p, k, m))
        rows.append([p] + counts + rhos + (cgs if table == 'h-vs-p' else [cgs[-1]]))
    return BenchTable(table, header, rows, records)


class EstimateTable(object):
    def __init__(self, target, header, rows, slope):
        self.target = target
        self.header = header
        self.rows = rows
        self.slope = slope

    def __repr__(self):
        return f'<EstimateTable {self.target} slope={self.slope:.4g}>'

    def to_csv(self, path=None):
        return rows_to_csv(self.header, self.rows + [['slope', f'{self.slope:.6g}']], path)


def _single_level(options, h, p):
    mesh = build_initial_mesh(options.domain, options.cells(h), options.shape)
    level = DGLevel(mesh, p, 1)
    return level, assemble_operator(level, options.method_config())


def cmd_estimate(options, target=None):
    """光滑常数关于p、m的扫描和逼近常数关于p的扫描（s = 2，t = 0）
    :param options: RunOptions对象
    :param target: 'smoothing-p'、'smoothing-m'、'approximation-p'
    :return: EstimateTable对象
    """
    target = options.target if target is None else target
    if target not in TARGETS:
        raise ConfigError(_S._lang.UNKNOWN_TARGET_, target, ALLOW_VAL=TARGETS)
    cap = options.dense_cap
    rows = []

    if target == 'smoothing-p':
        constants = []
        for p in options.p_values:
            _, op = _single_level(options, options.h_1, p)
            decomp = spectral_decompose(op, cap)
            constant = smoothing_constant(decomp, options.lambda_safety * decomp.eigenvalues[-1], options.m)
            constants.append(constant)
            rows.append([p, f'{constant:.10g}', f'{constant / p ** 4:.10g}'])
        return EstimateTable(target, ['p', 'constant', 'constant/p^4'], rows,
                             fit_slope(options.p_values, constants))

    if target == 'smoothing-m':
        _, op = _single_level(options, options.fixed_h, options.p)
        decomp = spectral_decompose(op, cap)
        lam = options.lambda_safety * decomp.eigenvalues[-1]
        squares = []
        for m in options.m_values:
            constant = smoothing_constant(decomp, lam, m)
            sampled = smoothing_ratio_samples(decomp, lam, m, n_samples=200, seed=options.seed)
            squares.append(constant ** 2)
            rows.append([m, f'{constant:.10g}', f'{constant ** 2:.10g}', f'{sampled:.10g}'])
        return EstimateTable(target, ['m', 'constant', 'constant^2', 'sampled'], rows,
                             fit_slope([1 + m for m in options.m_values], squares))

    constants = []
    coarse_mesh = build_initial_mesh(options.domain, max(1, options.cells(options.h_1) // 2), options.shape)
    fine_mesh = refine_uniform(coarse_mesh)
    for p in options.p_values:
        coarse, fine = DGLevel(coarse_mesh, p, 1), DGLevel(fine_mesh, p, 2)
        config = options.method_config()
        fine_op = assemble_operator(fine, config)
        decomp = spectral_decompose(fine_op, cap)
        constant = approximation_constant(fine_op, assemble_operator(coarse, config),
                                          build_prolongation(coarse, fine), decomp, cap)
        constants.append(constant)
        rows.append([p, f'{constant:.10g}', f'{constant * p:.10g}', f'{constant * p ** 2:.10g}'])
    return EstimateTable(target, ['p', 'constant', 'constant*p', 'constant*p^2'], rows,
                         fit_slope(options.p_values, constants))


def smoothing_threshold(options, p, m_max=40, k=None):
    """ρ < 1的最小光滑步数m，找不到时返回None"""
    k = options.levels[0] if k is None else k
    hierarchy = build_run(options, k, p)
    for m in range(1, m_max + 1):
        report = run_cell(options, k, m, p, hierarchy)
        if report.converged and report.rho is not None and report.rho < 1:
            return m
    return None


def cmd_solve(options, k=None, m=None, p=None):
    """单次建立层级并求解
    :param options: RunOptions对象
    :param k: 层数，默认取options.levels中最大的
    :param m: 光滑步数，默认取options.m
    :param p: 最细层次数，默认取options.p
    :return: (SolveReport对象, CSV文本)
    """
    k = max(options.levels) if k is None else k
    m = options.m if m is None else m
    p = options.p if p is None else p
    report = run_cell(options, k, m, p)
    text = rows_to_csv(SolveReport.ROW_FIELDS, [_record(options, report, p, k, m)], options.path or None)
    return report, text


def cmd_mesh(options, k=None, p=None):
    """网格层级概要"""
    k = max(options.levels) if k is None else k
    mesh_hierarchy, degrees = options.mesh_hierarchy(k, p)
    return mesh_summary_csv(mesh_hierarchy, degrees, options.path or None)


def cmd_study(options, degrees=None, n_refinements=3):
    """人造解收敛阶研究
    :return: (StudyRow列表, {p: (L²阶, DG阶)}, CSV文本)
    """
    degrees = list(options.p_values) if degrees is None else degrees
    rows, orders = convergence_study(options.method_config(), options.shape, degrees, n_refinements,
                                     options.cells(options.h_1))
    body = [row.to_row() for row in rows]
    body.extend(['order', p, f'{l2:.4f}', f'{dg:.4f}'] for p, (l2, dg) in orders.items())
    text = rows_to_csv(['p', 'h', 'n_dofs', 'l2_error', 'dg_error'], body, options.path or None)
    return rows, orders, text
