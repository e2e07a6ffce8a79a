# -*- coding:utf-8 -*-
"""
@Project  : DGMultigrid
@License  : BSD-3-Clause
"""
from ._base.assembly import (MethodConfig, assemble_operator, assemble_rhs, assemble_lifting, assemble_flux_form,
                             assemble_dg_norm_matrix, assemble_jump_penalty, penalty, penalty_value, dg_norm,
                             export_operator)
from ._base.mesh import build_initial_mesh, refine_uniform, build_hierarchy, mesh_summary_csv, dump_mesh
from ._base.space import build_basis, evaluate, evaluate_gradient, discrete_inner_product, l2_project
from ._base.transfer import (build_prolongation, restrict, composite_prolongation, galerkin_coarse_operator,
                             build_P_operator)
from ._functions.quadrature import quad_rule
from ._functions.settings import Settings
from ._functions.tools import configs_to_here
from ._units.analysis import (spectral_decompose, norm_s, smoothing_constant, smoothing_ratio_samples,
                              approximation_constant, build_error_propagator, two_level_propagator,
                              stability_constants, inherited_smoothing_constant, continuity_coercivity_constants,
                              dg_norm_level_ratio, convergence_study)
from ._units.multigrid import Hierarchy, estimate_lambda, power_iteration, richardson, wcycle, solve_mg, solve_cg

__all__ = ['Settings', 'configs_to_here', 'quad_rule', 'build_initial_mesh', 'refine_uniform', 'build_hierarchy',
           'mesh_summary_csv', 'dump_mesh', 'build_basis', 'evaluate', 'evaluate_gradient', 'discrete_inner_product',
           'l2_project', 'assemble_operator', 'assemble_rhs', 'assemble_lifting', 'assemble_flux_form',
           'assemble_dg_norm_matrix', 'assemble_jump_penalty', 'penalty', 'penalty_value', 'dg_norm',
           'export_operator', 'build_prolongation', 'restrict', 'composite_prolongation', 'galerkin_coarse_operator',
           'build_P_operator', 'estimate_lambda', 'power_iteration', 'richardson', 'wcycle', 'solve_mg', 'solve_cg',
           'spectral_decompose', 'norm_s', 'smoothing_constant', 'smoothing_ratio_samples', 'approximation_constant',
           'build_error_propagator', 'two_level_propagator', 'stability_constants', 'inherited_smoothing_constant',
           'continuity_coercivity_constants', 'dg_norm_level_ratio', 'convergence_study', 'make_hierarchy']


def make_hierarchy(method='SIPG', shape='quad', n_cells=4, k=2, p=1, steps='h', p_increment=1, mode='assembled',
                   alpha=10., domain=(0., 1., 0., 1.)):
    """不经过配置文件，直接建立单位正方形上的k层层级结构
    :param method: 离散方法
    :param shape: 'quad' 或 'triangle'
    :param n_cells: 最粗层每边单元数
    :param k: 层数
    :param p: 最粗层多项式次数
    :param steps: 每一步的类型，'h'、'p'、'hp'，或者长度为k-1的列表
    :param p_increment: p步骤每层增加的次数
    :param mode: 'assembled' 或 'inherited'
    :param alpha: 罚参数
    :param domain: (x0, x1, y0, y1)
    :return: Hierarchy对象
    """
    steps = [steps] * (k - 1) if isinstance(steps, str) else list(steps)
    mesh_hierarchy, degrees = build_hierarchy(build_initial_mesh(domain, n_cells, shape), steps, p, p_increment)
    return Hierarchy.build(mesh_hierarchy, degrees, MethodConfig(method, alpha), mode)
