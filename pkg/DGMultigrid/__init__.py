# -*- coding:utf-8 -*-
"""
@Project  : DGMultigrid
@License  : BSD-3-Clause

hp型间断Galerkin离散二维Poisson问题，以及用W循环多重网格（逐层组装或继承粗层算子）求解。
"""
from ._base.assembly import MethodConfig, assemble_operator
from ._base.mesh import build_initial_mesh, build_hierarchy
from ._base.space import DGLevel
from ._configs.run_options import RunOptions
from ._units.multigrid import Hierarchy, CycleParams, solve_mg, solve_cg
from .version import __version__
