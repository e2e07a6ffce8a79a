# -*- coding:utf-8 -*-
"""
@Project  : DGMultigrid
@License  : BSD-3-Clause
"""
from ._base.assembly import MethodConfig, DGOperator, LiftingFactors
from ._base.mesh import Element, Face, MeshLevel, MeshHierarchy
from ._base.space import ReferenceBasis, DGLevel, GridFunction
from ._base.transfer import TransferPair, CoarseProjector
from ._units.analysis import SpectralDecomposition, ErrorPropagator, ManufacturedSolution, StudyRow
from ._units.bench import BenchTable, EstimateTable
from ._units.multigrid import CycleParams, SolveReport, Hierarchy

__all__ = ['MethodConfig', 'DGOperator', 'LiftingFactors', 'Element', 'Face', 'MeshLevel', 'MeshHierarchy',
           'ReferenceBasis', 'DGLevel', 'GridFunction', 'TransferPair', 'CoarseProjector', 'SpectralDecomposition',
           'ErrorPropagator', 'ManufacturedSolution', 'StudyRow', 'BenchTable', 'EstimateTable', 'CycleParams',
           'SolveReport', 'Hierarchy']
