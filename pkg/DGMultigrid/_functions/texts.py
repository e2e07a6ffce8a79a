# -*- coding:utf-8 -*-
"""
@Project  : DGMultigrid
@License  : BSD-3-Clause
"""
from locale import getlocale

from ..version import __version__


def get_txt_class(lang=None):
    languages = {
        'zh_cn': Texts,
        'cn': Texts,
        'en': English,
    }
    if lang is None:
        locale = str(getlocale()[0]).lower()
        if locale.startswith('zh') or 'chinese' in locale:
            lang = 'zh_cn'
        elif locale.startswith('en') or 'english' in locale:
            lang = 'en'
        else:
            lang = 'zh_cn'
    else:
        lang = lang.lower()
    lang = languages.get(lang, None)
    if lang is None:
        raise ValueError(f'lang must be one of {languages.keys()}')
    return lang


class Texts(object):
    # --------- 参数名 ---------
    VERSION = '版本'
    INFO = '详情'
    METHOD = '方法'
    ARGS = '参数'
    ARG = '参数'
    PATH = '路径'
    VALUE = '值'
    ALLOW_VAL = '允许的值'
    CURR_VAL = '当前值'
    ALLOW_TYPE = '允许的类型'
    CURR_TYPE = '当前类型'
    TIP = '提示'
    LEVEL = '层级'
    SIZE = '规模'
    LIMIT = '上限'
    ESTIMATE = '当前估计值'
    SHAPE = '单元形状'
    ITERATIONS = '迭代次数'

    # --------- 错误默认信息 ---------
    INVALIDARGUMENTERROR = '参数无效。'
    UNSUPPORTEDCONFIGURATIONERROR = '不支持该配置。'
    NUMERICALFAILUREERROR = '数值计算失败。'
    CAPACITYERROR = '问题规模超过稠密计算上限。'
    CONFIGERROR = '运行配置有误。'
    NOTCONVERGEDERROR = '迭代未收敛。'

    # --------- 错误提示 ---------
    INCORRECT_VAL_ = '{}参数值不正确。'
    INCORRECT_TYPE_ = '{}参数类型不正确。'
    INI_NOT_SET = 'ini文件路径未设置。'
    NON_POSITIVE_CELLS = '每边单元数必须为正整数。'
    DEGREE_TOO_LOW = '多项式次数必须不小于1。'
    NEGATIVE_P_INCREMENT = '次数增量不能为负数。'
    UNKNOWN_STEP_ = '未知的层级步骤：{}'
    UNKNOWN_METHOD_ = '未知的离散方法：{}'
    UNKNOWN_SHAPE_ = '未知的单元形状：{}'
    UNKNOWN_PRESET_ = '未知的预设：{}'
    UNKNOWN_TABLE_ = '未知的表格类型：{}'
    UNKNOWN_TARGET_ = '未知的估计目标：{}'
    UNKNOWN_MODE_ = '未知的算子模式：{}'
    LEVEL_MISMATCH = '两个网格函数不属于同一层级。'
    ELEMENT_OUT_OF_RANGE_ = '单元编号{}超出范围。'
    SIZE_MISMATCH_ = '向量长度{}与自由度数不一致。'
    NOT_NESTED = '两个层级不是嵌套的。'
    QUAD_ONLY_METHOD_ = '{}方法只支持四边形网格。'
    FLUX_FORM_THETA = '通量形式组装只支持θ=0的方法。'
    SINGULAR_MATRIX = '粗层矩阵奇异，无法分解。'
    POWER_NOT_CONVERGED = '幂迭代在最大步数内未收敛。'
    DENSE_CAP_EXCEEDED = '自由度数超过稠密分析上限。'
    USE_COARSER = '请使用更粗的网格或更低的多项式次数，或调大Settings.dense_cap。'
    CHAIN_MISMATCH = '传递算子链与层级不匹配。'
    INVALID_ST_RANGE = '需要满足0 ≤ t ≤ s ≤ 2。'
    LEVEL_OUT_OF_RANGE_ = '层级{}超出范围。'
    LAMBDA_SAFETY_RANGE = '安全系数必须在1.0到1.2之间。'
    NEGATIVE_STEPS = '光滑步数不能为负数。'
    EMPTY_CYCLE = 'm1与m2之和至少为1。'
    NOT_POSITIVE_ = '{}必须为正数。'
    FILE_HEADER_MISMATCH = '文件头与层级不匹配。'

    # --------- 日志与输出 ---------
    OPTIONS_HAVE_SAVED = '配置已保存到文件'
    AUTO_LOAD_TIP = '以后程序可自动从文件加载配置'
    ASSEMBLED_ = '层级{}组装完成，方法{}，自由度{}，非零元{}'
    INHERITED_ = '层级{}由细层继承得到，自由度{}'
    LAMBDA_ = '层级{}的Λ = {:.6g}'
    HIERARCHY_BUILT_ = '层级结构建立完成，共{}层，自由度{}'
    SOLVE_DONE_ = '求解完成：迭代{}次，ρ = {}'
    SOLVE_NOT_CONVERGED_ = '求解在{}次迭代内未收敛'
    SOLVE_DIVERGED_ = '第{}次迭代残差发散，提前停止'
    CG_DONE_ = 'CG求解完成：迭代{}次，收敛：{}'
    CELL_DONE_ = '单元格完成：{}'
    LANCZOS_FALLBACK = 'Lanczos未收敛，改用幂迭代'
    STUDY_ROW_ = 'p = {}，h = {:.4g}，L2误差 {:.3e}，DG误差 {:.3e}'
    WORKERS_ = '使用{}个进程'
    NOT_CONVERGED_MARK = '-'
    CG_COUNTS = 'CG迭代次数'

    @classmethod
    def get(cls, item):
        return getattr(cls, item, item) if isinstance(item, str) and item.isupper() else item

    @classmethod
    def join(cls, *args, **kwargs):
        kwargs['VERSION'] = __version__
        main = ('\n' + args[0].format(*[i for i in args[1:]])) if args else ''
        msg = ('\n' + '\n'.join([f'{cls.get(k)}: {v}' for k, v in kwargs.items()]))
        return f'{main}{msg}'


class English(Texts):
    # --------- 参数名 ---------
    VERSION = 'Version'
    INFO = 'Information'
    METHOD = 'Method'
    ARGS = 'Arguments'
    ARG = 'Argument'
    PATH = 'Path'
    VALUE = 'Value'
    ALLOW_VAL = 'Allowed values'
    CURR_VAL = 'Current value'
    ALLOW_TYPE = 'Allowed types'
    CURR_TYPE = 'Current type'
    TIP = 'Tip'
    LEVEL = 'Level'
    SIZE = 'Size'
    LIMIT = 'Limit'
    ESTIMATE = 'Best estimate'
    SHAPE = 'Element shape'
    ITERATIONS = 'Iterations'

    # --------- 错误默认信息 ---------
    INVALIDARGUMENTERROR = 'Invalid argument.'
    UNSUPPORTEDCONFIGURATIONERROR = 'Unsupported configuration.'
    NUMERICALFAILUREERROR = 'Numerical failure.'
    CAPACITYERROR = 'Problem size exceeds the dense computation cap.'
    CONFIGERROR = 'Invalid run configuration.'
    NOTCONVERGEDERROR = 'Iteration did not converge.'

    # --------- 错误提示 ---------
    INCORRECT_VAL_ = '{} parameter value is incorrect.'
    INCORRECT_TYPE_ = '{} parameter type is incorrect.'
    INI_NOT_SET = 'ini path not set.'
    NON_POSITIVE_CELLS = 'The number of cells per side must be a positive integer.'
    DEGREE_TOO_LOW = 'The polynomial degree must be at least 1.'
    NEGATIVE_P_INCREMENT = 'The degree increment must not be negative.'
    UNKNOWN_STEP_ = 'Unknown hierarchy step: {}'
    UNKNOWN_METHOD_ = 'Unknown DG method: {}'
    UNKNOWN_SHAPE_ = 'Unknown element shape: {}'
    UNKNOWN_PRESET_ = 'Unknown preset: {}'
    UNKNOWN_TABLE_ = 'Unknown table: {}'
    UNKNOWN_TARGET_ = 'Unknown estimate target: {}'
    UNKNOWN_MODE_ = 'Unknown operator mode: {}'
    LEVEL_MISMATCH = 'The grid functions live on different levels.'
    ELEMENT_OUT_OF_RANGE_ = 'Element id {} is out of range.'
    SIZE_MISMATCH_ = 'Vector length {} does not match the number of dofs.'
    NOT_NESTED = 'The two levels are not nested.'
    QUAD_ONLY_METHOD_ = 'The {} method only supports quadrilateral meshes.'
    FLUX_FORM_THETA = 'Flux-form assembly only supports methods with theta = 0.'
    SINGULAR_MATRIX = 'The coarse matrix is singular and cannot be factorized.'
    POWER_NOT_CONVERGED = 'Power iteration did not converge within the maximum number of steps.'
    DENSE_CAP_EXCEEDED = 'The number of dofs exceeds the dense analysis cap.'
    USE_COARSER = 'Use a coarser mesh or a lower degree, or raise Settings.dense_cap.'
    CHAIN_MISMATCH = 'The transfer chain does not match the levels.'
    INVALID_ST_RANGE = '0 <= t <= s <= 2 is required.'
    LEVEL_OUT_OF_RANGE_ = 'Level {} is out of range.'
    LAMBDA_SAFETY_RANGE = 'The safety factor must lie between 1.0 and 1.2.'
    NEGATIVE_STEPS = 'The number of smoothing steps must not be negative.'
    EMPTY_CYCLE = 'm1 + m2 must be at least 1.'
    NOT_POSITIVE_ = '{} must be positive.'
    FILE_HEADER_MISMATCH = 'The file header does not match the level.'

    # --------- 日志与输出 ---------
    OPTIONS_HAVE_SAVED = 'Configuration saved to file'
    AUTO_LOAD_TIP = 'The program will load the configuration from this file from now on'
    ASSEMBLED_ = 'Level {} assembled, method {}, {} dofs, {} nonzeros'
    INHERITED_ = 'Level {} inherited from the finer level, {} dofs'
    LAMBDA_ = 'Lambda on level {} = {:.6g}'
    HIERARCHY_BUILT_ = 'Hierarchy built, {} levels, {} dofs'
    SOLVE_DONE_ = 'Solve finished: {} iterations, rho = {}'
    SOLVE_NOT_CONVERGED_ = 'Solve did not converge within {} iterations'
    SOLVE_DIVERGED_ = 'Residual diverged at iteration {}, stopping early'
    CG_DONE_ = 'CG finished: {} iterations, converged: {}'
    CELL_DONE_ = 'Cell finished: {}'
    LANCZOS_FALLBACK = 'Lanczos did not converge, falling back to power iteration'
    STUDY_ROW_ = 'p = {}, h = {:.4g}, L2 error {:.3e}, DG error {:.3e}'
    WORKERS_ = 'Using {} worker processes'
    CG_COUNTS = 'CG iteration counts'
