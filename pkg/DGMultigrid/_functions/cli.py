# -*- coding:utf-8 -*-
"""
@Project  : DGMultigrid
@License  : BSD-3-Clause
"""
from functools import wraps

from click import group, option, echo, UsageError, BadParameter, ClickException, Choice, Path

from .settings import Settings
from .tools import configs_to_here as ch
from .._configs.options_manage import OptionsManager
from .._configs.run_options import RunOptions, PRESETS, TABLES, TARGETS
from .._units.bench import cmd_bench, cmd_estimate, cmd_solve, cmd_mesh, cmd_study
from ..errors import ConfigError, InvalidArgumentError, UnsupportedConfigurationError, BaseError


def _int_list(ctx, param, value):
    """'2,3,4' -> [2, 3, 4]"""
    if value is None:
        return None
    try:
        return [int(i) for i in value.replace(' ', '').split(',') if i]
    except ValueError:
        raise BadParameter(value, ctx=ctx, param=param)


def _run_options(func):
    """给命令挂上与RunOptions字段对应的参数"""
    params = (
        option('--ini', type=Path(exists=True, dir_okay=False), help='ini配置文件路径'),
        option('--preset', type=Choice(tuple(PRESETS)), help='预设名称，如table1-sipg'),
        option('--method', help='SIPG、SIPG_delta、LDG、Bassi、Brezzi'),
        option('--alpha', type=float, help='罚参数α'),
        option('--delta', type=float, help='SIPG(δ)的δ'),
        option('--beta', type=float, nargs=2, help='LDG的β向量'),
        option('--beta-switch', is_flag=True, help='LDG逐面取β = n_F / 2'),
        option('--h-measure', help="'size' 或 'diameter'"),
        option('--shape', help="'quad' 或 'triangle'"),
        option('--h1', 'h_1', type=float, help='最粗层网格尺寸'),
        option('--fixed-h', type=float, help='p-multigrid的固定网格尺寸'),
        option('--steps', help="层级步骤：'h'、'p' 或 'hp'"),
        option('--levels', callback=_int_list, help='层数列表，如2,3,4,5'),
        option('-p', '--p', 'p', type=int, help='最细层多项式次数'),
        option('--p-values', callback=_int_list, help='次数列表'),
        option('--p-increment', type=int, help='p步骤每层增加的次数'),
        option('--mode', help="'assembled' 或 'inherited'"),
        option('-m', '--m', 'm', type=int, help='光滑步数'),
        option('--m-values', callback=_int_list, help='光滑步数列表'),
        option('--m-split', help="'symmetric'（m1 = m2 = m）或 'total'（m1 + m2 = m）"),
        option('--tol', type=float, help='相对残差容差'),
        option('--max-iters', type=int, help='最大迭代次数'),
        option('--lambda-safety', type=float, help='Λ安全系数，1.0到1.2'),
        option('--dense-cap', type=int, help='稠密分析的自由度上限'),
        option('--seed', type=int, help='随机向量种子'),
        option('-o', '--output', 'path', type=Path(dir_okay=False), help='CSV输出路径，不设置时输出到屏幕'),
        option('-j', '--jobs', type=int, help='进程数，0表示按物理核数'),
    )
    for param in reversed(params):
        func = param(func)
    return func


def _build_options(ini=None, preset=None, **kwargs):
    """由ini、预设和命令行参数合成RunOptions，命令行参数优先"""
    options = RunOptions.preset(preset, ini_path=ini) if preset else RunOptions(ini_path=ini)
    beta = 'switch' if kwargs['beta_switch'] else tuple(kwargs['beta']) if kwargs['beta'] else None
    options.set_method(kwargs['method'], kwargs['alpha'], kwargs['delta'], beta, kwargs['h_measure'])
    options.set_mesh(kwargs['shape'], kwargs['h_1'], kwargs['fixed_h'])
    options.set_hierarchy(kwargs['steps'], kwargs['levels'], kwargs['p'], kwargs['p_values'],
                          kwargs['p_increment'], kwargs['mode'])
    options.set_smoothing(kwargs['m'], kwargs['m_values'], kwargs['m_split'])
    options.set_solver(kwargs['tol'], kwargs['max_iters'], kwargs['lambda_safety'])
    options.set_analysis(kwargs['dense_cap'], kwargs['seed'])
    options.set_output(kwargs['path'], jobs=kwargs['jobs'])
    return options.validate()


def _handle_errors(func):
    """配置错误转为用法错误（退出码2），数值和容量错误转为一般错误（退出码1）"""

    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (ConfigError, InvalidArgumentError, UnsupportedConfigurationError) as e:
            raise UsageError(str(e))
        except BaseError as e:
            raise ClickException(str(e))

    return wrapper


def _emit(options, text):
    if not options.path:
        echo(text, nl=False)


@group()
@option('--lang', type=Choice(('zh_cn', 'cn', 'en')), help='提示语言')
@option('-v', '--verbose', is_flag=True, help='输出INFO级别日志')
def main(lang, verbose):
    """hp-DG离散与W循环多重网格的求解和实验工具"""
    if lang:
        Settings.set_language(lang)
    if verbose:
        Settings.set_log_level('INFO')


@main.command()
@_run_options
@option('-k', type=int, help='层数，默认取levels中最大的')
@_handle_errors
def solve(k, **kwargs):
    """单次建立层级并用W循环求解"""
    options = _build_options(**kwargs)
    report, text = cmd_solve(options, k)
    _emit(options, text)
    echo(f'N = {report.iterations}, rho = {report.rho}, converged = {report.converged}', err=True)


@main.command()
@_run_options
@option('--table', type=Choice(TABLES), help='表格类型，默认取配置中的值')
@option('--records', type=Path(dir_okay=False), help='长格式记录（每次求解一行）的输出路径')
@_handle_errors
def bench(table, records, **kwargs):
    """按表格扫描收敛因子ρ"""
    options = _build_options(**kwargs)
    result = cmd_bench(options, table)
    _emit(options, result.to_csv(options.path or None))
    if records:
        result.records_csv(records)


@main.command()
@_run_options
@option('--target', type=Choice(TARGETS), help='估计目标，默认取配置中的值')
@_handle_errors
def estimate(target, **kwargs):
    """光滑常数和逼近常数的数值估计"""
    options = _build_options(**kwargs)
    result = cmd_estimate(options, target)
    _emit(options, result.to_csv(options.path or None))


@main.command()
@_run_options
@option('-k', type=int, help='层数，默认取levels中最大的')
@_handle_errors
def mesh(k, **kwargs):
    """输出网格层级概要"""
    options = _build_options(**kwargs)
    _emit(options, cmd_mesh(options, k))


@main.command()
@_run_options
@option('--refinements', type=int, default=3, show_default=True, help='加密次数')
@_handle_errors
def study(refinements, **kwargs):
    """人造解收敛阶研究"""
    options = _build_options(**kwargs)
    _, _, text = cmd_study(options, n_refinements=refinements)
    _emit(options, text)


@main.command()
@option('--ini', type=Path(exists=True, dir_okay=False), help='ini配置文件路径')
@option('-c', '--configs-to-here', is_flag=True, help='复制默认配置文件到当前路径')
@option('-s', '--save', type=Path(dir_okay=False), help='把预设或当前配置保存到该路径')
@option('--preset', type=Choice(tuple(PRESETS)), help='与--save一起使用的预设名称')
@_handle_errors
def config(ini, configs_to_here, save, preset):
    """显示当前配置，或复制、保存配置文件"""
    cmd_config(ini, configs_to_here, save, preset)


def cmd_config(ini=None, to_here=False, save=None, preset=None):
    """
    :param ini: ini文件路径，为None时按默认顺序查找
    :param to_here: 是否复制默认配置文件到当前路径
    :param save: 保存路径
    :param preset: 保存时使用的预设
    :return: 显示的文本
    """
    if to_here:
        return ch()
    if save:
        options = RunOptions.preset(preset, ini_path=ini) if preset else RunOptions(ini_path=ini)
        return options.validate().save(save)
    om = OptionsManager(ini)
    text = om.show()
    echo(text)
    return text


if __name__ == '__main__':
    main()
