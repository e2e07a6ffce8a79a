# -*- coding:utf-8 -*-
import numpy as np
import pytest

from DGMultigrid import RunOptions
from DGMultigrid.errors import ConfigError
from DGMultigrid.items import SolveReport
from DGMultigrid._units.bench import (cmd_bench, cmd_estimate, cmd_solve, cmd_mesh, cmd_study, smoothing_threshold,
                                      build_run, run_cell, run_cg, cg_load)


def _is_cell(value):
    return value == '-' or 0 <= float(value) < 1


@pytest.fixture
def options():
    """2×2最粗网格上的小规模配置"""
    return (RunOptions(read_file=False)
            .set_mesh(h_1=.5, fixed_h=.5)
            .set_hierarchy(levels=[2, 3], p=1, p_values=[1, 2])
            .set_smoothing(m=4, m_values=[2, 4])
            .validate())


def test_h_vs_m_table(options):
    table = cmd_bench(options, 'h-vs-m')
    assert table.header == ['m', 'k=2', 'k=3']
    assert [row[0] for row in table.rows] == [2, 4]
    assert all(_is_cell(cell) for row in table.rows for cell in row[1:])
    assert len(table.records) == 4
    lines = table.to_csv().splitlines()
    assert lines[0] == 'm,k=2,k=3'
    assert len(lines) == 3
    assert table.records_csv().splitlines()[0] == ','.join(SolveReport.ROW_FIELDS)


def test_inherited_table_switches_mode(options):
    table = cmd_bench(options, 'h-inherited')
    assert options.mode == 'inherited'
    assert all(record[6] == 'inherited' for record in table.records)


def test_h_vs_p_table(options):
    table = cmd_bench(options.set_hierarchy(levels=[2]), 'h-vs-p')
    assert table.header == ['p', 'N(k=2)', 'rho(k=2)', 'CG(k=2)']
    assert [row[0] for row in table.rows] == [1, 2]
    for row in table.rows:
        assert row[1] == '-' or row[1] > 0
        assert _is_cell(row[2])
        assert row[3] == '-' or row[3] > 0


def test_p_vs_m_table_has_cg_footer(options):
    options.set_hierarchy(steps='p', levels=[2, 3], p=3)
    table = cmd_bench(options, 'p-vs-m')
    assert len(table.footer) == 1
    assert table.footer[0][1] > 0
    assert table.to_csv().splitlines()[-1].split(',')[1] == str(table.footer[0][1])


def test_p_vs_p_table_marks_too_deep_cells(options):
    options.set_hierarchy(steps='p', levels=[2, 3], p_values=[2, 3])
    table = cmd_bench(options, 'p-vs-p')
    assert table.header == ['p', 'N(k=2)', 'N(k=3)', 'rho(k=2)', 'rho(k=3)', 'CG']
    first = table.rows[0]
    assert first[0] == 2
    assert first[2] == '-' and first[4] == '-'


def test_parallel_sweep_is_deterministic(options):
    serial = cmd_bench(options.set_output(jobs=1), 'h-vs-m').to_csv()
    parallel = cmd_bench(options.set_output(jobs=2), 'h-vs-m').to_csv()
    assert serial == parallel


def test_unknown_table(options):
    with pytest.raises(ConfigError):
        cmd_bench(options, 'p-vs-h')


def test_table_written_to_file(options, tmp_path):
    path = tmp_path / 'out' / 'table.csv'
    text = cmd_bench(options, 'h-vs-m').to_csv(path)
    assert path.read_text(encoding='utf-8') == text


def test_smoothing_p_estimate(options):
    table = cmd_estimate(options.set_hierarchy(p_values=[1, 2, 3]), 'smoothing-p')
    assert table.header == ['p', 'constant', 'constant/p^4']
    assert len(table.rows) == 3
    assert table.slope > 0
    assert table.to_csv().splitlines()[-1].startswith('slope,')


def test_smoothing_m_estimate(options):
    table = cmd_estimate(options.set_smoothing(m_values=[1, 2, 4, 8]), 'smoothing-m')
    squares = [float(row[2]) for row in table.rows]
    assert all(a > b for a, b in zip(squares, squares[1:]))
    assert table.slope < 0


def test_approximation_p_estimate(options):
    table = cmd_estimate(options, 'approximation-p')
    assert [row[0] for row in table.rows] == [1, 2]
    assert all(float(row[1]) > 0 for row in table.rows)


def test_unknown_target(options):
    with pytest.raises(ConfigError):
        cmd_estimate(options, 'stability')


def test_solve_command(options):
    report, text = cmd_solve(options, k=2)
    lines = text.splitlines()
    assert lines[0] == ','.join(SolveReport.ROW_FIELDS)
    assert lines[1].startswith('SIPG,quad,1,2,4,4,assembled,')
    assert report.iterations >= 1


def test_mesh_command(options):
    lines = cmd_mesh(options).splitlines()
    assert len(lines) == 4
    assert lines[1].startswith('1,quad,4,4,8,0.5,')


def test_study_command(options):
    rows, orders, text = cmd_study(options, degrees=[1], n_refinements=1)
    assert len(rows) == 2
    assert set(orders) == {1}
    assert text.splitlines()[-1].startswith('order,1,')


def test_smoothing_threshold(options):
    m = smoothing_threshold(options, 1, m_max=6, k=2)
    assert m is None or 1 <= m <= 6


def test_seed_drives_random_vectors(options):
    first = cmd_estimate(options.set_smoothing(m_values=[1, 2]), 'smoothing-m')
    second = cmd_estimate(options.set_analysis(seed=7), 'smoothing-m')
    assert first.header[-1] == 'sampled'
    assert [row[1] for row in first.rows] == [row[1] for row in second.rows]
    assert [row[3] for row in first.rows] != [row[3] for row in second.rows]
    assert all(float(row[3]) <= float(row[1]) * (1 + 1e-10) for row in first.rows)

    op = build_run(options, 2).operators[-1]
    assert not np.array_equal(cg_load(op, 0), cg_load(op, 7))
    report = run_cg(options, 2)
    assert report.converged and report.iterations > 1


def test_seed_must_be_non_negative(options):
    with pytest.raises(ConfigError):
        options.set_analysis(seed=-1).validate()


def test_multigrid_beats_cg(options):
    table = cmd_bench(options.set_hierarchy(levels=[3]), 'h-vs-p')
    for _, count, _, cg in table.rows:
        assert count != '-' and cg != '-'
        assert count < cg


@pytest.mark.slow
def test_p_multigrid_spot_value():
    options = RunOptions.preset('table4-sipg', read_file=False).validate()
    report = run_cell(options, 2, 10)
    assert report.converged
    assert report.rho == pytest.approx(.82, abs=.1)
    assert report.iterations < run_cg(options, 2).iterations


def test_solve_rows_repeat_except_wall_time(options):
    _, first = cmd_solve(options, k=2)
    _, second = cmd_solve(options, k=2)
    assert first.splitlines()[0].endswith(',wall_time')
    assert first.splitlines()[1].rsplit(',', 1)[0] == second.splitlines()[1].rsplit(',', 1)[0]
