# test_cli.py
import io
import json
import math
import time

import numpy as np
import pandas as pd
import pytest

from model.errors import ConfigError
from cli.config import FIGURES, PRESETS, ScenarioConfig, build_config, parse_config_text
from cli.commands import cmd_figures, cmd_sweep
from cli.export import Dataset, render_csv
from cli.parser import EXIT_CONFIG, EXIT_NUMERICAL, EXIT_OK, build_parser, main


def _read_csv(text):
    metadata = {}
    for line in text.splitlines():
        if line.startswith('# '):
            key, value = line[2:].split(': ', 1)
            metadata[key] = value
    return metadata, pd.read_csv(io.StringIO(text), comment='#')


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_evolve_to_stdout(capsys):
    code, out = _run(capsys, 'evolve', '--preset', 'fig1b', '--samples', '21')
    assert code == EXIT_OK
    metadata, frame = _read_csv(out)
    assert metadata['dataset'] == 'evolve'
    assert metadata['delta_over_gamma'] == '30'
    assert len(metadata['config_sha256']) == 64
    assert list(frame.columns) == ['t_gamma', 'P_e', 'P_e_squared', 'P_ee', 'C',
                                   'pop_ee', 'pop_s', 'pop_a', 'pop_gg']
    assert len(frame) == 21
    assert frame['t_gamma'].iloc[-1] == 10.0


def test_undriven_preset_gives_dark_rows(capsys):
    code, out = _run(capsys, 'evolve', '--preset', 'fig1a', '--omega', '0', '--samples', '11')
    assert code == EXIT_OK
    _, frame = _read_csv(out)
    assert (frame['P_e'] == 0).all()


def test_empty_sample_grid_rejected(capsys):
    code, out = _run(capsys, 'evolve', '--samples', '0')
    assert code == EXIT_CONFIG
    assert out == ''


def test_steady_report_json(capsys):
    code, out = _run(capsys, 'steady', '--preset', 'fig1b')
    assert code == EXIT_OK
    report = json.loads(out)
    assert abs(report['blockade_ratio'] - 0.3325) < 1e-4
    assert report['frobenius_distance'] < 1e-10
    assert report['steady_state_analytic']['labels'] == ['ee', 's', 'a', 'gg']


def test_steady_report_without_shift(capsys):
    code, out = _run(capsys, 'steady', '--omega', '5', '--delta', '0')
    report = json.loads(out)
    assert abs(report['blockade_ratio'] - 1.0) < 1e-14
    assert report['concurrence'] == 0.0


def test_ratio_sweep_families(capsys):
    code, out = _run(capsys, 'sweep', '--preset', 'fig3', '--omega-step', '0.5')
    assert code == EXIT_OK
    metadata, frame = _read_csv(out)
    assert metadata['quantity'] == 'ratio'
    assert np.allclose(frame['ratio_d0'], 1.0, atol=1e-14)
    for lower, higher in zip(range(0, 10), range(1, 11)):
        assert (frame[f'ratio_d{higher}'] < frame[f'ratio_d{lower}'] + 1e-12).all()
    assert not any(column.startswith('C_d') for column in frame.columns)


def test_concurrence_sweep_crosses():
    config = build_config('fig4', flags={'omega_step': 0.05})
    dataset = cmd_sweep(config)
    frame = dataset.frame
    windows = dataset.metadata['omega_max_over_gamma']
    assert abs(windows['10'] - math.sqrt(10 * math.sqrt(104)) / 2) < 1e-12
    for delta in range(1, 11):
        label = str(delta)
        beyond = frame['omega_gamma'] >= windows[label]
        assert (frame.loc[beyond, f'C_d{label}'] == 0).all()
        assert (frame.loc[~beyond, f'C_d{label}'] > 0).all()
        crossing = frame[f'cross_d{label}']
        assert crossing.sum() == 1
        assert frame['omega_gamma'][crossing == 1].iloc[0] == frame.loc[beyond, 'omega_gamma'].iloc[0]


def test_numeric_sweep_matches_analytic():
    flags = {'omega_min': 1.0, 'omega_max': 3.0, 'omega_step': 1.0, 'deltas': '5,30'}
    analytic = cmd_sweep(build_config(flags=flags)).frame
    numeric = cmd_sweep(build_config(flags={**flags, 'source': 'numeric'})).frame
    assert np.allclose(analytic['ratio_d30'], numeric['ratio_d30'], atol=1e-10)
    assert np.allclose(analytic['C_d5'], numeric['C_d5'], atol=1e-8)


def test_g2_dataset(capsys):
    code, out = _run(capsys, 'g2', '--preset', 'fig5b', '--tau-points', '6', '--tau-max', '50')
    assert code == EXIT_OK
    metadata, frame = _read_csv(out)
    assert list(frame.columns) == ['tau_gamma', 'g2']
    assert len(frame) == 6
    assert abs(frame['g2'].iloc[0] - 405216 / 4032064) < 1e-10
    assert abs(float(metadata['g2_zero_analytic']) - 405216 / 4032064) < 1e-12
    assert abs(frame['g2'].iloc[-1] - 1) < 1e-6


def test_monitor_geometry_reproduces_ratio(capsys):
    _, out = _run(capsys, 'g2', '--preset', 'monitor_b', '--tau-points', '2', '--tau-max', '1')
    _, frame = _read_csv(out)
    _, report = _run(capsys, 'steady', '--preset', 'monitor_b')
    assert abs(frame['g2'].iloc[0] - json.loads(report)['blockade_ratio']) < 1e-10


def test_g2_without_drive_is_numerical_failure(capsys):
    code, out = _run(capsys, 'g2', '--omega', '0', '--tau-points', '3')
    assert code == EXIT_NUMERICAL
    assert out == ''


def test_figures_write_one_file_per_panel(tmp_path):
    out = tmp_path / 'figs'
    code = main(['figures', 'fig5', '--out', str(out), '--tau-points', '3', '--tau-max', '1'])
    assert code == EXIT_OK
    assert sorted(p.name for p in out.iterdir()) == ['fig5a.csv', 'fig5b.csv', 'fig5c.csv']
    metadata, _ = _read_csv((out / 'fig5c.csv').read_text())
    assert metadata['dataset'] == 'fig5c'
    assert metadata['omega_over_gamma'] == '15'


def test_figures_respect_config_file(tmp_path):
    config_file = tmp_path / 'scenario.cfg'
    config_file.write_text('samples = 5\nt_end = 2\n')
    datasets = cmd_figures('fig1', str(config_file))
    assert [d.name for d in datasets] == ['fig1a', 'fig1b', 'fig1c']
    assert all(len(d.frame) == 5 for d in datasets)
    assert datasets[2].metadata['omega_over_gamma'] == 15.0


def test_json_output_file(tmp_path):
    path = tmp_path / 'nested' / 'evolve.json'
    code = main(['evolve', '--samples', '3', '--format', 'json', '--out', str(path)])
    assert code == EXIT_OK
    payload = json.loads(path.read_text())
    assert payload['dataset'] == 'evolve'
    assert len(payload['columns']['P_e']) == 3


def test_config_precedence(tmp_path):
    config_file = tmp_path / 'scenario.cfg'
    config_file.write_text('# case c with a custom grid\nomega = 15\nsamples = 11\n\ndelta=12\n')
    config = build_config('fig1b', str(config_file), {'delta': 7.0, 'omega': None})
    assert config.omega == 15.0
    assert config.samples == 11
    assert config.delta == 7.0
    assert config.t_end == PRESETS['fig1b']['t_end']


def test_config_file_errors(tmp_path):
    with pytest.raises(ConfigError):
        parse_config_text('omega 5')
    with pytest.raises(ConfigError):
        parse_config_text('colour = blue')
    with pytest.raises(ConfigError):
        parse_config_text('samples = many')
    with pytest.raises(ConfigError):
        build_config(config_path=str(tmp_path / 'missing.cfg'))
    with pytest.raises(ConfigError):
        build_config(flags={'gamma_s_frac': 2.0})


def test_bad_config_file_exit_code(tmp_path, capsys):
    config_file = tmp_path / 'bad.cfg'
    config_file.write_text('unknown_key = 1\n')
    code, _ = _run(capsys, 'evolve', '--config', str(config_file))
    assert code == EXIT_CONFIG


def test_digest_ignores_output_settings():
    base = ScenarioConfig()
    assert base.digest() == base.merged({'out': 'x.csv', 'format': 'json', 'jobs': 4}).digest()
    assert base.digest() != base.merged({'omega': 6}).digest()


def test_omega_grid():
    grid = ScenarioConfig(omega_min=0.1, omega_max=15.0, omega_step=0.1).omega_grid()
    assert len(grid) == 150
    assert grid[0] == 0.1 and grid[-1] == 15.0


def test_csv_renders_full_precision():
    dataset = Dataset('demo', pd.DataFrame({'x': [1 / 3]}), {'note': 'kept', 'value': 0.1})
    text = render_csv(dataset)
    assert text.splitlines() == ['# dataset: demo', '# note: kept',
                                 '# value: 0.10000000000000001', 'x', '0.33333333333333331']


def test_identical_config_gives_identical_bytes(tmp_path):
    paths = [tmp_path / 'first.csv', tmp_path / 'second.csv']
    for path in paths:
        code = main(['evolve', '--preset', 'fig1b', '--samples', '51', '--out', str(path)])
        assert code == EXIT_OK
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_sweep_output_independent_of_jobs():
    flags = {'omega_min': 0.5, 'omega_max': 6.0, 'omega_step': 0.5, 'deltas': '30,1,10', 'quantity': 'both'}
    serial = render_csv(cmd_sweep(build_config(flags={**flags, 'jobs': 1})))
    parallel = render_csv(cmd_sweep(build_config(flags={**flags, 'jobs': 2})))
    assert serial == parallel
    _, frame = _read_csv(serial)
    assert list(frame.columns[1:4]) == ['ratio_d1', 'C_d1', 'cross_d1']


@pytest.mark.parametrize('figure', sorted(FIGURES))
def test_figure_presets_run_quickly(figure):
    start = time.perf_counter()
    datasets = cmd_figures(figure)
    elapsed = time.perf_counter() - start
    assert datasets and all(len(d.frame) > 0 for d in datasets)
    assert elapsed < 10.0


def test_verbose_accepted_before_or_after_command(capsys):
    parser = build_parser()
    assert parser.parse_args(['--verbose', 'evolve']).verbose
    assert parser.parse_args(['evolve', '--samples', '3', '--verbose']).verbose
    assert parser.parse_args(['serve', '--verbose']).verbose
    assert not getattr(parser.parse_args(['steady']), 'verbose', False)
    code, out = _run(capsys, 'evolve', '--samples', '3', '--verbose')
    assert code == EXIT_OK
    assert len(_read_csv(out)[1]) == 3


def test_figures_reject_preset(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(['figures', 'fig1', '--preset', 'fig5b'])
    assert excinfo.value.code == 2
    assert 'unrecognized arguments' in capsys.readouterr().err
