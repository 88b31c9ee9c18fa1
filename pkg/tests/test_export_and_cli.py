import cmath
import json
import math

import numpy as np
import pandas as pd
import pytest

import Config
from conftest import Q0, THETA
from ClosedForm import Family, build_family
from DirectScattering import PotentialSample, sample_contour
from Errors import UsageError
from ExportGrid import (GRID_COLUMNS, field_frame, frame_records, jsonable, sidecar_path,
                        write_frame)
from ModelConfig import EquationKind, EquationSpec
from ScatteringData import from_eigenvalues, save_data
from SpectralPlane import SymmetryCase
import UtilityIst
from UtilityIst import parse_deltas, parse_eigs, run

SMALL = '-1:1:0.5,-1:1:0.5'


# =============================================================================
# EXPORT
# =============================================================================

def test_field_frame_blank_s():
    q = np.array([[1 + 2j, 3 - 1j]])
    frame = field_frame([0.0, 1.0], [0.5], q)
    assert list(frame.columns) == GRID_COLUMNS
    assert frame['abs_q'].tolist() == pytest.approx([math.sqrt(5), math.sqrt(10)])
    assert frame['re_s'].isna().all()


def test_frame_records_fold_pairs():
    frame = field_frame([0.0], [0.0], np.array([[np.nan + 0j]]), np.array([[0.25 - 1j]]))
    rec = frame_records(frame)[0]
    assert rec['q'] is None
    assert rec['s'] == [0.25, -1.0]
    assert rec['x'] == 0.0


def test_frame_records_fold_contour_columns():
    spec = EquationSpec(EquationKind.SINH_GORDON, 1, Q0, 0.0, 0.0, Config.FIGURE_ALPHA)
    frame = sample_contour(PotentialSample.background_only(spec), xi=np.array([3.0, 5.0 + 0j]))
    rec = frame_records(frame)[0]
    for name in ('xi', 'a', 'a_bar', 'b', 'b_bar'):
        assert len(rec[name]) == 2
    assert not any(key.startswith(('re_', 'im_')) for key in rec)
    assert rec['xi'] == [3.0, 0.0]
    assert rec['a'][0] == pytest.approx(1.0, abs=1e-9)


def test_jsonable_types():
    out = jsonable({'z': 1 + 2j, 'n': np.int64(3), 'v': np.array([0.5]), 'c': SymmetryCase.SINH_PI})
    assert out == {'z': [1.0, 2.0], 'n': 3, 'v': [0.5], 'c': 'sinhpi'}


def test_unknown_format(tmp_path):
    frame = field_frame([0.0], [0.0], np.array([[1.0 + 0j]]))
    with pytest.raises(ValueError):
        write_frame(frame, str(tmp_path / 'out.xml'), 'xml')


def test_sidecar_path():
    assert sidecar_path('runs/fig1.csv') == 'runs/fig1.json'


# =============================================================================
# ARGUMENT HELPERS
# =============================================================================

def test_parse_eigs():
    zs = parse_eigs('2@1.0471975512; 4@-1.5707963268')
    assert zs[0] == pytest.approx(2 * cmath.exp(1j * math.pi / 3))
    assert zs[1] == pytest.approx(-4j)


@pytest.mark.parametrize('text', ['', '2', '2@x', ';'])
def test_parse_eigs_rejects(text):
    with pytest.raises(UsageError):
        parse_eigs(text)


def test_parse_deltas():
    assert parse_deltas(None, 2) == [1, 1]
    assert parse_deltas('1,-1', 2) == [1, -1]
    with pytest.raises(UsageError):
        parse_deltas('1', 2)


def test_module_header_dated():
    assert 'Last updated: 2026-10-19' in UtilityIst.__doc__


# =============================================================================
# COMMANDS
# =============================================================================

def test_eval_writes_csv_and_sidecar(tmp_path, capsys):
    out = tmp_path / 'dark.csv'
    assert run(['eval', '--family', 'sinh-dark1', '--grid', SMALL, '--output', str(out)]) == Config.EXIT_OK
    frame = pd.read_csv(out)
    assert list(frame.columns) == GRID_COLUMNS
    assert len(frame) == 25
    meta = json.loads((tmp_path / 'dark.json').read_text())
    assert meta['family'] == 'sinh-dark1'
    assert meta['spec']['q0'] == Config.FIGURE_Q0
    assert '✅' in capsys.readouterr().out


def test_eval_values_match_family(tmp_path):
    out = tmp_path / 'dark.csv'
    run(['eval', '--family', 'sinh-dark1', '--grid', SMALL, '--output', str(out)])
    frame = pd.read_csv(out)
    sol = build_family('sinh-dark1')
    q = sol.q(frame['x'].to_numpy(), frame['t'].to_numpy())
    assert np.allclose(frame['re_q'] + 1j * frame['im_q'], q, atol=1e-14)


def test_eval_is_bit_stable(tmp_path):
    a, b = tmp_path / 'a.csv', tmp_path / 'b.csv'
    for path in (a, b):
        run(['eval', '--family', 'nls-case2-two', '--grid', SMALL, '--output', str(path)])
    assert a.read_bytes() == b.read_bytes()


def test_eval_nls_leaves_s_blank(tmp_path):
    out = tmp_path / 'nls.csv'
    run(['eval', '--family', 'nls-case1-dark', '--grid', SMALL, '--output', str(out)])
    assert pd.read_csv(out)['re_s'].isna().all()


def test_eval_json(tmp_path):
    out = tmp_path / 'dark.json'
    assert run(['eval', '--family', 'sinh-dark1', '--grid', SMALL, '--format', 'json',
                '--output', str(out)]) == Config.EXIT_OK
    doc = json.loads(out.read_text())
    assert len(doc['rows']) == 25
    assert len(doc['rows'][0]['q']) == 2
    assert doc['metadata']['verb'] == 'eval'


def test_trace(capsys):
    code = run(['trace', '--case', 'sinh0', '--eigs', f'{Q0}@{THETA}', '--theta-plus', str(THETA)])
    assert code == Config.EXIT_OK
    out = capsys.readouterr().out
    assert 'a′(z_1)' in out
    assert 'constraint holds' in out


def test_verify_two_soliton(tmp_path):
    report = tmp_path / 'report.json'
    code = run(['verify', '--family', 'nls-case2-two', '--q1', '4', '--d1', '1', '--d2', '-1',
                '--grid', '-6:6:0.1,-4:4:0.25', '--output', str(report)])
    assert code == Config.EXIT_OK
    assert json.loads(report.read_text())['verdict'] == 'pass'


def test_reconstruct_from_data_file(tmp_path):
    data_path = tmp_path / 'dark.data.json'
    save_data(from_eigenvalues(SymmetryCase.SINH_ZERO, Q0, THETA, [Q0 * cmath.exp(1j * THETA)], [1]),
              str(data_path))
    out = tmp_path / 'rec.csv'
    code = run(['reconstruct', '--data', str(data_path), '--kind', 'sinh-gordon',
                '--grid', SMALL, '--output', str(out)])
    assert code == Config.EXIT_OK
    frame = pd.read_csv(out)
    sol = build_family(Family.SINH_DARK1.value)
    q = sol.q(frame['x'].to_numpy(), frame['t'].to_numpy())
    assert np.allclose(frame['re_q'] + 1j * frame['im_q'], q, atol=1e-10)


@pytest.mark.slow
def test_roundtrip_dark(capsys):
    code = run(['roundtrip', '--family', 'sinh-dark1', '--grid', '-3:3:0.5,-1:1:0.5'])
    assert code == Config.EXIT_OK
    assert 'J = 1' in capsys.readouterr().out


@pytest.mark.parametrize('argv', [
    ['explode'],
    ['eval'],
    ['eval', '--family', 'no-such-family'],
    ['eval', '--family', 'sinh-dark1', '--grid', '1:2'],
    ['trace', '--case', 'sinh0', '--eigs', 'abc'],
    ['trace', '--case', 'nowhere', '--eigs', '2@1'],
    ['reconstruct'],
    ['eval', '--family', 'sinh-dark1', '--config', 'does-not-exist.json'],
])
def test_usage_errors(argv, capsys):
    assert run(argv) == Config.EXIT_USAGE
    capsys.readouterr()
