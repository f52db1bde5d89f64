import json

import pytest

import config
from main import EXIT_FAILED, EXIT_INPUT, EXIT_OK, main
from src.cli import verify
from src.cli.commands import as_table, cmd_classify, cmd_dim, cmd_lct, cmd_toric, read_family
from src.cli.verify import Check, cmd_verify
from src.errors import InputError
from src.storage.data_storage import CSVStorage


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_dim_json(capsys):
    code, out = run(capsys, 'dim', '--n', '2')
    assert code == EXIT_OK
    data = json.loads(out)
    assert data['dim'] == 10
    assert data['N'] == 11
    assert data['weights'] == [4, 10, 12, 16, 18, 22, 24, 28, 30, 36, 42]


def test_dim_over_cap_reports_count_only():
    result = cmd_dim(3, cap=100)
    assert result['dim'] == 251
    assert result['weights'] is None
    assert 'cap = 100' in result['note']


def test_dim_table_format(capsys):
    code, out = run(capsys, 'dim', '--n', '1', '--format', 'table')
    assert code == EXIT_OK
    assert 'M_1' in out


def test_dim_csv_out(capsys, tmp_path):
    target = tmp_path / 'pesos.csv'
    code, _ = run(capsys, 'dim', '--n', '1', '--out', str(target))
    assert code == EXIT_OK
    rows = CSVStorage(tmp_path).load('pesos.csv')
    assert rows == [{'tuple': '0,0', 'weight': '6'}, {'tuple': '0,1', 'weight': '4'}]


def test_dim_requires_n(capsys):
    assert run(capsys, 'dim')[0] == EXIT_INPUT
    assert run(capsys, 'dim', '--n', '-1')[0] == EXIT_INPUT


def test_embed_from_file(capsys, tmp_path):
    source = tmp_path / 'ponto.json'
    source.write_text(json.dumps({'n': 0, 'coords': {'0': '1'}}), encoding='utf-8')
    target = tmp_path / 'imagem.json'
    code, out = run(capsys, 'embed', '--in', str(source), '--out', str(target))
    assert code == EXIT_OK
    expected = {'n': 1, 'coords': {'0,0': '2/27', '0,1': '-1/3'}}
    assert json.loads(out) == expected
    assert json.loads(target.read_text(encoding='utf-8')) == expected


def test_embed_tabular_out_is_rejected(capsys, tmp_path):
    source = tmp_path / 'ponto.json'
    source.write_text(json.dumps({'n': 0, 'coords': {'0': '1'}}), encoding='utf-8')
    code, _ = run(capsys, 'embed', '--in', str(source), '--out', str(tmp_path / 'x.csv'))
    assert code == EXIT_INPUT


def test_bad_inputs_exit_2(capsys, tmp_path):
    broken = tmp_path / 'quebrado.json'
    broken.write_text('{"n": 1, ', encoding='utf-8')
    assert run(capsys, 'embed', '--in', str(broken))[0] == EXIT_INPUT
    assert run(capsys, 'embed')[0] == EXIT_INPUT
    origin = tmp_path / 'origem.json'
    origin.write_text(json.dumps({'n': 1, 'coords': {'0,0': 0}}), encoding='utf-8')
    assert run(capsys, 'embed', '--in', str(origin))[0] == EXIT_INPUT


def test_lct_command(capsys, tmp_path):
    source = tmp_path / 'cuspide.txt'
    source.write_text("1/1 : 2 0\n1/1 : 0 3\n", encoding='utf-8')
    code, out = run(capsys, 'lct', '--in', str(source))
    assert code == EXIT_OK
    data = json.loads(out)
    assert data['lct'] == '5/6'
    assert data['c'] == '6/5'
    assert data['certificate']['omega'] == [3, 2]
    assert data['classification']['label'] == 'above-1'


def test_lct_at_base_point():
    result = cmd_lct("1 : 2\n-2 : 1\n1 : 0", base_point=['1'])
    assert result['lct'] == '1/2'
    assert result['base_point'] == ['1/1']


def test_classify_family_and_point():
    result = cmd_classify({'n': 2, 'coeffs': {'0,1': ['0', '1'], '0,0': ['1']}})
    assert len(result['places']) == 1
    assert result['places'][0]['disc_val'] == 1
    assert 'boundary_preimage' not in result

    point = cmd_classify({'n': 1, 'coords': {'0,1': '-1/3', '0,0': '2/27'}})
    assert point['boundary_preimage'] == {'n': 0, 'coords': {'0': '1/1'}}
    assert point['level'] == 1


def test_read_family_requires_known_shape():
    with pytest.raises(InputError):
        read_family({'n': 2})
    with pytest.raises(InputError):
        read_family([1, 2])


def test_toric_command(capsys):
    code, out = run(capsys, 'toric', '--n', '1')
    assert code == EXIT_OK
    data = json.loads(out)
    assert data['weights'] == [3, 2, 1]
    assert data['crepant_ray'] == [-1, 0]
    assert data['witness']['determinant'] in (1, -1)


def test_toric_without_witness():
    result = cmd_toric(2, max_witness_dim=1)
    assert result['witness'] is None
    assert 'witness_note' in result
    title, headers, rows = as_table('toric', result)
    assert headers == ["Campo", "Valor"]
    assert rows[-1][0] == "autodualidade"


def test_hodge_command(capsys):
    code, out = run(capsys, 'hodge', '--n', '3')
    assert code == EXIT_OK
    data = json.loads(out)
    assert data['h11'] == 251
    assert data['method'] == 'fast'
    assert 'elapsed_ms' in data


def test_config_empty_and_unknown(capsys, tmp_path):
    empty = tmp_path / 'vazio.json'
    empty.write_text('', encoding='utf-8')
    assert run(capsys, 'dim', '--n', '1', '--config', str(empty))[0] == EXIT_OK
    unknown = tmp_path / 'desconhecido.json'
    unknown.write_text('{"nada": {}}', encoding='utf-8')
    assert run(capsys, 'dim', '--n', '1', '--config', str(unknown))[0] == EXIT_INPUT


def test_verify_subset_passes(capsys, monkeypatch):
    monkeypatch.setitem(config.VERIFY_CONFIG, 'quick', ['sylvester', 'weights'])
    code, out = run(capsys, 'verify', 'quick')
    assert code == EXIT_OK
    data = json.loads(out)
    assert data['overall'] == 'pass'
    assert {c['status'] for c in data['checks']} == {'pass'}


def test_verify_failure_exit_1(capsys, monkeypatch):
    monkeypatch.setitem(verify.GROUPS, 'broken',
                        lambda settings: [Check('broken.one', 1, 'sempre falha', lambda: 2)])
    monkeypatch.setitem(config.VERIFY_CONFIG, 'quick', ['broken'])
    code, out = run(capsys, 'verify')
    assert code == EXIT_FAILED
    data = json.loads(out)
    assert data['overall'] == 'fail'
    assert data['checks'][0]['computed'] == 2


def test_verify_unknown_group():
    settings = dict(config.VERIFY_CONFIG, quick=['inexistente'])
    with pytest.raises(InputError):
        cmd_verify('quick', settings, quiet=True)
    with pytest.raises(InputError):
        cmd_verify('medium', settings, quiet=True)


def test_verify_rows_are_flat():
    settings = dict(config.VERIFY_CONFIG, quick=['weights'])
    report = cmd_verify('quick', settings, quiet=True)
    rows = report.rows()
    assert rows[0]['name'] == 'weights.M0'
    assert all(isinstance(v, str) for row in rows for v in row.values())


@pytest.mark.slow
def test_verify_quick_suite(capsys, monkeypatch):
    monkeypatch.setitem(config.VERIFY_CONFIG, 'samples', 5)
    code, out = run(capsys, 'verify', 'quick')
    assert code == EXIT_OK
    assert json.loads(out)['overall'] == 'pass'


def test_dim_zero():
    result = cmd_dim(0, cap=10)
    assert (result['dim'], result['N'], result['weights']) == (0, 1, [2])


def test_verify_value_error_is_a_failed_row(capsys, monkeypatch):
    def explode():
        raise ValueError("coeficiente recusado")

    monkeypatch.setitem(verify.GROUPS, 'broken',
                        lambda settings: [Check('broken.value', 1, 'levanta ValueError', explode),
                                          Check('broken.ok', 1, 'passa', lambda: 1)])
    monkeypatch.setitem(config.VERIFY_CONFIG, 'quick', ['broken'])
    code, out = run(capsys, 'verify')
    assert code == EXIT_FAILED
    data = json.loads(out)
    assert [c['status'] for c in data['checks']] == ['fail', 'pass']
    assert data['checks'][0]['computed'].startswith('ValueError')


def test_verify_lemma_dimension_limit():
    settings = dict(config.VERIFY_CONFIG, quick=['newton'], max_lemma_dim=1)
    names = [c['name'] for c in cmd_verify('quick', settings, quiet=True).checks]
    assert 'newton.lemma.n1' in names
    assert 'newton.lemma.n2' not in names
