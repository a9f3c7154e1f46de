import pytest

from k3python.yaml_utils import YamlError, load_settings, load_with_config


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_defaults():
    settings = load_settings()
    assert settings['level'] == 'fast'
    assert settings['precision'] == 60
    assert list(settings['normalization']) == ['I2', 'I4', 'I6', 'I10']
    assert 'kummer' not in settings


def test_levels():
    assert load_settings('full')['samples'] == 100
    kummer = load_settings('kummer')['kummer']
    assert kummer['digits'] == 80 and kummer['coordinate_height'] == 20


def test_case_statements(tmp_path):
    f = write(tmp_path, 'a.yaml',
              'samples: 10\n'
              'nested: {a: 1, b: 2}\n'
              'case_level:\n'
              '    fu.*:\n'
              '        samples: 100\n'
              '        nested: {b: 3}\n')
    assert load_with_config(f, {'level': 'full'})['samples'] == 100
    settings = load_with_config(f, {'level': 'fast'})
    assert settings['samples'] == 10
    assert load_with_config(f, {'level': 'full'})['nested'] == {'a': 1,
                                                               'b': 3}


def test_user_file_overrides(tmp_path):
    f = write(tmp_path, 'user.yaml', 'precision: 90\n')
    assert load_settings('fast', [f])['precision'] == 90


def test_errors(tmp_path):
    with pytest.raises(YamlError):
        load_with_config(str(tmp_path / 'missing.yaml'), {})
    with pytest.raises(YamlError):
        load_with_config(write(tmp_path, 'dup.yaml', 'a: 1\na: 2\n'), {})
    with pytest.raises(YamlError):
        load_with_config(write(tmp_path, 'case.yaml',
                               'case_unknown: {x: {a: 1}}\n'), {})
    with pytest.raises(YamlError):
        load_with_config(write(tmp_path, 'list.yaml', '- 1\n- 2\n'), {})
