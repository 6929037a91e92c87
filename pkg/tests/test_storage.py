import json
import os

import numpy as np
import pytest

from two_photon_qhe import __version__
from two_photon_qhe.data.storage import LocalResource, SchemaField, resource_class_factory
from two_photon_qhe.data.storage.file import CsvFile, JsonFile, file_class_factory
from two_photon_qhe.data.storage.file.json import to_builtin
from two_photon_qhe.data.storage.manifest import MANIFEST_NAME, build_manifest, config_hash, write_manifest
from two_photon_qhe.physics.params import PumpKind

SCHEMA = [SchemaField(name='tau', field_type=float), SchemaField(name='kind', field_type=str)]
ROWS = [{'kind': 'classical', 'tau': 0.1}, {'kind': 'entangled', 'tau': 1.0 / 3.0}]


def read_bytes(path: str) -> bytes:
    with open(path, 'rb') as f:
        return f.read()


class TestCsvFile:
    def test_schema_order_and_precision(self, tmp_path):
        csv = CsvFile(str(tmp_path), 'table', schema=SCHEMA)
        csv.write(ROWS)
        lines = read_bytes(csv.full_path).decode().splitlines()
        assert lines[0] == 'tau,kind'
        assert lines[1] == '0.10000000000000001,classical'
        assert list(csv.read())[1]['tau'] == pytest.approx(1.0 / 3.0, rel=1e-15)

    def test_identical_bytes(self, tmp_path):
        first, second = CsvFile(str(tmp_path / 'a'), 'table', SCHEMA), CsvFile(str(tmp_path / 'b'), 'table', SCHEMA)
        first.write(ROWS)
        second.write([{'tau': row['tau'], 'kind': row['kind']} for row in ROWS])
        assert read_bytes(first.full_path) == read_bytes(second.full_path)

    def test_append_keeps_one_header(self, tmp_path):
        csv = CsvFile(str(tmp_path), 'table', schema=SCHEMA)
        csv.write(ROWS[:1])
        csv.write(ROWS[1:], append=True)
        assert read_bytes(csv.full_path).decode().count('tau,kind') == 1
        assert [row['kind'] for row in csv.read()] == ['classical', 'entangled']

    def test_overwrite(self, tmp_path):
        csv = CsvFile(str(tmp_path), 'table', schema=SCHEMA)
        csv.write(ROWS)
        csv.write(ROWS[:1])
        assert len(list(csv.read())) == 1


class TestJsonFile:
    def test_sorted_keys_and_numpy_values(self, tmp_path):
        jsonl = JsonFile(str(tmp_path), 'table')
        jsonl.write([{'tau': np.float64(0.5), 'kind': PumpKind.ENTANGLED, 'count': np.int64(3)}])
        assert read_bytes(jsonl.full_path) == b'{"count": 3, "kind": "entangled", "tau": 0.5}\n'
        assert jsonl.full_path.endswith('table.jsonl')

    def test_append(self, tmp_path):
        jsonl = JsonFile(str(tmp_path), 'table')
        jsonl.write(ROWS[:1])
        jsonl.write(ROWS[1:], append=True)
        assert list(jsonl.read()) == ROWS

    def test_unknown_object(self):
        with pytest.raises(TypeError):
            to_builtin(object())


class TestResource:
    def test_dotted_path(self, tmp_path):
        resource = LocalResource('engine.sweep', schema=SCHEMA, base_dir=str(tmp_path), file_format='csv')
        assert resource.columns == ['tau', 'kind']
        assert resource.write(ROWS) == 'engine/sweep.csv'
        assert os.path.isfile(tmp_path / 'engine' / 'sweep.csv')
        assert [row['kind'] for row in resource.read()] == ['classical', 'entangled']

    def test_tuple_path_and_json(self, tmp_path):
        resource = LocalResource(('bath_fit', 'summary'), base_dir=str(tmp_path), file_format='json')
        assert resource.write(ROWS) == 'bath_fit/summary.jsonl'

    def test_factories(self):
        assert resource_class_factory() is LocalResource
        assert file_class_factory('json') is JsonFile
        assert file_class_factory('csv') is CsvFile
        with pytest.raises(NotImplementedError):
            file_class_factory('avro')


class TestManifest:
    def test_hash_ignores_key_order(self):
        assert config_hash({'a': 1, 'b': [0.1, 'x']}) == config_hash({'b': [0.1, 'x'], 'a': 1})
        assert config_hash({'a': 1}) != config_hash({'a': 2})

    def test_build(self):
        manifest = build_manifest('bounds', {'jobs': 2}, ['b.csv', 'a.csv'], ['table2', 'table1', 'table2'],
                                  summary={'rows': 10})
        assert manifest['artifacts'] == ['a.csv', 'b.csv']
        assert manifest['provenance'] == ['table1', 'table2']
        assert manifest['tool_version'] == __version__
        assert manifest['config_hash'] == config_hash({'jobs': 2})
        assert manifest['summary'] == {'rows': 10}
        assert 'timestamp' not in json.dumps(manifest)

    def test_write(self, tmp_path):
        manifest = build_manifest('spdc', {'grid': 4}, ['spdc/jsi.csv'], ['fig1'])
        path = write_manifest(str(tmp_path / 'out'), manifest)
        assert path.endswith(MANIFEST_NAME)
        with open(path) as f:
            assert json.load(f) == manifest
        assert read_bytes(path).endswith(b'}\n')
