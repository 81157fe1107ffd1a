import json
import pytest
import sys
import os

# Add the project root directory to Python path
sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from src.double_algebra.models import InstanceFormatError
from src.double_algebra.exact_linalg import Field
from src.double_algebra.instance_file import (
    InstanceFile, dumps, from_double, from_tables, load, load_json, loads, parse_matrix, parse_vector, save,
)
from src.double_algebra.examples import matrix_algebra, matrix_double

CORPUS = ['matrix2.json', 'trivial1.json', 'broken_a1.json']


def read_text(name):
    with open(f'tests/test_data/{name}', 'r', encoding='utf-8') as f:
        return f.read()


class TestCanonicalForm:
    @pytest.mark.parametrize("name", CORPUS)
    def test_save_reproduces_file(self, name):
        """Loading a canonical file and dumping it again gives the same bytes"""
        text = read_text(name)
        assert dumps(loads(text)) == text

    def test_constructed_instance_is_stable(self):
        """An instance written from M_2 reads back to the same tables"""
        D = matrix_double(2, Field(0))
        text = dumps(from_double(D))
        again = loads(text)
        assert dumps(again) == text
        rebuilt = again.double()
        assert rebuilt.vertical == D.vertical
        assert rebuilt.horizontal == D.horizontal
        assert rebuilt.basis_labels == D.basis_labels

    def test_stored_file_matches_family(self):
        """The stored M_2 file holds the same tables as the family constructor"""
        stored = load('tests/test_data/matrix2.json')
        fresh = from_double(matrix_double(2, Field(0)))
        assert stored.vertical == fresh.vertical
        assert stored.horizontal == fresh.horizontal
        assert stored.expected['family'] == "matrix"

    def test_save_and_load(self, tmp_path):
        """save writes the canonical text to disk"""
        instance = load('tests/test_data/trivial1.json')
        path = tmp_path / "copy.json"
        save(instance, path)
        assert path.read_text(encoding='utf-8') == read_text('trivial1.json')
        assert load(path) == instance

    def test_unchecked_tables(self):
        """from_tables stores a pair that fails the axioms"""
        q = Field(0)
        m2 = matrix_algebra(2, q)
        instance = from_tables(m2, m2, label="M_2 twice")
        assert instance.dimension == 4
        assert instance.e == instance.i == ["1", "0", "0", "1"]
        assert instance.basis == []


class TestFormatErrors:
    @pytest.fixture
    def data(self):
        with open('tests/test_data/trivial1.json', 'r') as f:
            return json.load(f)

    def test_invalid_json(self):
        """Unparseable text is a format error"""
        with pytest.raises(InstanceFormatError):
            loads("{not json")

    def test_not_an_object(self):
        """The top level must be an object"""
        with pytest.raises(InstanceFormatError):
            loads("[1, 2, 3]")

    def test_missing_keys(self, data):
        """Required keys are listed in the error"""
        del data['vertical']
        del data['i']
        with pytest.raises(InstanceFormatError) as info:
            InstanceFile.from_dict(data)
        assert "vertical" in str(info.value)
        assert "i" in str(info.value)

    def test_wrong_table_length(self, data):
        """A table of dimension n needs n³ constants"""
        data['vertical'] = ["1", "0"]
        with pytest.raises(InstanceFormatError):
            InstanceFile.from_dict(data)

    def test_unknown_field(self, data):
        """Field descriptors are Q or Fp:<prime>"""
        data['field'] = "R"
        with pytest.raises(InstanceFormatError):
            InstanceFile.from_dict(data)
        data['field'] = "Fp:4"
        with pytest.raises(InstanceFormatError):
            InstanceFile.from_dict(data)

    def test_numbers_must_be_strings(self, data):
        """Scalars are stored as strings"""
        data['e'] = [1]
        with pytest.raises(InstanceFormatError):
            InstanceFile.from_dict(data)

    def test_bad_scalar(self, data):
        """A string that is not a rational is rejected"""
        data['i'] = ["one"]
        with pytest.raises(InstanceFormatError):
            InstanceFile.from_dict(data)

    def test_wrong_version(self, data):
        """Only the current layout version loads"""
        data['version'] = 2
        with pytest.raises(InstanceFormatError):
            InstanceFile.from_dict(data)

    def test_basis_length(self, data):
        """Basis labels must match the dimension"""
        data['basis'] = ["a", "b"]
        with pytest.raises(InstanceFormatError):
            InstanceFile.from_dict(data)

    def test_bad_dimension(self, data):
        """The dimension is a positive integer"""
        data['dimension'] = 0
        with pytest.raises(InstanceFormatError):
            InstanceFile.from_dict(data)

    def test_missing_file(self, tmp_path):
        """Unreadable paths are format errors"""
        with pytest.raises(InstanceFormatError):
            load(tmp_path / "absent.json")
        with pytest.raises(InstanceFormatError):
            load_json(tmp_path / "absent.json")


class TestFieldOverride:
    def test_tables_over_f2(self):
        """The stored M_2 constants can be read in characteristic 2"""
        instance = load('tests/test_data/matrix2.json')
        vertical, horizontal = instance.tables(Field(2))
        assert vertical.field == Field(2)
        assert instance.double(Field(2)).field.descriptor == "Fp:2"

    def test_parse_helpers(self):
        """Matrices are read by columns and vectors entrywise"""
        q = Field(0)
        matrix = parse_matrix(q, [["1", "0"], ["1/2", "1"]], 2)
        assert matrix.columns[1] == (q.fraction(1, 2), q(1))
        assert parse_vector(q, ["3", "-1"]) == (q(3), q(-1))
        with pytest.raises(InstanceFormatError):
            parse_matrix(q, [["1"]], 2)
        with pytest.raises(InstanceFormatError):
            parse_vector(q, ["x"])
