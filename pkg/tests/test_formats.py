import json

import pytest

from valuesets.formats import (
    InputFormatError,
    load_cayley_csv,
    load_code_assignment,
    load_function_table,
    load_poly,
    load_subset,
    save_function_table,
)
from valuesets.functable import FunctionTable


def test_json_round_trip(tmp_path):
    f = FunctionTable.from_values([0, 0, 1, 1, 2])
    path = tmp_path / "table.json"
    save_function_table(f, path)
    assert load_function_table(path) == f


def test_json_requires_keys(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"values": [1, 2]}')
    with pytest.raises(InputFormatError):
        load_function_table(path)


def test_json_length_mismatch(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"domain_size": 3, "values": [1, 2]}')
    with pytest.raises(InputFormatError):
        load_function_table(path)


def test_csv_table(tmp_path):
    path = tmp_path / "table.csv"
    path.write_text("x,fx\n0,5\n2,5\n1,9\n")
    f = load_function_table(path)
    assert f.values == (5, 9, 5)


def test_csv_duplicate_point(tmp_path):
    path = tmp_path / "dup.csv"
    path.write_text("0,5\n0,6\n1,2\n")
    with pytest.raises(InputFormatError):
        load_function_table(path)


def test_csv_gap_in_domain(tmp_path):
    path = tmp_path / "gap.csv"
    path.write_text("0,5\n2,6\n")
    with pytest.raises(InputFormatError):
        load_function_table(path)


def test_poly_inline_and_file(tmp_path):
    inline = '{"p": 7, "coeffs": [0, 0, 1]}'
    f = load_poly(inline)
    assert f.spec.q == 7 and f.coeffs == (0, 0, 1)
    path = tmp_path / "poly.json"
    path.write_text('{"p": 3, "k": 2, "modulus": [1, 0, 1], "coeffs": [0, 0, 3]}')
    g = load_poly(str(path))
    assert g.spec.q == 9 and g.spec.modulus == (1, 0, 1)


def test_poly_canonical_modulus_when_absent():
    f = load_poly('{"p": 3, "k": 2, "coeffs": [0, 1]}')
    assert f.spec.modulus == (1, 0, 1)


def test_poly_rejects_bad_specs():
    with pytest.raises(InputFormatError):
        load_poly('{"coeffs": [1]}')
    with pytest.raises(InputFormatError):
        load_poly('{"p": 3, "k": 2, "modulus": [0, 1, 1], "coeffs": [1]}')
    with pytest.raises(InputFormatError):
        load_poly('{"p": 4, "coeffs": [1]}')


def test_subset_inline_and_file(tmp_path):
    assert load_subset("[3, 1, 2]") == [3, 1, 2]
    path = tmp_path / "subset.json"
    path.write_text("[0, 4]")
    assert load_subset(str(path)) == [0, 4]
    with pytest.raises(InputFormatError):
        load_subset('["a"]')


def test_cayley_csv(tmp_path):
    path = tmp_path / "z3.csv"
    path.write_text("0,1,2\n1,2,0\n2,0,1\n")
    g = load_cayley_csv(path)
    assert g.order == 3 and g.op(1, 2) == 0


def test_code_assignment(tmp_path):
    path = tmp_path / "code.csv"
    path.write_text("c0,alert\nc1,alert\nc2,ok\nc3,ok\nc4,wind\nc5,rain\n")
    table, codewords, messages = load_code_assignment(path)
    assert table.domain_size == 6
    assert len(messages) == 4
    assert table.values == (0, 0, 1, 1, 2, 3)


def test_code_assignment_duplicate_codeword(tmp_path):
    path = tmp_path / "dup.csv"
    path.write_text("c0,alert\nc0,ok\n")
    with pytest.raises(InputFormatError):
        load_code_assignment(path)


def test_function_table_format_sniffing(tmp_path):
    jpath = tmp_path / "noext"
    jpath.write_text(json.dumps({"domain_size": 2, "values": [1, 1]}))
    assert load_function_table(jpath).values == (1, 1)
