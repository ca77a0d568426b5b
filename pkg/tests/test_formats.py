import csv
import json

import numpy as np
import pytest

from cr_errors import FormatError, JacobiViolation, NotRegular, build_error_payload, error_payload_for
from cr_formats import (
    decode_complex,
    dump_report,
    encode_array,
    encode_complex,
    line_literal,
    load_algebra_file,
    parse_line_literal,
    write_points_csv,
)


def test_complex_values_are_re_im_pairs():
    assert encode_complex(1 - 2j) == [1.0, -2.0]
    assert json.dumps(encode_complex(complex(-0.0, -0.0))) == "[0.0, 0.0]"
    assert decode_complex([0.5, 3]) == 0.5 + 3j
    assert decode_complex(2) == 2 + 0j
    assert encode_array([[1j, 2]]) == [[[0.0, 1.0], [2.0, 0.0]]]
    with pytest.raises(FormatError):
        decode_complex("abc")


def test_line_literals():
    assert np.allclose(parse_line_literal(["1", "0", "0", "1", "0", "0"]), [1, 1j, 0])
    assert line_literal([1, 1j, 0]) == [1.0, 0.0, 0.0, 1.0, 0.0, 0.0]
    with pytest.raises(FormatError):
        parse_line_literal([1, 2, 3, 4, 5])
    with pytest.raises(FormatError):
        parse_line_literal(["a"] * 6)


def test_algebra_file_loads_builtin_payload(algebra_file, su2):
    loaded = load_algebra_file(algebra_file(su2, "su2.json"))
    assert loaded.name == "su2"
    assert np.array_equal(loaded.structure, su2.structure)
    assert loaded.rep_size == 2


def test_algebra_file_errors(tmp_path):
    with pytest.raises(FormatError):
        load_algebra_file(tmp_path / "missing.json")
    with pytest.raises(FormatError):
        load_algebra_file(tmp_path)
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(FormatError):
        load_algebra_file(broken)
    no_brackets = tmp_path / "empty.json"
    no_brackets.write_text(json.dumps({"basis": ["A", "B", "C"]}), encoding="utf-8")
    with pytest.raises(FormatError):
        load_algebra_file(no_brackets)
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"brackets": [[0, 1, 2, 1.0], [1, 2, 1, 1.0]]}), encoding="utf-8")
    with pytest.raises(JacobiViolation):
        load_algebra_file(bad)


def test_points_csv(tmp_path):
    path = tmp_path / "out" / "points.csv"
    rows = write_points_csv(path, [[1, 1j, 0], [0.5, 0, -2j]])
    assert rows == 2
    with path.open(encoding="utf-8") as handle:
        table = list(csv.reader(handle))
    assert table[0] == ["index", "re_a", "im_a", "re_b", "im_b", "re_c", "im_c"]
    assert table[2][0] == "1"
    assert float(table[2][6]) == -2.0


def test_points_csv_reports_unwritable_paths(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("", encoding="utf-8")
    with pytest.raises(FormatError) as exc_info:
        write_points_csv(blocker / "points.csv", [[1, 1j, 0]])
    assert exc_info.value.exit_code == 2
    assert isinstance(exc_info.value.__cause__, OSError)


def test_error_payload_keeps_legacy_alias():
    payload = build_error_payload(code="not_regular", message="Line is Real.")
    assert payload == {"code": "not_regular", "message": "Line is Real.", "details": {}, "error": "Line is Real."}
    from_exc = error_payload_for(NotRegular("Line is Degenerate.", details={"verdict": "Degenerate"}))
    assert from_exc["code"] == "not_regular"
    assert from_exc["details"] == {"verdict": "Degenerate"}
    assert error_payload_for(ValueError("boom"))["code"] == "internal_error"


def test_reports_are_sorted_json():
    text = dump_report({"b": 1, "a": [1, 2]})
    assert text.index('"a"') < text.index('"b"')
    assert json.loads(text) == {"a": [1, 2], "b": 1}
