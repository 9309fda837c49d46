import hashlib

import pytest

from gf2inv.fixtures import (
    REQUIRED_NAMES,
    FixtureError,
    default_fixture_path,
    format_fixture,
    load_fixture,
    parse_fixture,
)


def test_packaged_fixture_loads():
    mats, sha = load_fixture()
    assert set(REQUIRED_NAMES) <= set(mats)
    assert sha == hashlib.sha256(default_fixture_path().read_bytes()).hexdigest()


def test_format_parse_roundtrip(mats):
    assert parse_fixture(format_fixture(mats)) == mats


def test_comments_and_blank_lines():
    text = "# header\n\nMATRIX X 2x2\n1 0\n# inside\n0 1\n"
    assert parse_fixture(text)["X"].to_rows() == [[1, 0], [0, 1]]


@pytest.mark.parametrize(
    "text, message",
    [
        ("MATRIX X 2x2\n1 0\n", "file ended"),
        ("MATRIX X 2x2\n1 0\n0 2\n", "entries 0/1"),
        ("MATRIX X 2by2\n1 0\n0 1\n", "bad shape"),
        ("MATRX X 2x2\n", "expected 'MATRIX"),
        ("MATRIX X 1x1\n1\nMATRIX X 1x1\n0\n", "duplicate"),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(FixtureError, match=message):
        parse_fixture(text)


def test_missing_file(tmp_path):
    with pytest.raises(FixtureError, match="cannot read"):
        load_fixture(tmp_path / "nope.txt")


def test_missing_matrix(tmp_path, mats):
    partial = {k: v for k, v in mats.items() if k != "OMEGA"}
    path = tmp_path / "partial.txt"
    path.write_text(format_fixture(partial))
    with pytest.raises(FixtureError, match="lacks matrices: OMEGA"):
        load_fixture(path)


def test_wrong_shape(tmp_path, mats):
    bad = dict(mats)
    bad["DWd_A"] = mats["DW_A"]
    path = tmp_path / "shape.txt"
    path.write_text(format_fixture(bad))
    with pytest.raises(FixtureError, match="DWd_A must be 6x6"):
        load_fixture(path)


def test_binary_garbage(tmp_path):
    path = tmp_path / "garbage.txt"
    path.write_bytes(b"\xff\xfe\x00MATRIX")
    with pytest.raises(FixtureError):
        load_fixture(path)
