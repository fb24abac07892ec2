from __future__ import annotations

import pytest

from vcx.constructions import paper_family
from vcx.formats import (
    FamilyFormatError,
    dump_fam,
    from_json_obj,
    loads,
    parse_fam,
    read_family,
    to_json_obj,
    write_family,
)


def test_fam_roundtrip():
    fam = paper_family("f7_16")
    assert parse_fam(dump_fam(fam, comment="x")) == fam


def test_json_roundtrip():
    fam = paper_family("f8_45")
    assert from_json_obj(to_json_obj(fam)) == fam
    assert loads('{"n": 4, "k": 3, "members": [[1, 2, 3]]}').sets() == [(1, 2, 3)]


def test_file_roundtrip(tmp_path):
    fam = paper_family("f6_13")
    for name in ("a.fam", "a.json"):
        write_family(fam, tmp_path / name)
        assert read_family(tmp_path / name) == fam


def test_comments_and_blank_lines():
    fam = parse_fam("# hi\nn=4 k=3\n\n1 2 3  # first\n1 2 4\n")
    assert len(fam) == 2


@pytest.mark.parametrize(
    "text, line",
    [
        ("n=4 k=3\n1 2 x\n", 2),
        ("n=4 k=3\n1 2 3\n1 2 5\n", 3),
        ("n=4 k=3\n1 2\n", 2),
        ("k=3\n1 2 3\n", 1),
        ("n=4 k=3\n1 2 4\n2 1 3\n", 3),
        ("n=4 k=3\n1 2 4\n1 2 4\n", 3),
    ],
)
def test_malformed_lines_are_reported(text, line):
    with pytest.raises(FamilyFormatError) as exc:
        parse_fam(text, source="t.fam")
    assert exc.value.line == line
    assert f"t.fam:{line}" in str(exc.value)
