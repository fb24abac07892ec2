"""Reading and writing families.

``.fam`` text format::

    # comment
    n=6 k=3
    1 2 6
    1 3 5

The JSON mirror is ``{"n": 6, "k": 3, "members": [[1, 2, 6], [1, 3, 5]]}``.
Members are written in colex order; reading accepts any order.
"""
from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any

from vcx.core import DomainError, Family, GroundSet
from vcx.bits import mask_of

_HEADER = re.compile(r"^n\s*=\s*(\d+)(?:\s+k\s*=\s*(\d+))?$")


class FamilyFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = source or "<input>"
        if line is not None:
            where = f"{where}:{line}"
        super().__init__(f"{where}: {message}")


def parse_fam(text: str, source: str | None = None) -> Family:
    n = k = None
    masks: list[int] = []
    seen: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            m = _HEADER.match(line)
            if not m:
                raise FamilyFormatError(f"expected header 'n=<n> k=<k>', got {line!r}", lineno, source)
            n = int(m.group(1))
            k = int(m.group(2)) if m.group(2) is not None else None
            if not 1 <= n <= 64:
                raise FamilyFormatError(f"n must be in 1..64, got {n}", lineno, source)
            continue
        try:
            elements = [int(tok) for tok in line.split()]
        except ValueError:
            raise FamilyFormatError(f"non-integer token in {line!r}", lineno, source) from None
        if elements != sorted(set(elements)):
            raise FamilyFormatError(f"member must be strictly ascending: {line!r}", lineno, source)
        if elements and (elements[0] < 1 or elements[-1] > n):
            raise FamilyFormatError(f"element outside [1, {n}] in {line!r}", lineno, source)
        if k is not None and len(elements) != k:
            raise FamilyFormatError(f"member has {len(elements)} elements, header says k={k}", lineno, source)
        mask = mask_of(elements)
        if mask in seen:
            raise FamilyFormatError(f"duplicate member (first on line {seen[mask]})", lineno, source)
        seen[mask] = lineno
        masks.append(mask)
    if n is None:
        raise FamilyFormatError("missing header line", None, source)
    return Family(GroundSet(n), tuple(masks), k)


def dump_fam(family: Family, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    header = f"n={family.n}"
    if family.uniform_k is not None:
        header += f" k={family.uniform_k}"
    lines.append(header)
    lines.extend(" ".join(map(str, s)) for s in family.sets())
    return "\n".join(lines) + "\n"


def to_json_obj(family: Family) -> dict[str, Any]:
    return {"n": family.n, "k": family.uniform_k, "members": [list(s) for s in family.sets()]}


def from_json_obj(obj: Any, source: str | None = None) -> Family:
    if not isinstance(obj, dict) or "n" not in obj or "members" not in obj:
        raise FamilyFormatError("JSON family needs keys 'n' and 'members'", None, source)
    try:
        return Family.from_sets(int(obj["n"]), [tuple(m) for m in obj["members"]], obj.get("k"))
    except (DomainError, TypeError, ValueError) as exc:
        raise FamilyFormatError(str(exc), None, source) from None


def loads(text: str, source: str | None = None) -> Family:
    """Parse either format; JSON is recognised by a leading ``{``."""
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FamilyFormatError(exc.msg, exc.lineno, source) from None
        return from_json_obj(obj, source)
    try:
        return parse_fam(text, source)
    except DomainError as exc:
        raise FamilyFormatError(str(exc), None, source) from None


def read_family(path: str | Path) -> Family:
    path = Path(path)
    return loads(path.read_text(), str(path))


def write_family(family: Family, path: str | Path, comment: str | None = None) -> None:
    path = Path(path)
    if path.suffix == ".json":
        path.write_text(json.dumps(to_json_obj(family)) + "\n")
    else:
        path.write_text(dump_fam(family, comment))
