"""Line-oriented text formats for systems and families.

System file::

    MRHS 1
    q <prime>
    n <unknowns>
    m <equations>
    eq <t> <s>          # then t matrix rows of n ints, then s rhs rows of t ints
    ...

Family file::

    FAM 1
    q <prime>
    n <dimension>
    m <sets>
    t <max set size>
    set <size>          # then <size> vectors of n ints
    ...

Blank lines are ignored; a line whose first non-blank character is ``#``
is a comment.
"""

from __future__ import annotations

from typing import Iterable, TextIO

from .deficit import VectorFamily
from .errors import MrhsError, ParseError
from .gf import FieldSpec
from .linalg import Mat
from .mrhs import MrhsEquation, MrhsSystem, make_equation


def _row(v) -> str:
    return " ".join(str(int(x)) for x in v)


def dump_system(sys: MrhsSystem, comments: Iterable[str] = ()) -> str:
    lines = ["MRHS 1"]
    lines += [f"# {c}" for c in comments]
    lines += [f"q {sys.field.q}", f"n {sys.n}", f"m {sys.m}"]
    for e in sys.equations:
        lines.append(f"eq {e.t} {len(e.s)}")
        lines += [_row(r) for r in e.a.rows]
        lines += [_row(b) for b in e.s]
    return "\n".join(lines) + "\n"


def dump_family(fam: VectorFamily, comments: Iterable[str] = ()) -> str:
    lines = ["FAM 1"]
    lines += [f"# {c}" for c in comments]
    lines += [f"q {fam.field.q}", f"n {fam.n}", f"m {fam.m}", f"t {fam.t}"]
    for s in fam.sets:
        lines.append(f"set {len(s)}")
        lines += [_row(v) for v in s]
    return "\n".join(lines) + "\n"


class _Lines:
    def __init__(self, text: str):
        self.items = []
        for no, raw in enumerate(text.splitlines(), start=1):
            s = raw.strip()
            if s and not s.startswith("#"):
                self.items.append((no, s))
        self.pos = 0

    def next(self, what: str) -> tuple[int, str]:
        if self.pos >= len(self.items):
            last = self.items[-1][0] if self.items else None
            raise ParseError(f"unexpected end of file, expected {what}", last)
        item = self.items[self.pos]
        self.pos += 1
        return item

    def keyed(self, key: str, count: int = 1) -> list[int]:
        no, s = self.next(f"'{key}'")
        parts = s.split()
        if parts[0] != key or len(parts) != count + 1:
            raise ParseError(f"expected '{key}' with {count} integer(s), got {s!r}", no)
        return [_int(p, no) for p in parts[1:]]

    def ints(self, count: int, what: str) -> tuple[int, ...]:
        no, s = self.next(what)
        parts = s.split()
        if len(parts) != count:
            raise ParseError(f"{what}: expected {count} integers, got {len(parts)}", no)
        return tuple(_int(p, no) for p in parts)

    def done(self):
        if self.pos < len(self.items):
            no, s = self.items[self.pos]
            raise ParseError(f"trailing content {s!r}", no)


def _int(tok: str, no: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"not an integer: {tok!r}", no) from None


def _header(lines: _Lines, magic: str):
    no, s = lines.next("header")
    if s.split() != [magic, "1"]:
        raise ParseError(f"expected header '{magic} 1', got {s!r}", no)


def _field(lines: _Lines) -> FieldSpec:
    no = lines.items[lines.pos][0] if lines.pos < len(lines.items) else None
    (q,) = lines.keyed("q")
    try:
        return FieldSpec(q)
    except MrhsError as exc:
        raise ParseError(str(exc), no) from None


def parse_system(text: str) -> MrhsSystem:
    lines = _Lines(text)
    _header(lines, "MRHS")
    f = _field(lines)
    (n,) = lines.keyed("n")
    (m,) = lines.keyed("m")
    eqs: list[MrhsEquation] = []
    for k in range(m):
        no = lines.items[lines.pos][0] if lines.pos < len(lines.items) else None
        t, s = lines.keyed("eq", 2)
        rows = [lines.ints(n, f"row of equation {k}") for _ in range(t)]
        rhs = [lines.ints(t, f"rhs of equation {k}") for _ in range(s)]
        for v in rows + rhs:
            if any(x < 0 or x >= f.q for x in v):
                raise ParseError(f"entry outside [0, {f.q}) in equation {k}", no)
        try:
            eqs.append(make_equation(Mat(rows, f, n), rhs))
        except MrhsError as exc:
            raise ParseError(f"equation {k}: {exc}", no) from None
    lines.done()
    return MrhsSystem(n, f, tuple(eqs))


def parse_family(text: str) -> VectorFamily:
    lines = _Lines(text)
    _header(lines, "FAM")
    f = _field(lines)
    (n,) = lines.keyed("n")
    (m,) = lines.keyed("m")
    (t,) = lines.keyed("t")
    sets = []
    for k in range(m):
        no = lines.items[lines.pos][0] if lines.pos < len(lines.items) else None
        (size,) = lines.keyed("set")
        if not 1 <= size <= t:
            raise ParseError(f"set {k} has size {size}, expected 1..{t}", no)
        vecs = tuple(lines.ints(n, f"vector of set {k}") for _ in range(size))
        for v in vecs:
            if any(x < 0 or x >= f.q for x in v):
                raise ParseError(f"entry outside [0, {f.q}) in set {k}", no)
        sets.append(vecs)
    lines.done()
    return VectorFamily(n, f, tuple(sets), t)


def sniff(text: str) -> str:
    """``'system'`` or ``'family'`` from the header line."""
    for raw in text.splitlines():
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        head = s.split()[0]
        if head == "MRHS":
            return "system"
        if head == "FAM":
            return "family"
        break
    raise ParseError("unknown file type: expected 'MRHS 1' or 'FAM 1' header", 1)


def read_text(path_or_file) -> str:
    if hasattr(path_or_file, "read"):
        return path_or_file.read()
    with open(path_or_file, encoding="utf-8") as fh:
        return fh.read()


def write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def load_system(path_or_file: str | TextIO) -> MrhsSystem:
    return parse_system(read_text(path_or_file))


def load_family(path_or_file: str | TextIO) -> VectorFamily:
    return parse_family(read_text(path_or_file))
