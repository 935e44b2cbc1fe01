import io

import pytest
from hypothesis import given, settings, strategies as st

from mrhsglue.constructions import random_family, random_system, vandermonde_family
from mrhsglue.errors import ParseError
from mrhsglue.formats import (
    dump_family, dump_system, load_family, parse_family, parse_system, sniff,
)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32), st.sampled_from([2, 3, 5]))
def test_system_round_trip(seed, q):
    sys = random_system(5, 4, 3, q, seed)
    text = dump_system(sys, comments=["hello"])
    assert parse_system(text) == sys
    assert dump_system(parse_system(text), comments=["hello"]) == text


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32), st.sampled_from([2, 3]))
def test_family_round_trip(seed, q):
    fam = random_family(6, 5, 3, q, seed)
    text = dump_family(fam)
    assert parse_family(text) == fam
    assert load_family(io.StringIO(text)) == fam


def test_sniff():
    assert sniff("# c\n\nMRHS 1\n") == "system"
    assert sniff(dump_family(vandermonde_family(4, 2))) == "family"
    with pytest.raises(ParseError):
        sniff("nope\n")


@pytest.mark.parametrize("text, line", [
    ("MRHS 2\n", 1),
    ("MRHS 1\nq 4\n", 2),
    ("MRHS 1\nq 2\nn 2\nm 1\neq 1 1\n1 x\n0\n", 6),
    ("MRHS 1\nq 2\nn 2\nm 1\neq 1 1\n1 0 1\n0\n", 6),
    ("MRHS 1\nq 2\nn 2\nm 1\neq 2 0\n1 0\n1 0\n", 5),
    ("MRHS 1\nq 2\nn 2\nm 1\neq 1 0\n1 0\nextra\n", 7),
    ("FAM 1\nq 3\nn 2\nm 1\nt 1\nset 2\n1 0\n0 1\n", 6),
    ("FAM 1\nq 3\nn 2\nm 1\nt 1\nset 1\n1 5\n", 6),
])
def test_parse_errors_carry_line_numbers(text, line):
    parse = parse_system if text.startswith("MRHS") else parse_family
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_truncated_file():
    with pytest.raises(ParseError, match="unexpected end"):
        parse_family("FAM 1\nq 2\nn 2\nm 2\nt 1\nset 1\n1 0\n")
