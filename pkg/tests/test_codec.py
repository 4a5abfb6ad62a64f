import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotproj import codec
from knotproj.curves import SignedGaussCode
from knotproj.errors import CodecError, SignMismatch, ValidationError

from oracles import curves_up_to


def test_parse_basic_entries():
    text = """
# toy corpus
t:                     # the embedded circle
k1: a+ a+
tre: a+ b- c+ a+ b- c+ | tricolor=true fox3=9
"""
    entries = codec.parse_corpus(text)
    assert [e.name for e in entries] == ["t", "k1", "tre"]
    assert entries[0].code.word == ()
    assert entries[1].curve().n == 1
    assert entries[2].expected == {"tricolor": True, "fox3": 9}


def test_parse_position_in_errors():
    with pytest.raises(CodecError) as err:
        codec.parse_corpus("x: a+ b$ a+ b+")
    assert err.value.line == 1
    assert err.value.column == 7


def test_sign_mismatch():
    with pytest.raises(SignMismatch):
        codec.parse_corpus("x: a+ a-")


def test_validation_delegated():
    with pytest.raises(ValidationError):
        codec.parse_corpus("x: a+ b+ a+ b+")


def test_duplicate_names_rejected():
    with pytest.raises(CodecError):
        codec.parse_corpus("x: a+ a+\nx: b+ b+")


def test_missing_colon():
    with pytest.raises(CodecError):
        codec.parse_corpus("just some words")


def test_serialize_canonicalizes_labels():
    entry = codec.CorpusEntry("z", SignedGaussCode(("q", "q"), {"q": 1}))
    assert codec.serialize(entry) == "z: a+ a+"


def test_serialize_keeps_expected_values():
    entry = codec.CorpusEntry(
        "t", SignedGaussCode((), {}), {"tricolor": False, "fox3": 3}
    )
    line = codec.serialize(entry)
    assert line == "t: | fox3=3 tricolor=false"
    (back,) = codec.parse_corpus(line)
    assert back.expected == entry.expected


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_roundtrip_on_census_curves(data):
    c = data.draw(st.sampled_from(curves_up_to(5)))
    entry = codec.CorpusEntry("rt", c.to_signed_gauss_code())
    (back,) = codec.parse_corpus(codec.serialize(entry))
    assert back.code == entry.code
    assert codec.serialize(back) == codec.serialize(entry)


def test_parse_serialize_idempotent_on_file():
    text = "a: b+ b+ a- a-   # comment\nb: x+ y- z+ x+ y- z+\n"
    entries = codec.parse_corpus(text)
    once = "\n".join(codec.serialize(e) for e in entries)
    twice = "\n".join(codec.serialize(e) for e in codec.parse_corpus(once))
    assert once == twice


def test_report_roundtrip():
    records = [("a", "tricolor", True), ("a", "fox3", 9), ("b", "crossings", 0)]
    assert codec.parse_report(codec.format_report(records)) == records
