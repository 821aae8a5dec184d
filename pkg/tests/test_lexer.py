import pytest

from sleecgoal.errors import ParseError
from sleecgoal.lexer import EOF, IDENT, INT, PUNCT, STRING, quote, tokenize


def kinds(src):
    return [(t.kind, t.text) for t in tokenize(src)]


def test_punctuation_prefers_longest_match():
    assert kinds("r:= x<>y <= >=") == [
        (IDENT, "r"), (PUNCT, ":="), (IDENT, "x"), (PUNCT, "<>"), (IDENT, "y"),
        (PUNCT, "<="), (PUNCT, ">="), (EOF, ""),
    ]


def test_comments_and_negative_numbers():
    toks = kinds("count > -3 // trailing note\n&")
    assert toks == [(IDENT, "count"), (PUNCT, ">"), (INT, "-3"), (PUNCT, "&"), (EOF, "")]


def test_string_escapes_round_trip():
    text = 'say "hi" \\ there'
    (tok, _) = tokenize(quote(text))
    assert tok.kind == STRING and tok.text == text


def test_positions_are_one_based():
    toks = tokenize("a\n  bb")
    assert (toks[1].line, toks[1].col) == (2, 3)


def test_unterminated_string_is_located():
    with pytest.raises(ParseError) as err:
        tokenize('x "open')
    assert err.value.line == 1


def test_unknown_character():
    with pytest.raises(ParseError):
        tokenize("a # b")
