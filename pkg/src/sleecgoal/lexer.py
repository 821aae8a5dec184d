"""Tokenizer shared by the ``.sleec`` and ``.gsl`` front ends."""

from __future__ import annotations

from dataclasses import dataclass

from sleecgoal.errors import ParseError

IDENT = "IDENT"
INT = "INT"
STRING = "STRING"
PUNCT = "PUNCT"
EOF = "EOF"

# longest first so that ":=" wins over ":"
_PUNCTUATION = (":=", "<>", "<=", ">=", "<", ">", "=", ":", "(", ")", "{", "}", ",", "&")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int

    def __str__(self) -> str:
        if self.kind == EOF:
            return "end of input"
        return repr(self.text)


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    line = 1
    line_start = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            i += 1
            line += 1
            line_start = i
            continue
        if ch in " \t\r\ufeff":
            i += 1
            continue
        col = i - line_start + 1
        if source.startswith("//", i):
            while i < n and source[i] != "\n":
                i += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i + 1
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            tokens.append(Token(IDENT, source[i:j], line, col))
            i = j
            continue
        if ch.isdigit() or (ch == "-" and i + 1 < n and source[i + 1].isdigit()):
            j = i + 1
            while j < n and source[j].isdigit():
                j += 1
            tokens.append(Token(INT, source[i:j], line, col))
            i = j
            continue
        if ch == '"':
            text, i = _read_string(source, i, line, col)
            tokens.append(Token(STRING, text, line, col))
            continue
        for p in _PUNCTUATION:
            if source.startswith(p, i):
                tokens.append(Token(PUNCT, p, line, col))
                i += len(p)
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token(EOF, "", line, i - line_start + 1))
    return tokens


def _read_string(source: str, i: int, line: int, col: int) -> tuple[str, int]:
    out = []
    i += 1
    while i < len(source):
        ch = source[i]
        if ch == '"':
            return "".join(out), i + 1
        if ch == "\n":
            break
        if ch == "\\" and i + 1 < len(source):
            nxt = source[i + 1]
            out.append({"n": "\n", "t": "\t"}.get(nxt, nxt))
            i += 2
            continue
        out.append(ch)
        i += 1
    raise ParseError("unterminated string literal", line, col)


def quote(text: str) -> str:
    """Inverse of string-literal lexing."""
    escaped = text.replace("\\", "\\\\").replace('"', '\\"')
    return '"' + escaped.replace("\n", "\\n").replace("\t", "\\t") + '"'


class TokenStream:
    """Cursor over a token list with expectation-tracking error reporting."""

    def __init__(self, tokens: list[Token], reserved: frozenset[str]):
        self.tokens = tokens
        self.pos = 0
        self.reserved = reserved
        self._expected: set[str] = set()

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != EOF:
            self.pos += 1
        self._expected.clear()
        return tok

    def at(self, text: str) -> bool:
        tok = self.current
        self._expected.add(text)
        return tok.text == text and tok.kind in (IDENT, PUNCT)

    def at_kind(self, kind: str) -> bool:
        self._expected.add(kind.lower() if kind != IDENT else "identifier")
        return self.current.kind == kind

    def accept(self, text: str) -> Token | None:
        if self.at(text):
            return self.advance()
        return None

    def expect(self, text: str) -> Token:
        if self.at(text):
            return self.advance()
        raise self.error()

    def at_ident(self) -> bool:
        self._expected.add("identifier")
        tok = self.current
        return tok.kind == IDENT and tok.text not in self.reserved

    def expect_ident(self) -> Token:
        tok = self.current
        if tok.kind == IDENT and tok.text in self.reserved:
            raise ParseError(
                f"expected an identifier, found reserved word {tok.text!r}",
                tok.line,
                tok.col,
                frozenset({"identifier"}),
            )
        if self.at_ident():
            return self.advance()
        raise self.error()

    def expect_kind(self, kind: str) -> Token:
        if self.at_kind(kind):
            return self.advance()
        raise self.error()

    def error(self, message: str | None = None) -> ParseError:
        tok = self.current
        expected = frozenset(self._expected)
        if message is None:
            wanted = ", ".join(sorted(expected)) or "something else"
            message = f"unexpected {tok}; expected one of: {wanted}"
        return ParseError(message, tok.line, tok.col, expected)
