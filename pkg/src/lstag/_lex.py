"""Tokenizer shared by the bracketed tree format and the grammar file format."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError
from .gorn import ROOT_TEXT

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_ADDR_RE = re.compile(r"\d+(?:\.\d+)*")
_TWO_CHAR = ("<-", "->")
_ONE_CHAR = "(){}[]:~,!*@"


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, ADDR, STRING, PUNCT, EOF
    text: str
    line: int
    column: int


def lex(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if text[i : i + 2] in _TWO_CHAR:
            tokens.append(Token("PUNCT", text[i : i + 2], line, col))
            i += 2
            col += 2
            continue
        if ch == '"':
            j = i + 1
            out = []
            while j < n:
                c = text[j]
                if c == "\\":
                    if j + 1 >= n or text[j + 1] not in ('"', "\\"):
                        raise ParseError("invalid escape in string literal", line, col)
                    out.append(text[j + 1])
                    j += 2
                    continue
                if c == '"':
                    break
                if c == "\n":
                    raise ParseError("unterminated string literal", line, col)
                out.append(c)
                j += 1
            else:
                raise ParseError("unterminated string literal", line, col)
            tokens.append(Token("STRING", "".join(out), line, col))
            col += j + 1 - i
            i = j + 1
            continue
        if ch == ROOT_TEXT:
            tokens.append(Token("ADDR", ROOT_TEXT, line, col))
            i += 1
            col += 1
            continue
        m = _ADDR_RE.match(text, i)
        if m:
            tokens.append(Token("ADDR", m.group(0), line, col))
            col += m.end() - i
            i = m.end()
            continue
        m = _NAME_RE.match(text, i)
        if m:
            tokens.append(Token("NAME", m.group(0), line, col))
            col += m.end() - i
            i = m.end()
            continue
        if ch in _ONE_CHAR:
            tokens.append(Token("PUNCT", ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("EOF", "", line, col))
    return tokens


class Cursor:
    """Single-lookahead reader over a token list."""

    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def expect(self, kind: str, text: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            wanted = text if text is not None else kind
            raise ParseError(f"expected {wanted!r}, found {tok.text or tok.kind!r}", tok.line, tok.column)
        return self.next()

    def accept(self, kind: str, text: str | None = None) -> Token | None:
        tok = self.peek()
        if tok.kind == kind and (text is None or tok.text == text):
            return self.next()
        return None

    def error(self, message: str) -> ParseError:
        tok = self.peek()
        return ParseError(message, tok.line, tok.column)
