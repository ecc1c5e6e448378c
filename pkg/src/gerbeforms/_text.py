"""Character cursor with line/column tracking, shared by the literal parsers."""

from __future__ import annotations

from .errors import ParseError


class Cursor:
    __slots__ = ("text", "pos", "line", "col")

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def error(self, message: str, *expected: str) -> ParseError:
        return ParseError(message, self.line, self.col, expected)

    def _advance(self, n: int = 1) -> None:
        for _ in range(n):
            if self.text[self.pos] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.pos += 1

    def skip(self, newlines: bool = True) -> None:
        """Skip blanks and ``#`` comments; newlines only if ``newlines``."""
        text = self.text
        while self.pos < len(text):
            ch = text[self.pos]
            if ch == "#":
                while self.pos < len(text) and text[self.pos] != "\n":
                    self._advance()
            elif ch in " \t\r" or (newlines and ch == "\n"):
                self._advance()
            else:
                break

    def eof(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at(self, token: str) -> bool:
        return self.text.startswith(token, self.pos)

    def accept(self, token: str) -> bool:
        if self.at(token):
            self._advance(len(token))
            return True
        return False

    def expect(self, token: str) -> None:
        if not self.accept(token):
            found = self.peek() or "end of input"
            raise self.error(f"unexpected {found!r}", repr(token))

    def read_int(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self._advance()
        if start == self.pos:
            found = self.peek() or "end of input"
            raise self.error(f"unexpected {found!r}", "integer")
        return int(self.text[start:self.pos])

    def read_name(self, extra: str = "_") -> str:
        start = self.pos
        text = self.text
        if self.pos < len(text) and (text[self.pos].isalpha() or text[self.pos] == "_"):
            while self.pos < len(text) and (text[self.pos].isalnum() or text[self.pos] in extra):
                self._advance()
        if start == self.pos:
            found = self.peek() or "end of input"
            raise self.error(f"unexpected {found!r}", "name")
        return text[start:self.pos]
