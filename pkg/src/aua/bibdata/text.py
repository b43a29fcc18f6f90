"""Unicode normalization and LaTeX accent decoding for names and institutions."""

from __future__ import annotations

import logging
import unicodedata
from typing import List, NewType

from ..errors import InvalidName, ParseError

log = logging.getLogger(__name__)

CanonicalName = NewType("CanonicalName", str)


def normalize_text(raw: str) -> CanonicalName:
    """Return the equality key for a name: NFC, case-folded, whitespace-collapsed.

    Diacritics are kept, so ``"Nürnberg"`` and ``"Nurnberg"`` stay distinct.
    """
    folded = unicodedata.normalize("NFC", unicodedata.normalize("NFC", raw).casefold())
    key = " ".join(folded.split())
    if not key:
        raise InvalidName(f"empty name after trimming: {raw!r}")
    return CanonicalName(key)


# accent command -> combining code point
_ACCENTS = {
    '"': "̈",
    "'": "́",
    "`": "̀",
    "^": "̂",
    "~": "̃",
    "=": "̄",
    ".": "̇",
    "c": "̧",
    "k": "̨",
    "H": "̋",
    "u": "̆",
    "v": "̌",
    "r": "̊",
    "d": "̣",
    "b": "̱",
}
_SYMBOL_ACCENTS = frozenset('"\'`^~=.')

_SPECIALS = {
    "ss": "ß",
    "o": "ø",
    "O": "Ø",
    "ae": "æ",
    "AE": "Æ",
    "oe": "œ",
    "OE": "Œ",
    "aa": "å",
    "AA": "Å",
    "l": "ł",
    "L": "Ł",
    "i": "ı",
    "j": "ȷ",
}

_LITERALS = frozenset("&%$#_{}\\ ")


class _Decoder:
    def __init__(self, raw: str) -> None:
        self.raw = raw
        self.pos = 0
        self.out: List[str] = []
        # one flag per open brace: True if the brace is echoed to the output
        self.stack: List[tuple] = []

    def byte_offset(self, pos: int) -> int:
        return len(self.raw[:pos].encode("utf-8"))

    def peek(self, k: int = 0) -> str:
        i = self.pos + k
        return self.raw[i] if i < len(self.raw) else ""

    def read_command(self) -> str:
        # called with pos just after the backslash
        start = self.pos
        if self.peek().isalpha() and self.peek().isascii():
            while self.peek().isalpha() and self.peek().isascii():
                self.pos += 1
        elif self.peek():
            self.pos += 1
        return self.raw[start:self.pos]

    def read_accent_base(self) -> str | None:
        """Read the letter an accent applies to: ``x``, ``{x}`` or `` x``."""
        save = self.pos
        while self.peek() == " ":
            self.pos += 1
        if self.peek() == "{":
            close = self.raw.find("}", self.pos + 1)
            inner = self.raw[self.pos + 1:close] if close != -1 else None
            if inner is not None:
                base = self._decode_base(inner.strip())
                if base is not None:
                    self.pos = close + 1
                    return base
        elif self.peek() == "\\":
            self.pos += 1
            cmd = self.read_command()
            if cmd in ("i", "j"):
                self._eat_terminator()
                return cmd
        elif self.peek().isalpha():
            ch = self.peek()
            self.pos += 1
            return ch
        self.pos = save
        return None

    @staticmethod
    def _decode_base(inner: str) -> str | None:
        if len(inner) == 1 and inner.isalpha():
            return inner
        if inner in ("\\i", "\\j"):
            return inner[1]
        return None

    def _eat_terminator(self) -> None:
        # "\ss{}" or "\ss " end the control word
        if self.raw.startswith("{}", self.pos):
            self.pos += 2
        elif self.peek() == " ":
            self.pos += 1

    def run(self) -> str:
        raw = self.raw
        while self.pos < len(raw):
            ch = raw[self.pos]
            if ch == "{":
                self.stack.append((self.pos, False))
                self.pos += 1
            elif ch == "}":
                if not self.stack:
                    raise ParseError("unbalanced closing brace", offset=self.byte_offset(self.pos))
                _, echoed = self.stack.pop()
                if echoed:
                    self.out.append("}")
                self.pos += 1
            elif ch == "\\":
                self.escape()
            else:
                self.out.append(ch)
                self.pos += 1
        if self.stack:
            open_pos, _ = self.stack[-1]
            raise ParseError("unbalanced opening brace", offset=self.byte_offset(open_pos))
        return unicodedata.normalize("NFC", "".join(self.out))

    def escape(self) -> None:
        start = self.pos
        self.pos += 1
        cmd = self.read_command()
        if not cmd:
            self.out.append("\\")
            return
        if cmd in _ACCENTS and (cmd in _SYMBOL_ACCENTS or not self.peek().isalpha()):
            base = self.read_accent_base()
            if base is not None:
                self.out.append(unicodedata.normalize("NFC", base + _ACCENTS[cmd]))
                return
        elif cmd in _SPECIALS:
            self._eat_terminator()
            self.out.append(_SPECIALS[cmd])
            return
        elif len(cmd) == 1 and cmd in _LITERALS:
            self.out.append(cmd)
            return
        # unknown: echo the control sequence and keep braces of a directly following group
        verbatim = self.raw[start:self.pos]
        log.warning("unknown LaTeX escape %r passed through verbatim", verbatim)
        self.out.append(verbatim)
        if self.peek() == "{":
            self.stack.append((self.pos, True))
            self.out.append("{")
            self.pos += 1


def decode_latex_escapes(raw: str) -> str:
    """Decode LaTeX accent escapes into composed Unicode and drop grouping braces.

    ``N{\\"u}rnberg`` becomes ``Nürnberg`` and ``{\\ss}`` becomes ``ß``.
    Unknown control sequences are kept verbatim (a warning is logged).
    Unbalanced braces raise :class:`ParseError` with the byte offset of the
    offending brace.
    """
    return _Decoder(raw).run()
