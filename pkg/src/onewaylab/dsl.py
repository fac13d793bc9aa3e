"""Textual pattern format: tokenizer, parser, and serializer.

The format stores commands in execution order (first line runs first):

    pattern teleport {
      space: 1, 2, 3;
      input: 1;
      output: 3;
      seq:
        E(1,2);
        E(2,3);
        M(1, 7/4 pi);
        M(2, 3/2 pi, s=s[1]);
        Z(3, s[1]);
        X(3, s[2]);
    }

Qubit labels are integers or words (primed labels like ``2'`` allowed).
Angles are exact multiples of pi (``0``, ``pi``, ``1/2 pi``) or decimal
radians; signals are sums like ``1 + s[1] + s[2]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .angles import Angle
from .commands import CorrectX, CorrectZ, Entangle, Measure, Shift
from .patterns import Pattern
from .signals import Qubit, Signal, qubit_key


class DslError(ValueError):
    """Syntax or structural error in pattern text, with location."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class PatternDocument:
    """A named pattern as read from (or written to) text."""

    name: str
    pattern: Pattern


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<float>[+-]?(?:\d+\.\d*|\.\d+)(?:[eE][+-]?\d+)?|[+-]?\d+[eE][+-]?\d+)
  | (?P<int>\d+'*|[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[{}();:,=/\[\]+-])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # "word", "float", "punct", "eof"
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise DslError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        chunk = m.group()
        col = pos - line_start + 1
        if kind == "float":
            tokens.append(_Token("float", chunk, line, col))
        elif kind == "int":
            tokens.append(_Token("word", chunk, line, col))
        elif kind == "punct":
            tokens.append(_Token("punct", chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    tokens.append(_Token("eof", "", line, len(text) - line_start + 1))
    return tokens


def _qubit_from_word(word: str) -> Qubit:
    return int(word) if word.isdigit() else word


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def fail(self, message: str, tok: _Token | None = None):
        tok = tok or self.peek()
        raise DslError(message, tok.line, tok.column)

    def expect(self, text: str) -> _Token:
        tok = self.next()
        if tok.text != text:
            found = tok.text or "end of input"
            self.fail(f"expected {text!r}, found {found!r}", tok)
        return tok

    def word(self, what: str) -> _Token:
        tok = self.next()
        if tok.kind != "word":
            found = tok.text or "end of input"
            self.fail(f"expected {what}, found {found!r}", tok)
        return tok

    # grammar pieces -------------------------------------------------

    def qubit(self) -> Qubit:
        return _qubit_from_word(self.word("a qubit label").text)

    def qubit_list(self) -> list:
        qubits = []
        if self.peek().text == ";":
            return qubits
        qubits.append(self.qubit())
        while self.peek().text == ",":
            self.next()
            qubits.append(self.qubit())
        return qubits

    def integer(self) -> int:
        tok = self.word("an integer")
        if not tok.text.isdigit():
            self.fail(f"expected an integer, found {tok.text!r}", tok)
        return int(tok.text)

    def angle(self) -> Angle:
        """``0`` | ``[-]pi`` | ``[-]p/q pi`` | ``[-]p pi`` | ``[-]pi/q`` | float radians."""
        negative = False
        if self.peek().text == "-":
            self.next()
            negative = True
        tok = self.peek()
        if tok.kind == "float":
            self.next()
            value = float(tok.text)
            return Angle.from_radians(-value if negative else value)
        if tok.text == "pi":
            self.next()
            num, den = 1, 1
            if self.peek().text == "/":
                self.next()
                den = self.integer()
            frac = Fraction(num, den)
            return Angle.exact(-frac if negative else frac)
        if tok.kind == "word" and tok.text.isdigit():
            self.next()
            num = int(tok.text)
            den = 1
            if self.peek().text == "/":
                self.next()
                den = self.integer()
            if self.peek().text == "pi":
                self.next()
                frac = Fraction(num, den)
                return Angle.exact(-frac if negative else frac)
            if den != 1:
                self.fail("fractional angle must be followed by 'pi'", tok)
            if num == 0:
                return Angle.exact(0)
            return Angle.from_radians(float(-num if negative else num))
        found = tok.text or "end of input"
        self.fail(f"expected an angle, found {found!r}", tok)

    def signal(self) -> Signal:
        support: set = set()
        constant = 0
        while True:
            tok = self.peek()
            if tok.text == "s":
                self.next()
                self.expect("[")
                support ^= {self.qubit()}
                self.expect("]")
            elif tok.kind == "word" and tok.text.isdigit():
                self.next()
                constant ^= int(tok.text) % 2
            else:
                found = tok.text or "end of input"
                self.fail(f"expected a signal term, found {found!r}", tok)
            if self.peek().text != "+":
                return Signal(frozenset(support), constant)
            self.next()

    def command(self):
        tok = self.word("a command (E, M, X, Z, S)")
        kind = tok.text
        self.expect("(")
        if kind == "E":
            i = self.qubit()
            self.expect(",")
            j = self.qubit()
            self.expect(")")
            return Entangle(i, j)
        if kind == "M":
            q = self.qubit()
            self.expect(",")
            angle = self.angle()
            s = t = Signal()
            while self.peek().text == ",":
                self.next()
                name = self.word("'s' or 't'")
                if name.text not in ("s", "t"):
                    self.fail(f"expected 's' or 't', found {name.text!r}", name)
                self.expect("=")
                if name.text == "s":
                    s = self.signal()
                else:
                    t = self.signal()
            self.expect(")")
            return Measure(q, angle, s, t)
        if kind in ("X", "Z", "S"):
            q = self.qubit()
            self.expect(",")
            sig = self.signal()
            self.expect(")")
            if kind == "X":
                return CorrectX(q, sig)
            if kind == "Z":
                return CorrectZ(q, sig)
            return Shift(q, sig)
        self.fail(f"unknown command {kind!r}", tok)

    def document(self) -> PatternDocument:
        self.expect("pattern")
        name = self.word("a pattern name").text
        self.expect("{")
        self.expect("space")
        self.expect(":")
        space = self.qubit_list()
        self.expect(";")
        self.expect("input")
        self.expect(":")
        inputs = self.qubit_list()
        self.expect(";")
        self.expect("output")
        self.expect(":")
        outputs = self.qubit_list()
        self.expect(";")
        self.expect("seq")
        self.expect(":")
        commands = []
        while self.peek().text not in ("}", ""):
            commands.append(self.command())
            self.expect(";")
        self.expect("}")
        tok = self.next()
        if tok.kind != "eof":
            self.fail(f"unexpected trailing {tok.text!r}", tok)
        try:
            pattern = Pattern(frozenset(space), tuple(inputs), tuple(outputs), tuple(commands))
        except ValueError as exc:
            raise DslError(str(exc)) from exc
        return PatternDocument(name, pattern)


def parse_document(text: str) -> PatternDocument:
    return _Parser(text).document()


def parse(text: str) -> Pattern:
    return parse_document(text).pattern


# serialization ------------------------------------------------------


def format_qubit(q: Qubit) -> str:
    return str(q)


def format_angle(angle: Angle) -> str:
    if not angle.is_exact:
        # repr is the shortest decimal that parses back to the same float
        return repr(angle.radians)
    frac = angle.fraction
    if frac == 0:
        return "0"
    if frac == 1:
        return "pi"
    if frac.denominator == 1:
        return f"{frac.numerator} pi"
    return f"{frac.numerator}/{frac.denominator} pi"


def format_signal(sig: Signal) -> str:
    return str(sig)


def format_command(cmd) -> str:
    if isinstance(cmd, Entangle):
        return f"E({format_qubit(cmd.i)},{format_qubit(cmd.j)})"
    if isinstance(cmd, Measure):
        parts = [format_qubit(cmd.qubit), format_angle(cmd.angle)]
        if cmd.s:
            parts.append(f"s={format_signal(cmd.s)}")
        if cmd.t:
            parts.append(f"t={format_signal(cmd.t)}")
        return f"M({', '.join(parts)})"
    if isinstance(cmd, CorrectX):
        return f"X({format_qubit(cmd.qubit)}, {format_signal(cmd.signal)})"
    if isinstance(cmd, CorrectZ):
        return f"Z({format_qubit(cmd.qubit)}, {format_signal(cmd.signal)})"
    if isinstance(cmd, Shift):
        return f"S({format_qubit(cmd.qubit)}, {format_signal(cmd.signal)})"
    raise TypeError(f"unknown command {cmd!r}")


def serialize(pattern: Pattern, name: str = "p", paper_order: bool = False) -> str:
    """Render a pattern document.

    With ``paper_order`` the command list is printed reversed (rightmost
    command first in the usual written notation); such output is for reading
    alongside hand derivations, not for parsing back.
    """
    commands = list(pattern.commands)
    if paper_order:
        commands.reverse()
    lines = [f"pattern {name} {{"]
    lines.append("  space: " + ", ".join(format_qubit(q) for q in sorted(pattern.space, key=qubit_key)) + ";")
    lines.append("  input: " + ", ".join(format_qubit(q) for q in pattern.inputs) + ";")
    lines.append("  output: " + ", ".join(format_qubit(q) for q in pattern.outputs) + ";")
    lines.append("  seq:")
    for cmd in commands:
        lines.append(f"    {format_command(cmd)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def serialize_document(doc: PatternDocument, paper_order: bool = False) -> str:
    return serialize(doc.pattern, doc.name, paper_order)
