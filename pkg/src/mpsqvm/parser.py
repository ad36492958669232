"""Parser for the textual quantum-kernel language.

A source unit holds zero or more kernels::

    __qpu__ name(AcceleratorBuffer b, double t0) {
      RX(3.1415926) 0
      CNOT 1 0
      RZ(t0) 0
      MEASURE 0 [0]
      other_kernel(b, t0)
    }

Whitespace and newlines are insignificant, ``#`` starts a comment. Angle
expressions are real literals or declared ``double`` parameter names. Kernel
calls may only reference kernels defined earlier in the unit. All failures
raise :class:`ParseError` carrying the source position.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .ir import CompositeInstruction, GateKind, Instruction, ParamSlot, _substitute

FILE_EXTENSION = ".qk"

_GATE_NAMES = {k.value: k for k in GateKind}

_TOKEN_RE = re.compile(
    r"""
      (?P<ws>[^\S\n]+)
    | (?P<nl>\n)
    | (?P<comment>\#[^\n]*)
    | (?P<number>[+-]?(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
    | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    | (?P<sym>[(){}\[\],])
    """,
    re.VERBOSE,
)


class ParseError(ValueError):
    """Syntax or semantic error with 1-based source position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str  # "number" | "ident" | "sym" | "eof"
    text: str
    line: int
    col: int


@dataclass
class SourceUnit:
    """A parsed source file: original text plus its kernels by name."""

    text: str
    kernels: dict[str, CompositeInstruction] = field(default_factory=dict)


def _lex(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind == "nl":
            line += 1
            col = 1
        elif kind in ("ws", "comment"):
            col += len(value)
        else:
            tokens.append(Token(kind, value, line, col))
            col += len(value)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _lex(text)
        self.pos = 0

    @property
    def cur(self) -> Token:
        return self.tokens[self.pos]

    def _fail(self, message: str) -> ParseError:
        return ParseError(message, self.cur.line, self.cur.col)

    def _advance(self) -> Token:
        tok = self.cur
        self.pos += 1
        return tok

    def _expect_sym(self, sym: str) -> Token:
        if self.cur.kind != "sym" or self.cur.text != sym:
            raise self._fail(f"expected '{sym}', found {self.cur.text!r}")
        return self._advance()

    def _expect_ident(self, what: str = "identifier") -> Token:
        if self.cur.kind != "ident":
            raise self._fail(f"expected {what}, found {self.cur.text!r}")
        return self._advance()

    def _expect_uint(self, what: str) -> int:
        tok = self.cur
        if tok.kind != "number" or not re.fullmatch(r"\d+", tok.text):
            raise self._fail(f"expected {what}, found {tok.text!r}")
        self._advance()
        return int(tok.text)

    def parse_unit(self, text: str) -> SourceUnit:
        unit = SourceUnit(text)
        while self.cur.kind != "eof":
            name, kernel = self.parse_kernel(unit)
            unit.kernels[name] = kernel
        return unit

    def parse_kernel(self, unit: SourceUnit) -> tuple[str, CompositeInstruction]:
        tok = self._expect_ident("'__qpu__'")
        if tok.text != "__qpu__":
            raise ParseError(f"expected '__qpu__', found {tok.text!r}", tok.line, tok.col)
        name_tok = self._expect_ident("kernel name")
        if name_tok.text in unit.kernels:
            raise ParseError(
                f"duplicate kernel name '{name_tok.text}'", name_tok.line, name_tok.col
            )
        self._expect_sym("(")
        buf_type = self._expect_ident("'AcceleratorBuffer'")
        if buf_type.text != "AcceleratorBuffer":
            raise ParseError(
                f"first formal must be 'AcceleratorBuffer <id>', found {buf_type.text!r}",
                buf_type.line, buf_type.col,
            )
        self._expect_ident("buffer name")  # parsed and discarded
        formals: list[str] = []
        while self.cur.kind == "sym" and self.cur.text == ",":
            self._advance()
            kw = self._expect_ident("'double'")
            if kw.text != "double":
                raise ParseError(
                    f"only 'double' formals are supported, found {kw.text!r}",
                    kw.line, kw.col,
                )
            formals.append(self._expect_ident("parameter name").text)
        self._expect_sym(")")
        self._expect_sym("{")
        children: list[Instruction | CompositeInstruction] = []
        while not (self.cur.kind == "sym" and self.cur.text == "}"):
            if self.cur.kind == "eof":
                raise self._fail("unexpected end of input inside kernel body")
            children.append(self.parse_statement(unit, formals))
        self._expect_sym("}")
        kernel = CompositeInstruction(name_tok.text, tuple(formals), tuple(children))
        return name_tok.text, kernel

    def parse_statement(
        self, unit: SourceUnit, formals: list[str]
    ) -> Instruction | CompositeInstruction:
        head = self._expect_ident("gate or kernel name")
        if head.text == "MEASURE":
            qubit = self._expect_uint("qubit index")
            self._expect_sym("[")
            creg = self._expect_uint("classical register index")
            self._expect_sym("]")
            return Instruction(GateKind.MEASURE, (qubit,), (), classical_target=creg)
        if head.text in _GATE_NAMES:
            return self.parse_gate(_GATE_NAMES[head.text], head, formals)
        return self.parse_call(head, unit, formals)

    def parse_gate(self, kind: GateKind, head: Token, formals: list[str]) -> Instruction:
        params: tuple[ParamSlot, ...] = ()
        if self.cur.kind == "sym" and self.cur.text == "(":
            self._advance()
            params = (self.parse_expr(formals),)
            self._expect_sym(")")
        if len(params) != kind.num_params:
            raise ParseError(
                f"{kind.value} takes {kind.num_params} angle parameter(s), got {len(params)}",
                head.line, head.col,
            )
        qubits = tuple(
            self._expect_uint("qubit index") for _ in range(kind.num_qubits)
        )
        if len(set(qubits)) != len(qubits):
            raise ParseError(
                f"{kind.value} qubit indices must be distinct", head.line, head.col
            )
        return Instruction(kind, qubits, params)

    def parse_call(
        self, head: Token, unit: SourceUnit, formals: list[str]
    ) -> CompositeInstruction:
        callee = unit.kernels.get(head.text)
        if callee is None:
            raise ParseError(f"call to undefined kernel '{head.text}'", head.line, head.col)
        self._expect_sym("(")
        self._expect_ident("buffer argument")  # required, semantically ignored
        args: list[ParamSlot] = []
        while self.cur.kind == "sym" and self.cur.text == ",":
            self._advance()
            args.append(self.parse_expr(formals))
        self._expect_sym(")")
        if len(args) != len(callee.formal_params):
            raise ParseError(
                f"kernel '{head.text}' takes {len(callee.formal_params)} "
                f"argument(s) after the buffer, got {len(args)}",
                head.line, head.col,
            )
        mapping = dict(zip(callee.formal_params, args))
        inlined = _substitute(callee, mapping)
        assert isinstance(inlined, CompositeInstruction)
        return CompositeInstruction(
            callee.name, (), inlined.children, call_args=tuple(args)
        )

    def parse_expr(self, formals: list[str]) -> ParamSlot:
        tok = self.cur
        if tok.kind == "number":
            self._advance()
            return float(tok.text)
        if tok.kind == "ident":
            if tok.text not in formals:
                raise ParseError(f"unknown parameter '{tok.text}'", tok.line, tok.col)
            self._advance()
            return tok.text
        raise self._fail(f"expected angle expression, found {tok.text!r}")


def parse(text: str) -> SourceUnit:
    """Parse a source unit; raises :class:`ParseError` on any invalid input."""
    return _Parser(text).parse_unit(text)


def _format_param(p: ParamSlot) -> str:
    return p if isinstance(p, str) else repr(float(p))


def _unparse_statement(node: Instruction | CompositeInstruction) -> str:
    if isinstance(node, CompositeInstruction):
        args = "".join(", " + _format_param(a) for a in (node.call_args or ()))
        return f"{node.name}(b{args})"
    if node.kind is GateKind.MEASURE:
        return f"MEASURE {node.qubits[0]} [{node.classical_target}]"
    params = ""
    if node.params:
        params = f"({_format_param(node.params[0])})"
    return f"{node.kind.value}{params} " + " ".join(str(q) for q in node.qubits)


def unparse(unit: SourceUnit) -> str:
    """Canonical source text; ``parse(unparse(u))`` is structurally equal to ``u``."""
    blocks = []
    for name, kernel in unit.kernels.items():
        formals = "".join(f", double {p}" for p in kernel.formal_params)
        body = "".join(f"  {_unparse_statement(c)}\n" for c in kernel.children)
        blocks.append(f"__qpu__ {name}(AcceleratorBuffer b{formals}) {{\n{body}}}\n")
    return "\n".join(blocks)
