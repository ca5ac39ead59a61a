"""Text formats: polynomial expressions and derivation spec files.

Polynomial grammar (explicit ``*``, ``^`` for powers, ``p/q`` literals)::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' INT)?
    atom   := INT ('/' INT)? | NAME | '(' expr ')'

Spec file::

    ring: x1, x2
    x1 -> 1 + x1^2*x2
    x2 -> x1^3
    extend:
    x3 <- x2
    flags:
    simple: certified:cor29
    cap: inf

``#`` starts a comment.  Extension lines introduce a new variable whose
image is a polynomial in the previously declared variables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .deriv import DegreeCap, Derivation, ExtensionChain
from .poly import Polynomial, format_poly


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")
NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str, line: int) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            skip = len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[pos + skip]!r}", line, pos + skip + 1)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append(_Token(kind, m.group(kind), start))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, names: Sequence[str], line: int):
        self.tokens = _tokenize(text, line)
        self.k = 0
        self.line = line
        self.index = {name: j for j, name in enumerate(names, start=1)}
        self.arity = len(names)

    @property
    def tok(self) -> _Token:
        return self.tokens[self.k]

    def error(self, message: str, tok: _Token | None = None):
        tok = tok or self.tok
        raise ParseError(message, self.line, tok.pos + 1)

    def eat(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.k += 1
            return True
        return False

    def parse(self) -> Polynomial:
        p = self.expr()
        if self.tok.kind != "end":
            self.error(f"unexpected {self.tok.text!r}")
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while True:
            if self.eat("+"):
                p = p + self.term()
            elif self.eat("-"):
                p = p - self.term()
            else:
                return p

    def term(self) -> Polynomial:
        p = self.unary()
        while self.eat("*"):
            p = p * self.unary()
        return p

    def unary(self) -> Polynomial:
        if self.eat("-"):
            return -self.unary()
        if self.eat("+"):
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.eat("^"):
            tok = self.tok
            if tok.kind == "op" and tok.text == "-":
                self.error("negative exponent")
            if tok.kind != "int":
                self.error("exponent must be a nonnegative integer")
            self.k += 1
            return base ** int(tok.text)
        return base

    def atom(self) -> Polynomial:
        tok = self.tok
        if tok.kind == "int":
            self.k += 1
            value = Fraction(int(tok.text))
            if self.eat("/"):
                den = self.tok
                if den.kind != "int":
                    self.error("expected an integer denominator")
                if int(den.text) == 0:
                    self.error("zero denominator", den)
                self.k += 1
                value /= int(den.text)
            return Polynomial.const(self.arity, value)
        if tok.kind == "name":
            if tok.text not in self.index:
                self.error(f"unknown variable {tok.text!r}")
            self.k += 1
            return Polynomial.var(self.arity, self.index[tok.text])
        if self.eat("("):
            p = self.expr()
            if not self.eat(")"):
                self.error("expected ')'")
            return p
        if tok.kind == "end":
            self.error("unexpected end of input")
        self.error(f"unexpected {tok.text!r}")


def parse_polynomial(text: str, names: Sequence[str], line: int = 1) -> Polynomial:
    if not names:
        raise ValueError("a ring needs at least one variable")
    return _Parser(text, names, line).parse()


def parse_polynomials(text: str, names: Sequence[str]) -> list[Polynomial]:
    """Comma-separated list of polynomials, e.g. a map ``"x1, x2, x3 + 5"``."""
    return [parse_polynomial(part, names) for part in text.split(",")]


@dataclass(frozen=True)
class Certificate:
    """How a base-derivation property is vouched for."""

    method: str  # "PaperCertified" or "UserAsserted"
    citation: str | None = None

    def __str__(self) -> str:
        return f"certified:{self.citation}" if self.method == "PaperCertified" else "asserted"

    @classmethod
    def parse(cls, text: str) -> Certificate:
        text = text.strip()
        if text == "asserted":
            return cls("UserAsserted")
        if text.startswith("certified:") and text[len("certified:"):].strip():
            return cls("PaperCertified", text[len("certified:"):].strip())
        raise ValueError(f"expected 'asserted' or 'certified:<id>', got {text!r}")


@dataclass(frozen=True)
class BaseFlags:
    simple: Certificate | None = None
    trivial_isotropy: Certificate | bool | None = None  # False: asserted non-trivial
    cond_i: Certificate | None = None


@dataclass(frozen=True)
class DerivationSpec:
    names: tuple[str, ...]
    base: Derivation
    links: tuple[Polynomial, ...] = ()
    cap: DegreeCap = field(default_factory=DegreeCap)
    flags: BaseFlags = field(default_factory=BaseFlags)
    strict: bool = True

    @property
    def base_names(self) -> tuple[str, ...]:
        return self.names[: self.base.arity]

    def chain(self) -> ExtensionChain:
        return ExtensionChain(self.base, self.links, self.cap, self.strict)


_FLAG_KEYS = ("simple", "trivial_isotropy", "cond_i", "cap", "strict")


def parse_spec(text: str) -> DerivationSpec:
    names: list[str] | None = None
    images: dict[str, tuple[str, int]] = {}
    ext: list[tuple[str, str, int]] = []
    flags: dict[str, tuple[str, int]] = {}
    section = "images"
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if names is None:
            if not line.startswith("ring:"):
                raise ParseError("expected 'ring:' declaration", lineno)
            names = [v.strip() for v in line[len("ring:"):].split(",")]
            bad = [v for v in names if not NAME_RE.match(v)]
            if bad or not names:
                raise ParseError(f"bad variable name(s) {bad}", lineno)
            if len(set(names)) != len(names):
                raise ParseError("duplicate variable in ring declaration", lineno)
            continue
        if line in ("extend:", "flags:"):
            order = ["images", "extend:", "flags:"]
            if order.index(line) <= order.index(section):
                raise ParseError(f"misplaced section {line!r}", lineno)
            section = line
            continue
        if section == "images":
            var, sep, body = line.partition("->")
            var = var.strip()
            if not sep:
                raise ParseError("expected 'var -> polynomial'", lineno)
            if var not in names:
                raise ParseError(f"unknown variable {var!r}", lineno)
            if var in images:
                raise ParseError(f"second image line for {var!r}", lineno)
            images[var] = (body, lineno)
        elif section == "extend:":
            var, sep, body = line.partition("<-")
            var = var.strip()
            if not sep or not NAME_RE.match(var):
                raise ParseError("expected 'var <- polynomial'", lineno)
            ext.append((var, body, lineno))
        else:
            key, sep, value = line.partition(":")
            key = key.strip()
            if not sep or key not in _FLAG_KEYS:
                raise ParseError(f"unknown flag line {line!r}", lineno)
            flags[key] = (value.strip(), lineno)
    if names is None:
        raise ParseError("missing 'ring:' declaration")
    missing = [v for v in names if v not in images]
    if missing:
        raise ParseError(f"no image line for {', '.join(missing)}")
    base = Derivation(tuple(parse_polynomial(images[v][0], names, images[v][1]) for v in names))
    all_names = list(names)
    links = []
    for var, body, lineno in ext:
        if var in all_names:
            raise ParseError(f"variable {var!r} already declared", lineno)
        links.append(parse_polynomial(body, all_names, lineno))
        all_names.append(var)

    def flag(key, convert):
        if key not in flags:
            return None
        value, lineno = flags[key]
        try:
            return convert(value)
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None

    def cap_value(v: str) -> DegreeCap:
        return DegreeCap(None) if v == "inf" else DegreeCap(int(v))

    def triv_value(v: str):
        return False if v == "false" else Certificate.parse(v)

    def bool_value(v: str) -> bool:
        if v not in ("true", "false"):
            raise ValueError(f"expected true/false, got {v!r}")
        return v == "true"

    base_flags = BaseFlags(
        simple=flag("simple", Certificate.parse),
        trivial_isotropy=flag("trivial_isotropy", triv_value),
        cond_i=flag("cond_i", Certificate.parse),
    )
    strict = flag("strict", bool_value)
    return DerivationSpec(
        tuple(all_names),
        base,
        tuple(links),
        flag("cap", cap_value) or DegreeCap(),
        base_flags,
        True if strict is None else strict,
    )


def format_spec(spec: DerivationSpec) -> str:
    names = spec.names
    i = spec.base.arity
    lines = [f"ring: {', '.join(spec.base_names)}"]
    for name, h in zip(spec.base_names, spec.base.images):
        lines.append(f"{name} -> {format_poly(h, spec.base_names)}")
    if spec.links:
        lines.append("extend:")
        for t, g in enumerate(spec.links):
            lines.append(f"{names[i + t]} <- {format_poly(g, names[: i + t])}")
    flag_lines = []
    f = spec.flags
    if f.simple is not None:
        flag_lines.append(f"simple: {f.simple}")
    if f.trivial_isotropy is not None:
        flag_lines.append(f"trivial_isotropy: {'false' if f.trivial_isotropy is False else f.trivial_isotropy}")
    if f.cond_i is not None:
        flag_lines.append(f"cond_i: {f.cond_i}")
    if spec.cap.is_finite:
        flag_lines.append(f"cap: {spec.cap}")
    if not spec.strict:
        flag_lines.append("strict: false")
    if flag_lines:
        lines.append("flags:")
        lines.extend(flag_lines)
    return "\n".join(lines) + "\n"


def default_names(n: int) -> tuple[str, ...]:
    return tuple(f"x{j}" for j in range(1, n + 1))
