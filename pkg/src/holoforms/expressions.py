"""Parsers for spinor and form expressions.

Both grammars share one tokenizer and a small recursive-descent parser::

    expr   := term (('+' | '-') term)*
    term   := ['-'|'+'] factor (['*'] factor)*
    factor := rational | 'i' | basis | '(' expr ')'

Spinor basis elements are ``e`` followed by strictly increasing digits in
``1..k``; a bare number stands for a multiple of the empty subset ``1``.

Form basis elements are ``e`` followed by index labels: transverse digits,
or, in lightcone frames, the prefixes ``em`` (e^-) and ``ep`` (e^+), as in
``em12`` or ``emp`` for e^- ^ e^+.  Labels above 9 use the comma form
``e(1,2,10)``, which the printer also emits.  Coefficients may be complex,
written in parentheses such as ``(1/2+i)*e12``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .clifford import Spinor, SpinorModel, subset_mask
from .exterior import FrameContext, Form, MINUS, PLUS, accumulate
from .scalar import Scalar


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        self.message = message
        super().__init__(f"{message} at position {pos}")

    def __str__(self):
        caret = " " * self.pos + "^"
        return f"{self.message} at position {self.pos}\n  {self.text}\n  {caret}"


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\s*/\s*\d+)?)|(?P<basis>e(?:\([^)]*\)|[mp0-9]*))|(?P<i>i)|(?P<op>[-+*()]))"
)


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, basis_fn):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.basis_fn = basis_fn

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def parse(self) -> Dict[tuple, Scalar]:
        if self.peek()[0] == "end":
            self.error("empty expression")
        val = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return val

    def expr(self):
        acc = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term(signed=False)
            for k, v in rhs.items():
                accumulate(acc, k, v if op == "+" else -v)
        return acc

    def term(self, signed=True):
        sign = 1
        if signed:
            while self.peek()[0] == "op" and self.peek()[1] in "+-":
                if self.take()[1] == "-":
                    sign = -sign
        val = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                rhs = self.factor()
            elif tok[0] in ("num", "basis", "i") or (tok[0] == "op" and tok[1] == "("):
                rhs = self.factor()
            else:
                break
            val = self.multiply(val, rhs, tok)
        if sign < 0:
            val = {k: -v for k, v in val.items()}
        return val

    def multiply(self, a, b, tok):
        a_scalar = set(a) <= {()}
        b_scalar = set(b) <= {()}
        if not (a_scalar or b_scalar):
            self.error("product of two basis elements is not allowed", tok)
        if a_scalar:
            c = a.get((), Scalar(0))
            return {k: v * c for k, v in b.items() if v * c}
        c = b.get((), Scalar(0))
        return {k: v * c for k, v in a.items() if v * c}

    def factor(self):
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            num, _, den = val.replace(" ", "").partition("/")
            if den and int(den) == 0:
                raise ParseError("zero denominator", self.text, pos)
            q = Fraction(int(num), int(den) if den else 1)
            return {(): Scalar(q)} if q else {}
        if kind == "i":
            return {(): Scalar(0, 1)}
        if kind == "basis":
            key = self.basis_fn(val, pos, self.text)
            return {key: Scalar(1)}
        if kind == "op" and val == "(":
            inner = self.expr()
            close = self.take()
            if close[0] != "op" or close[1] != ")":
                raise ParseError("expected ')'", self.text, close[2])
            return inner
        if kind == "end":
            raise ParseError("unexpected end of expression", self.text, pos)
        raise ParseError(f"unexpected {val!r}", self.text, pos)


# ---------------------------------------------------------------------------


def parse_spinor(text: str, model: SpinorModel) -> Spinor:
    def basis(tok: str, pos: int, src: str):
        body = tok[1:]
        if not body or not body.isdigit():
            raise ParseError(f"bad spinor basis element {tok!r}", src, pos)
        digits = [int(ch) for ch in body]
        for n, d in enumerate(digits):
            if not 1 <= d <= model.k:
                raise ParseError(f"index {d} out of range 1..{model.k}", src, pos + 1 + n)
            if n and d <= digits[n - 1]:
                raise ParseError("indices must be strictly increasing", src, pos + 1 + n)
        return tuple(digits)

    terms = _Parser(text, basis).parse()
    return Spinor(model, {subset_mask(k, model): v for k, v in terms.items()})


def _form_labels(tok: str, pos: int, src: str) -> List[Tuple[str, int]]:
    body = tok[1:]
    if body.startswith("("):
        inner = body[1:-1]
        labels = []
        offset = pos + 2
        for part in inner.split(","):
            lab = part.strip()
            if not lab:
                raise ParseError("empty index label", src, offset)
            labels.append((lab, offset))
            offset += len(part) + 1
        return labels
    labels = []
    for n, ch in enumerate(body):
        labels.append((ch, pos + 1 + n))
    return labels


def parse_form(text: str, frame: FrameContext, degree: Optional[int] = None) -> Form:
    def basis(tok: str, pos: int, src: str):
        labels = _form_labels(tok, pos, src)
        if not labels:
            raise ParseError("basis element without indices", src, pos)
        idx = []
        for lab, p in labels:
            if lab in ("m", "p"):
                if not frame.is_lightcone:
                    raise ParseError(f"'{lab}' index needs a lightcone frame", src, p)
                a = MINUS if lab == "m" else PLUS
            elif lab.isdigit():
                try:
                    a = frame.transverse_index(int(lab))
                except IndexError:
                    raise ParseError(f"index {lab} out of range for {frame.describe()}", src, p) from None
            else:
                raise ParseError(f"bad index label {lab!r}", src, p)
            if idx and a <= idx[-1]:
                raise ParseError("indices must be strictly increasing", src, p)
            idx.append(a)
        return tuple(idx)

    terms = _Parser(text, basis).parse()
    degrees = {len(k) for k in terms}
    if len(degrees) > 1:
        raise ParseError("mixed-degree expression", text, 0)
    if degrees:
        d = degrees.pop()
        if degree is not None and d != degree:
            raise ParseError(f"expected a {degree}-form, got degree {d}", text, 0)
    else:
        d = degree if degree is not None else 0
    return Form(frame, d, terms)


def parse_spinor_list(text: str, model: SpinorModel) -> List[Spinor]:
    parts = []
    depth = 0
    cur = ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in ";," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [parse_spinor(p, model) for p in parts if p.strip()]
