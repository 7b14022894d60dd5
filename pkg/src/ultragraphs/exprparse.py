"""Parser for the textual expression language over a generator context.

Grammar:
    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := scalar | generator | factor "'" | '(' expr ')'
    generator := 's_' id ['.' index] | 'p{' labels '}' | 'q{' labels '}'
    scalar := rational ['+' rational 'i'] | rational 'i' | 'i'

The postfix "'" is the adjoint.  Inside braces a trailing "'" belongs to the
vertex label (primed quotient vertices); everywhere else it is the operator.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import DocumentError, ValidationError
from .scalars import Scalar
from .symbolic import edge_gen, projection

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([-+*/(){},.'])|(\S))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        if m.group(4):
            raise DocumentError(f"unexpected character {m.group(4)!r}",
                                position=m.start(4))
        if m.group(1):
            tokens.append(("num", m.group(1), m.start(1)))
        elif m.group(2):
            tokens.append(("ident", m.group(2), m.start(2)))
        else:
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ctx):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.ctx = ctx

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, value):
        kind, text, at = self.next()
        if text != value:
            raise DocumentError(f"expected {value!r}, found {text or 'end'!r}",
                                position=at)

    def fail(self, message):
        _, text, at = self.peek()
        raise DocumentError(f"{message} (at {text or 'end'!r})", position=at)

    # factors evaluate to ("scalar", Scalar) or ("elem", SymbolicElement)

    def parse(self):
        value = self.expr()
        kind, text, at = self.peek()
        if kind != "end":
            raise DocumentError(f"trailing input {text!r}", position=at)
        if value[0] == "scalar":
            raise DocumentError("a bare scalar is not an element "
                                "(multiply it by a generator)", position=0)
        return value[1]

    def expr(self):
        out = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.next()[1]
            rhs = self.term()
            if out[0] != rhs[0]:
                self.fail("cannot add a scalar to an element")
            if out[0] == "scalar":
                out = ("scalar", out[1] + rhs[1] if op == "+"
                       else out[1] - rhs[1])
            else:
                out = ("elem", out[1] + rhs[1] if op == "+"
                       else out[1] - rhs[1])
        return out

    def term(self):
        out = self.factor()
        while self.peek()[1] == "*":
            self.next()
            rhs = self.factor()
            out = self._combine(out, rhs)
        return out

    @staticmethod
    def _combine(a, b):
        if a[0] == "scalar" and b[0] == "scalar":
            return ("scalar", a[1] * b[1])
        if a[0] == "scalar":
            return ("elem", b[1].scale(a[1]))
        if b[0] == "scalar":
            return ("elem", a[1].scale(b[1]))
        return ("elem", a[1] * b[1])

    def factor(self):
        out = self.atom_factor()
        while self.peek()[1] == "'":
            self.next()
            if out[0] == "scalar":
                out = ("scalar", out[1].conjugate())
            else:
                out = ("elem", out[1].adjoint())
        return out

    def atom_factor(self):
        kind, text, at = self.peek()
        if text == "(":
            self.next()
            out = self.expr()
            self.expect(")")
            return out
        if text == "-":
            self.next()
            inner = self.factor()
            return ("scalar", -inner[1]) if inner[0] == "scalar" \
                else ("elem", -inner[1])
        if kind == "num":
            return ("scalar", self.scalar())
        if kind == "ident":
            if text == "i":
                self.next()
                return ("scalar", Scalar(Fraction(0), Fraction(1)))
            if text.startswith("s_") and len(text) > 2:
                self.next()
                eid = text[2:]
                idx = 0
                if self.peek()[1] == ".":
                    self.next()
                    nkind, ntext, nat = self.next()
                    if nkind != "num":
                        raise DocumentError("instance index must be a number",
                                            position=nat)
                    idx = int(ntext)
                try:
                    return ("elem", edge_gen(self.ctx, (eid, idx)))
                except ValidationError as exc:
                    raise DocumentError(str(exc), position=at) from None
            if text in ("p", "q"):
                self.next()
                self.expect("{")
                labels = self.label_list()
                self.expect("}")
                try:
                    return ("elem", projection(self.ctx, labels))
                except ValidationError as exc:
                    raise DocumentError(str(exc), position=at) from None
        self.fail("expected a scalar, generator, or parenthesized expression")

    def label_list(self):
        labels = []
        if self.peek()[1] == "}":
            return labels
        while True:
            kind, text, at = self.next()
            if kind not in ("ident", "num"):
                raise DocumentError("expected a vertex label", position=at)
            if self.peek()[1] == "'":
                self.next()
                text += "'"
            labels.append(text)
            if self.peek()[1] != ",":
                return labels
            self.next()

    def rational(self):
        kind, text, at = self.next()
        if kind != "num":
            raise DocumentError("expected a number", position=at)
        value = Fraction(int(text))
        if self.peek()[1] == "/":
            self.next()
            dkind, dtext, dat = self.next()
            if dkind != "num" or int(dtext) == 0:
                raise DocumentError("bad denominator", position=dat)
            value /= int(dtext)
        return value

    def scalar(self):
        re_part = self.rational()
        if self.peek()[:2] == ("ident", "i"):
            self.next()
            return Scalar(Fraction(0), re_part)
        if self.peek()[1] == "+":
            save = self.pos
            self.next()
            try:
                im_part = self.rational()
            except DocumentError:
                self.pos = save
                return Scalar(re_part)
            if self.peek()[:2] == ("ident", "i"):
                self.next()
                return Scalar(re_part, im_part)
            self.pos = save
        return Scalar(re_part)


def parse_expression(text, ctx):
    """Parse an expression into an element over the given context."""
    return _Parser(text, ctx).parse()
