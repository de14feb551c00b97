"""Ring construction expressions and their text grammar.

Grammar (whitespace-insensitive, decimal integers)::

    expr := Zn(n) | M(k, expr) | Prod(expr, ...) | Quot(expr, [i, ...])
          | TrivExt(expr) | T(k, expr) | Skew(n)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import InvalidExpr


@dataclass(frozen=True)
class Zn:
    n: int

    def __str__(self) -> str:
        return f"Zn({self.n})"


@dataclass(frozen=True)
class Matrix:
    base: "RingExpr"
    k: int

    def __str__(self) -> str:
        return f"M({self.k},{self.base})"


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __str__(self) -> str:
        return "Prod(" + ",".join(str(f) for f in self.factors) + ")"


@dataclass(frozen=True)
class Quotient:
    base: "RingExpr"
    generators: tuple

    def __str__(self) -> str:
        return f"Quot({self.base},[" + ",".join(str(g) for g in self.generators) + "])"


@dataclass(frozen=True)
class TrivExt:
    base: "RingExpr"

    def __str__(self) -> str:
        return f"TrivExt({self.base})"


@dataclass(frozen=True)
class Triangular:
    base: "RingExpr"
    k: int

    def __str__(self) -> str:
        return f"T({self.k},{self.base})"


@dataclass(frozen=True)
class Skew:
    """Zn[t]/(t^2) extended by x with x^2 = 0 and x r = sigma(r) x, sigma(a+bt) = a."""

    n: int

    def __str__(self) -> str:
        return f"Skew({self.n})"


RingExpr = Union[Zn, Matrix, Product, Quotient, TrivExt, Triangular, Skew]


def validate(expr: RingExpr) -> None:
    """Raise InvalidExpr for out-of-range parameters (generator indices are checked at build)."""
    if isinstance(expr, Zn):
        if expr.n < 1:
            raise InvalidExpr(f"Zn needs n >= 1, got {expr.n}")
    elif isinstance(expr, Matrix):
        if expr.k < 1:
            raise InvalidExpr(f"matrix size must be >= 1, got {expr.k}")
        validate(expr.base)
    elif isinstance(expr, Product):
        if len(expr.factors) < 1:
            raise InvalidExpr("Prod needs at least one factor")
        for f in expr.factors:
            validate(f)
    elif isinstance(expr, Quotient):
        if any(g < 0 for g in expr.generators):
            raise InvalidExpr("negative generator index")
        validate(expr.base)
    elif isinstance(expr, TrivExt):
        validate(expr.base)
    elif isinstance(expr, Triangular):
        if expr.k < 2:
            raise InvalidExpr(f"triangular size must be >= 2, got {expr.k}")
        validate(expr.base)
    elif isinstance(expr, Skew):
        if expr.n < 2:
            raise InvalidExpr(f"Skew needs n >= 2, got {expr.n}")
    else:
        raise InvalidExpr(f"not a ring expression: {expr!r}")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]+)|(.))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        for m in _TOKEN.finditer(text):
            num, word, sym = m.groups()
            if num is not None:
                self.tokens.append(("int", int(num)))
            elif word is not None:
                self.tokens.append(("word", word))
            elif sym is not None and not sym.isspace():
                self.tokens.append(("sym", sym))
        self.pos = 0

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else ("eof", None)

    def _take(self, kind, value=None):
        tok = self._peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            raise InvalidExpr(f"expected {want!r} at token {self.pos} in {self.text!r}, got {tok[1]!r}")
        self.pos += 1
        return tok[1]

    def _int(self) -> int:
        return self._take("int")

    def expr(self) -> RingExpr:
        name = self._take("word")
        self._take("sym", "(")
        if name == "Zn":
            node = Zn(self._int())
        elif name == "Skew":
            node = Skew(self._int())
        elif name in ("M", "T"):
            k = self._int()
            self._take("sym", ",")
            base = self.expr()
            node = Matrix(base, k) if name == "M" else Triangular(base, k)
        elif name == "Prod":
            factors = [self.expr()]
            while self._peek() == ("sym", ","):
                self.pos += 1
                factors.append(self.expr())
            node = Product(tuple(factors))
        elif name == "Quot":
            base = self.expr()
            self._take("sym", ",")
            self._take("sym", "[")
            gens = []
            if self._peek() != ("sym", "]"):
                gens.append(self._int())
                while self._peek() == ("sym", ","):
                    self.pos += 1
                    gens.append(self._int())
            self._take("sym", "]")
            node = Quotient(base, tuple(gens))
        elif name == "TrivExt":
            node = TrivExt(self.expr())
        else:
            raise InvalidExpr(f"unknown constructor {name!r}")
        self._take("sym", ")")
        return node


def parse(text: str) -> RingExpr:
    """Parse expression text such as ``"Prod(Zn(4),Zn(3))"``."""
    p = _Parser(text)
    node = p.expr()
    if p.pos != len(p.tokens):
        raise InvalidExpr(f"trailing input in {text!r}")
    validate(node)
    return node
