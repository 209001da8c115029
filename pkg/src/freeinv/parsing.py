"""Text grammar for polynomials and exact matrix tuples.

Polynomial grammar: terms joined by + / -; a term is an optional coefficient
(`3`, `-1/2`, `2i`, `i`, `(1+2i)`) times `*`-joined letters `x1..xg`,
`y1..`, `z1..`; `^k` repeats a letter.  Whitespace is insignificant.
Example: ``x2 - x1*x2*x1``.

Bipartite terms separate the two sides with a literal ``(x)``:
``1 (x) 1 - y2*y1 (x) 1``.

Matrix tuples are JSON arrays of matrices, each a row-major array of rows of
rational strings ("a/b" or "a/b+c/di").
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .freealg import KINDS, FreePoly, word_key, word_str
from .scalars import GaussianRational, format_scalar, scalar_needs_parens


class ParseError(ValueError):
    """Syntax error; carries 1-based line/column of the offending token."""

    def __init__(self, message, line=1, col=1):
        super().__init__(f"{message} (line {line}, col {col})")
        self.line = line
        self.col = col


_TOKEN = re.compile(
    r"\s+"
    rf"|(?P<letter>[{KINDS}]\d+)"
    r"|(?P<number>\d+)"
    r"|(?P<op>\(x\)|[ij+\-*/^()])"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            line = text.count("\n", 0, pos) + 1
            col = pos - (text.rfind("\n", 0, pos) + 1) + 1
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        if m.lastgroup is not None:
            tokens.append((m.lastgroup, m.group(), m.start()))
        pos = m.end()
    return tokens


class _Cursor:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None, len(self.text))

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def error(self, message, at=None):
        offset = self.peek()[2] if at is None else at
        line = self.text.count("\n", 0, offset) + 1
        col = offset - (self.text.rfind("\n", 0, offset) + 1) + 1
        raise ParseError(message, line, col)


def _parse_simple_scalar(cur, *, allow_sign=False):
    """INT[/INT]['i'|'j'] or bare 'i'; returns GaussianRational."""
    sign = 1
    kind, val, _ = cur.peek()
    if allow_sign and kind == "op" and val in "+-":
        cur.next()
        sign = -1 if val == "-" else 1
        kind, val, _ = cur.peek()
    if kind == "op" and val in ("i", "j"):
        cur.next()
        return GaussianRational(0, sign)
    if kind != "number":
        cur.error("expected a number")
    cur.next()
    num = Fraction(int(val))
    kind, val, _ = cur.peek()
    if kind == "op" and val == "/":
        cur.next()
        kind2, val2, _ = cur.peek()
        if kind2 != "number":
            cur.error("expected a denominator after '/'")
        cur.next()
        num /= int(val2)
    kind, val, _ = cur.peek()
    if kind == "op" and val in ("i", "j"):
        cur.next()
        return GaussianRational(0, sign * num)
    return GaussianRational(sign * num)


def _parse_coefficient(cur):
    """Leading coefficient of a term, or None when the term starts with a letter."""
    kind, val, _ = cur.peek()
    if kind == "op" and val == "(":
        cur.next()
        first = _parse_simple_scalar(cur, allow_sign=True)
        total = first
        kind, val, _ = cur.peek()
        while kind == "op" and val in "+-":
            nxt = _parse_simple_scalar(cur, allow_sign=True)
            total = total + nxt
            kind, val, _ = cur.peek()
        if not (kind == "op" and val == ")"):
            cur.error("expected ')'")
        cur.next()
        return total
    if kind == "number" or (kind == "op" and val in ("i", "j")):
        return _parse_simple_scalar(cur)
    return None


def _parse_word_factors(cur):
    """`*`-joined letters with optional ^k; returns a word (possibly empty)."""
    word = []
    while True:
        kind, val, _ = cur.peek()
        if kind != "letter":
            break
        cur.next()
        let = (val[0], int(val[1:]))
        if let[1] < 1:
            cur.error(f"letter index must be >= 1 in {val!r}")
        exponent = 1
        kind, v, _ = cur.peek()
        if kind == "op" and v == "^":
            cur.next()
            kind2, v2, _ = cur.peek()
            if kind2 != "number":
                cur.error("expected an exponent after '^'")
            cur.next()
            exponent = int(v2)
        word.extend([let] * exponent)
        kind, v, _ = cur.peek()
        if kind == "op" and v == "*":
            cur.next()
            kind2, _, _ = cur.peek()
            if kind2 != "letter":
                cur.error("expected a letter after '*'")
            continue
        break
    return tuple(word)


def _parse_term(cur):
    coeff = _parse_coefficient(cur)
    kind, val, _ = cur.peek()
    explicit_star = kind == "op" and val == "*"
    if coeff is not None and explicit_star:
        cur.next()
    word = _parse_word_factors(cur)
    if coeff is None and not word:
        cur.error("expected a term")
    if coeff is None:
        coeff = GaussianRational(1)
    return word, coeff


def parse_poly(text: str) -> FreePoly:
    cur = _Cursor(text)
    terms = {}
    sign = 1
    kind, val, _ = cur.peek()
    if kind == "op" and val in "+-":
        cur.next()
        sign = -1 if val == "-" else 1
    while True:
        word, coeff = _parse_term(cur)
        coeff = coeff * sign
        prev = terms.get(word)
        terms[word] = coeff if prev is None else prev + coeff
        kind, val, _ = cur.peek()
        if kind is None:
            break
        if kind == "op" and val in "+-":
            cur.next()
            sign = -1 if val == "-" else 1
            continue
        cur.error(f"unexpected token {val!r}")
    return FreePoly(terms)


def format_poly(f: FreePoly) -> str:
    if not f:
        return "0"
    parts = []
    for w, c in f.sorted_terms():
        body = word_str(w)
        if scalar_needs_parens(c):
            piece, sign = f"({format_scalar(c)})" + ("" if not w else f"*{body}"), "+"
        else:
            neg = (c.re or c.im) < 0
            mag = -c if neg else c
            sign = "-" if neg else "+"
            if mag == 1 and w:
                piece = body
            else:
                coeff_str = format_scalar(mag)
                piece = coeff_str if not w else f"{coeff_str}*{body}"
        if not parts:
            parts.append(piece if sign == "+" else f"-{piece}")
        else:
            parts.append(f" {sign} {piece}")
    return "".join(parts)


def parse_poly_map(strings):
    return tuple(parse_poly(s) for s in strings)


def format_poly_map(p):
    return [format_poly(comp) for comp in p]


# -- bipartite -------------------------------------------------------------


def parse_bipartite(text: str):
    """Parse sums of `u (x) v` terms into a BipartitePoly."""
    from .bipartite import BipartitePoly

    cur = _Cursor(text)
    terms = {}
    sign = 1
    kind, val, _ = cur.peek()
    if kind == "op" and val in "+-":
        cur.next()
        sign = -1 if val == "-" else 1
    while True:
        coeff = _parse_coefficient(cur)
        kind, val, _ = cur.peek()
        if coeff is not None and kind == "op" and val == "*":
            cur.next()
        left = _parse_word_factors(cur)
        kind, val, _ = cur.peek()
        if coeff is None and not left and not (kind == "op" and val == "(x)"):
            cur.error("expected a bipartite term")
        if not (kind == "op" and val == "(x)"):
            cur.error("expected '(x)' between the two sides")
        cur.next()
        kind, val, _ = cur.peek()
        if kind == "number" and val == "1":
            cur.next()
            right = ()
        else:
            right = _parse_word_factors(cur)
        if coeff is None:
            coeff = GaussianRational(1)
        coeff = coeff * sign
        key = (left, right)
        prev = terms.get(key)
        terms[key] = coeff if prev is None else prev + coeff
        kind, val, _ = cur.peek()
        if kind is None:
            break
        if kind == "op" and val in "+-":
            cur.next()
            sign = -1 if val == "-" else 1
            continue
        cur.error(f"unexpected token {val!r}")
    return BipartitePoly(terms)


def format_bipartite(b) -> str:
    if not b:
        return "0"
    parts = []
    ordered = sorted(
        b.terms(), key=lambda t: (len(t[0][0]) + len(t[0][1]), word_key(t[0][0]), word_key(t[0][1]))
    )
    for (u, v), c in ordered:
        body = f"{word_str(u)} (x) {word_str(v)}"
        if scalar_needs_parens(c):
            piece, sign = f"({format_scalar(c)})*{body}", "+"
        else:
            neg = (c.re or c.im) < 0
            mag = -c if neg else c
            sign = "-" if neg else "+"
            piece = body if mag == 1 else f"{format_scalar(mag)}*{body}"
        if not parts:
            parts.append(piece if sign == "+" else f"-{piece}")
        else:
            parts.append(f" {sign} {piece}")
    return "".join(parts)


# -- exact scalars and matrix tuples ----------------------------------------


def parse_scalar(text: str) -> GaussianRational:
    cur = _Cursor(text)
    total = _parse_simple_scalar(cur, allow_sign=True)
    kind, val, _ = cur.peek()
    while kind == "op" and val in "+-":
        total = total + _parse_simple_scalar(cur, allow_sign=True)
        kind, val, _ = cur.peek()
    if kind is not None:
        cur.error(f"unexpected token {val!r}")
    return total


def parse_matrix_tuple(text: str):
    from .mateval import MatrixTuple

    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(data, list) or not data:
        raise ParseError("expected a nonempty JSON array of matrices")
    mats = []
    for mat in data:
        rows = []
        for row in mat:
            rows.append(tuple(parse_scalar(str(entry)) for entry in row))
        mats.append(tuple(rows))
    n = len(mats[0])
    for mat in mats:
        if len(mat) != n or any(len(row) != n for row in mat):
            raise ParseError("matrices must be square and of a common size")
    return MatrixTuple(n, tuple(mats))


def format_matrix_tuple(X) -> str:
    data = [[[format_scalar(entry) for entry in row] for row in mat] for mat in X.mats]
    return json.dumps(data)


def format_matrix(mat) -> list:
    return [[format_scalar(entry) for entry in row] for row in mat]
