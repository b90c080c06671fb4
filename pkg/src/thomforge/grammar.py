"""Presentation files: the line-based text grammar and its JSON mirror.

Text grammar (whitespace-insensitive inside expressions, one statement per
line, ``#`` starts a comment):

    truncate <N>
    gen <name> : <degree> [weight <int>] [type (<i>,<j>)]
    d <name> = <expression>

Expressions are rational-coefficient polynomials over the declared generators
with ``+ - * / ^`` and parentheses; ``/`` takes an integer literal on the
right.  The JSON mirror carries the same data:

    {"schema": "thomforge/1", "truncate": N,
     "generators": [{"name": ..., "degree": ..., "weight": ..., "type": [i, j]}],
     "differentials": {name: "expression"}}
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .algebra import CdgaPresentation, Element, Generator
from .errors import ParseError, ValidationError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([()+\-*/^:=,]))")


def _tokenize(text, line_no=None):
    tokens = []
    pos = 0
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", line_no, bad + 1)
        number, name, sym = m.group(1), m.group(2), m.group(3)
        if number is not None:
            tokens.append(("num", int(number), m.start(1) + 1))
        elif name is not None:
            tokens.append(("name", name, m.start(2) + 1))
        else:
            tokens.append(("sym", sym, m.start(3) + 1))
        pos = m.end()
    return tokens


class _ExprParser:
    """Recursive descent over the token list; produces formal terms.

    A formal term is (coefficient, [(generator, exponent), ...]) before any
    square-zero or truncation collapsing, so that degree checks can reject
    ill-graded input even when its canonical value happens to be zero.
    """

    def __init__(self, tokens, line_no=None):
        self.tokens = tokens
        self.i = 0
        self.line_no = line_no

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        col = (tok or self.peek())[2]
        raise ParseError(msg, self.line_no, col)

    def parse(self):
        terms = self.sum_()
        if self.i != len(self.tokens):
            self.fail("trailing input after expression")
        return terms

    def sum_(self):
        terms = []
        sign = 1
        kind, val, _ = self.peek()
        if kind == "sym" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        terms.extend(_scale_terms(self.product(), sign))
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val in "+-":
                self.take()
                s = -1 if val == "-" else 1
                terms.extend(_scale_terms(self.product(), s))
            else:
                return terms

    def product(self):
        terms = self.power()
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val == "*":
                self.take()
                terms = _mul_terms(terms, self.power())
            elif kind == "sym" and val == "/":
                self.take()
                tok = self.take()
                if tok[0] != "num" or tok[1] == 0:
                    self.fail("'/' needs a nonzero integer literal", tok)
                terms = _scale_terms(terms, Fraction(1, tok[1]))
            else:
                return terms

    def power(self):
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "sym" and val == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.fail("'^' needs a nonnegative integer exponent", tok)
            out = [(Fraction(1), [])]
            for _ in range(tok[1]):
                out = _mul_terms(out, base)
            return out
        return base

    def atom(self):
        kind, val, col = self.take()
        if kind == "num":
            return [(Fraction(val), [])]
        if kind == "name":
            return [(Fraction(1), [(val, 1)])]
        if kind == "sym" and val == "(":
            inner = self.sum_()
            tok = self.take()
            if tok[0] != "sym" or tok[1] != ")":
                self.fail("unbalanced parenthesis", tok)
            return inner
        if kind == "sym" and val == "-":
            return _scale_terms(self.atom(), -1)
        raise ParseError("expected a number, generator, or '('", self.line_no, col)


def _scale_terms(terms, c):
    c = Fraction(c)
    return [(c * q, f) for q, f in terms]


def _mul_terms(a, b):
    return [(qa * qb, fa + fb) for qa, fa in a for qb, fb in b]


def parse_expression(text, presentation, line_no=None):
    """Parse an expression over a presentation.

    Returns (element, formal_degrees) where formal_degrees is the set of
    degrees of the expanded formal terms, before canonical collapsing.
    """
    tokens = _tokenize(text, line_no)
    if not tokens:
        raise ParseError("empty expression", line_no)
    terms = _ExprParser(tokens, line_no).parse()
    element = presentation.zero()
    degrees = set()
    for coeff, factors in terms:
        if not coeff:
            continue
        deg = 0
        for name, exp in factors:
            deg += exp * presentation.generator(name).degree
        if factors or coeff:
            degrees.add(deg)
        sign, powers = presentation.monomial_from_factors(factors)
        if sign and powers is not None:
            element = element + Element(presentation, {powers: sign * coeff})
    return element, degrees


_GEN_LINE = re.compile(
    r"^gen\s+([A-Za-z_][A-Za-z0-9_]*)\s*:\s*(\d+)"
    r"(?:\s+weight\s+(-?\d+))?"
    r"(?:\s+type\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\))?\s*$"
)


def parse_presentation(text, truncation_degree=None):
    """Parse a presentation from text or from its JSON mirror."""
    if text.lstrip().startswith("{"):
        return _from_json(json.loads(text), truncation_degree)
    gens = []
    diffs = []
    truncate = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("truncate"):
            m = re.match(r"^truncate\s+(\d+)\s*$", line)
            if not m:
                raise ParseError("bad truncate line", line_no)
            truncate = int(m.group(1))
        elif line.startswith("gen"):
            m = _GEN_LINE.match(line)
            if not m:
                raise ParseError("bad generator line (gen <name> : <degree> [weight w] [type (i,j)])", line_no)
            name, degree, weight, ti, tj = m.groups()
            htype = (int(ti), int(tj)) if ti is not None else None
            gens.append(Generator(name, int(degree), int(weight) if weight else None, htype))
        elif line.startswith("d"):
            m = re.match(r"^d\s+([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.+)$", line)
            if not m:
                raise ParseError("bad differential line (d <name> = <expr>)", line_no)
            diffs.append((line_no, m.group(1), m.group(2)))
        else:
            raise ParseError(f"unrecognized statement {line.split()[0]!r}", line_no)
    if truncation_degree is not None:
        truncate = truncation_degree
    if truncate is None:
        raise ParseError("no 'truncate <N>' line and no truncation override given")
    pres = CdgaPresentation(gens, truncate)
    for line_no, name, expr in diffs:
        target = pres.generator(name)
        element, degrees = parse_expression(expr, pres, line_no)
        bad = {d for d in degrees if d != target.degree + 1}
        if bad:
            raise ValidationError(
                "degree_mismatch",
                f"d({name}) contains terms of degree {sorted(bad)}; expected {target.degree + 1}",
            )
        pres.set_differential(name, element)
    return pres.finalize()


def _from_json(data, truncation_degree=None):
    gens = []
    for g in data.get("generators", []):
        htype = tuple(g["type"]) if g.get("type") is not None else None
        gens.append(Generator(g["name"], int(g["degree"]), g.get("weight"), htype))
    truncate = truncation_degree if truncation_degree is not None else data.get("truncate")
    if truncate is None:
        raise ParseError("JSON presentation lacks a 'truncate' field")
    pres = CdgaPresentation(gens, int(truncate))
    for name, expr in sorted(data.get("differentials", {}).items()):
        target = pres.generator(name)
        element, degrees = parse_expression(expr, pres)
        bad = {d for d in degrees if d != target.degree + 1}
        if bad:
            raise ValidationError(
                "degree_mismatch",
                f"d({name}) contains terms of degree {sorted(bad)}; expected {target.degree + 1}",
            )
        pres.set_differential(name, element)
    return pres.finalize()


def make_cdga(spec, truncation_degree=None):
    """Build a validated presentation from text or JSON input."""
    return parse_presentation(spec, truncation_degree)


def presentation_to_text(pres):
    lines = [f"truncate {pres.truncation_degree}"]
    for g in pres.generators:
        bits = [f"gen {g.name} : {g.degree}"]
        if g.hodge_type is not None:
            bits.append(f"type ({g.hodge_type[0]},{g.hodge_type[1]})")
        elif g.weight is not None:
            bits.append(f"weight {g.weight}")
        lines.append(" ".join(bits))
    for g in pres.generators:
        dg = pres.differential_of(g.name)
        if not dg.is_zero():
            lines.append(f"d {g.name} = {dg}")
    return "\n".join(lines) + "\n"


def presentation_to_json(pres):
    gens = []
    for g in pres.generators:
        entry = {"name": g.name, "degree": g.degree}
        if g.weight is not None:
            entry["weight"] = g.weight
        if g.hodge_type is not None:
            entry["type"] = list(g.hodge_type)
        gens.append(entry)
    diffs = {
        g.name: str(pres.differential_of(g.name))
        for g in pres.generators
        if not pres.differential_of(g.name).is_zero()
    }
    return {
        "schema": "thomforge/1",
        "truncate": pres.truncation_degree,
        "generators": gens,
        "differentials": diffs,
    }
