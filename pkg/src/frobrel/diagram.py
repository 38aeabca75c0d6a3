"""String-diagram words over a Frobenius object, read top to bottom.

Grammar (whitespace insensitive)::

    diagram := layer (';' layer)*
    layer   := factor ('*' factor)*
    factor  := gen | '(' layer ')'
    gen     := 'id' | 'swap' | 'eta' | 'eps' | 'mu' | 'delta' | 'beta' | 'alpha'

Layers are horizontal juxtapositions, ``;`` stacks them vertically.  A word
with ``k`` input wires evaluates to a relation from ``X^k`` (flattened
row-major, ``X^0`` the point) to ``X^m``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .frobenius import FrobObject
from .relation import Relation, compose, identity, product_all, swap

ARITY: dict[str, tuple[int, int]] = {
    "id": (1, 1),
    "swap": (2, 2),
    "eta": (0, 1),
    "eps": (1, 0),
    "mu": (2, 1),
    "delta": (1, 2),
    "beta": (0, 2),
    "alpha": (1, 1),
}


class DiagramError(ValueError):
    pass


class DiagramSyntaxError(DiagramError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at position {position}")


class DiagramArityError(DiagramError):
    def __init__(self, layer: int, expected: int, actual: int, message: str | None = None):
        self.layer = layer
        self.expected = expected
        self.actual = actual
        super().__init__(
            message or f"layer {layer} needs {expected} input wires but layer {layer - 1} provides {actual}"
        )


@dataclass(frozen=True)
class Generator:
    kind: str

    def __post_init__(self) -> None:
        if self.kind not in ARITY:
            raise DiagramError(f"unknown generator {self.kind!r}")

    @property
    def arity(self) -> tuple[int, int]:
        return ARITY[self.kind]


@dataclass(frozen=True)
class Diagram:
    layers: tuple[tuple[Generator, ...], ...]

    def __post_init__(self) -> None:
        if not self.layers or any(not layer for layer in self.layers):
            raise DiagramError("a diagram needs at least one nonempty layer")
        for i in range(1, len(self.layers)):
            out = _layer_arity(self.layers[i - 1])[1]
            inp = _layer_arity(self.layers[i])[0]
            if out != inp:
                raise DiagramArityError(i + 1, inp, out)

    @property
    def in_arity(self) -> int:
        return _layer_arity(self.layers[0])[0]

    @property
    def out_arity(self) -> int:
        return _layer_arity(self.layers[-1])[1]

    def render(self) -> str:
        return " ; ".join(" * ".join(g.kind for g in layer) for layer in self.layers)

    def __str__(self) -> str:
        return self.render()


def _layer_arity(layer: tuple[Generator, ...]) -> tuple[int, int]:
    return sum(g.arity[0] for g in layer), sum(g.arity[1] for g in layer)


_TOKEN = re.compile(r"\s*(?:([A-Za-z_]+)|(\*|;|\(|\)))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DiagramSyntaxError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos)
        tokens.append((m.group(1) or m.group(2), m.start(1) if m.group(1) else m.start(2)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0
        self.end = len(text)

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def pos(self) -> int:
        return self.tokens[self.i][1] if self.i < len(self.tokens) else self.end

    def take(self) -> str:
        tok = self.tokens[self.i][0]
        self.i += 1
        return tok

    def diagram(self) -> list[list[Generator]]:
        layers = [self.layer()]
        while self.peek() == ";":
            self.take()
            layers.append(self.layer())
        if self.peek() is not None:
            raise DiagramSyntaxError(f"unexpected {self.peek()!r}", self.pos())
        return layers

    def layer(self) -> list[Generator]:
        gens = self.factor()
        while self.peek() == "*":
            self.take()
            gens += self.factor()
        return gens

    def factor(self) -> list[Generator]:
        tok = self.peek()
        if tok is None:
            raise DiagramSyntaxError("unexpected end of input", self.pos())
        if tok == "(":
            self.take()
            gens = self.layer()
            if self.peek() != ")":
                raise DiagramSyntaxError("expected ')'", self.pos())
            self.take()
            return gens
        if tok in ARITY:
            self.take()
            return [Generator(tok)]
        raise DiagramSyntaxError(f"unknown token {tok!r}", self.pos())


def parse(text: str) -> Diagram:
    layers = _Parser(text).diagram()
    return Diagram(tuple(tuple(layer) for layer in layers))


def _as_diagram(d: Diagram | str) -> Diagram:
    return parse(d) if isinstance(d, str) else d


def generator_relations(f: FrobObject) -> dict[str, Relation]:
    return {
        "id": identity(f.n),
        "swap": swap(f.n),
        "eta": f.unit_relation(),
        "eps": f.counit_relation(),
        "mu": f.mul_relation(),
        "delta": f.comul_relation(),
        "beta": f.copairing_relation(),
        "alpha": f.alpha_relation(),
    }


def evaluate(d: Diagram | str, f: FrobObject, gens: dict[str, Relation] | None = None) -> Relation:
    d = _as_diagram(d)
    gens = gens or generator_relations(f)
    out = None
    for layer in d.layers:
        r = product_all([gens[g.kind] for g in layer])
        out = r if out is None else compose(out, r)
    assert out is not None
    return out


def equal_diagrams(d1: Diagram | str, d2: Diagram | str, f: FrobObject) -> bool:
    d1, d2 = _as_diagram(d1), _as_diagram(d2)
    if (d1.in_arity, d1.out_arity) != (d2.in_arity, d2.out_arity):
        raise DiagramArityError(
            0,
            d1.in_arity,
            d2.in_arity,
            f"cannot compare a {d1.in_arity}->{d1.out_arity} diagram with a {d2.in_arity}->{d2.out_arity} one",
        )
    gens = generator_relations(f)
    return evaluate(d1, f, gens) == evaluate(d2, f, gens)


def genus_word(g: int) -> str:
    """The closed surface of genus ``g``: a cap, ``g`` handles, a cup."""
    return " ; ".join(["eta"] + ["delta ; mu"] * g + ["eps"])


# (name, left, right); every Frobenius object satisfies all of these
EQUATIONS: tuple[tuple[str, str, str], ...] = (
    ("right unit", "id * eta ; mu", "id"),
    ("left unit", "eta * id ; mu", "id"),
    ("associativity", "id * mu ; mu", "mu * id ; mu"),
    ("snake (left)", "(id * beta) ; (mu * id) ; (eps * id)", "id"),
    ("snake (right)", "(beta * id) ; (id * mu) ; (id * eps)", "id"),
    ("comultiplication from copairing", "beta * id ; id * mu", "delta"),
    ("copairing", "eta ; delta", "beta"),
    ("Frobenius (left)", "delta * id ; id * mu", "mu ; delta"),
    ("Frobenius (right)", "id * delta ; mu * id", "mu ; delta"),
    ("coassociativity", "delta ; delta * id", "delta ; id * delta"),
    ("right counit", "delta ; id * eps", "id"),
    ("left counit", "delta ; eps * id", "id"),
)
