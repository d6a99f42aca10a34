"""Applicative terms over S, K, numerals and primitives.

Terms are immutable and hash-consed only by value: two structurally equal
terms compare equal and hash alike.  ``App`` nodes cache their hash, so
equality on large decoded programs stays cheap.

Canonical text syntax::

    S K 3 succ (S K K) v0

Application is juxtaposition and associates to the left; ``vN`` is the
variable with index N (only meaningful before abstraction).
"""

from __future__ import annotations

import re
from typing import Iterator

__all__ = [
    "Term", "Comb", "Prim", "Num", "Var", "App", "K", "S", "PRIMS", "PRIM_ARITY",
    "app", "spine", "is_closed", "free_vars", "substitute", "is_value", "size",
    "to_text", "parse", "ParseError",
]

TAG_K, TAG_S, TAG_PRIM, TAG_NUM, TAG_VAR, TAG_APP = range(6)

# Order matters: the codec numbers atoms in this order.
PRIM_ARITY = {
    "succ": 1,
    "pred": 1,
    "ifz": 3,
    "pair": 2,
    "fst": 1,
    "snd": 1,
    "qapp": 2,
    "qnum": 1,
    "clock": 3,
    "race": 4,
    "iter": 3,
}


class Term:
    __slots__ = ()
    tag = -1

    def __str__(self) -> str:
        return to_text(self)

    def __call__(self, *args: "Term | int") -> "Term":
        return app(self, *args)


class Comb(Term):
    """One of the two basic combinators; use the singletons ``K`` and ``S``."""

    __slots__ = ("name", "tag")

    def __init__(self, name: str, tag: int):
        self.name = name
        self.tag = tag

    def __repr__(self) -> str:
        return self.name

    def __reduce__(self):
        return (_comb, (self.name,))


def _comb(name: str) -> Comb:
    return K if name == "K" else S


K = Comb("K", TAG_K)
S = Comb("S", TAG_S)


class Prim(Term):
    __slots__ = ("op", "arity", "index")
    tag = TAG_PRIM
    _interned: dict[str, "Prim"] = {}

    def __new__(cls, op: str) -> "Prim":
        try:
            return cls._interned[op]
        except KeyError:
            pass
        if op not in PRIM_ARITY:
            raise ValueError(f"unknown primitive {op!r}")
        self = object.__new__(cls)
        self.op = op
        self.arity = PRIM_ARITY[op]
        self.index = list(PRIM_ARITY).index(op)
        cls._interned[op] = self
        return self

    def __repr__(self) -> str:
        return f"Prim({self.op!r})"

    def __reduce__(self):
        return (Prim, (self.op,))


PRIMS = {op: Prim(op) for op in PRIM_ARITY}


class Num(Term):
    __slots__ = ("n",)
    tag = TAG_NUM

    def __init__(self, n: int):
        if n < 0:
            raise ValueError("numerals are natural numbers")
        self.n = n

    def __eq__(self, other):
        return type(other) is Num and other.n == self.n

    def __hash__(self):
        return hash((TAG_NUM, self.n))

    def __repr__(self) -> str:
        return f"Num({self.n})"


class Var(Term):
    __slots__ = ("i",)
    tag = TAG_VAR

    def __init__(self, i: int):
        self.i = i

    def __eq__(self, other):
        return type(other) is Var and other.i == self.i

    def __hash__(self):
        return hash((TAG_VAR, self.i))

    def __repr__(self) -> str:
        return f"Var({self.i})"


class App(Term):
    __slots__ = ("fun", "arg", "_hash")
    tag = TAG_APP

    def __init__(self, fun: Term, arg: Term):
        self.fun = fun
        self.arg = arg
        self._hash = hash((TAG_APP, fun.__hash__(), arg.__hash__()))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if type(other) is not App or other._hash != self._hash:
            return False
        # iterative: decoded programs can be deep
        stack = [(self, other)]
        while stack:
            a, b = stack.pop()
            if a is b:
                continue
            if type(a) is App:
                if type(b) is not App or a._hash != b._hash:
                    return False
                stack.append((a.arg, b.arg))
                stack.append((a.fun, b.fun))
            elif a != b:
                return False
        return True

    def __repr__(self) -> str:
        return f"App({self.fun!r}, {self.arg!r})"


def _coerce(x: Term | int) -> Term:
    return Num(x) if isinstance(x, int) else x


def app(f: Term | int, *args: Term | int) -> Term:
    """Left-associated application ``f a1 ... an``; ints become numerals."""
    t = _coerce(f)
    for a in args:
        t = App(t, _coerce(a))
    return t


def spine(t: Term) -> tuple[Term, list[Term]]:
    """Split ``h a1 ... an`` into ``(h, [a1, ..., an])``."""
    args = []
    while type(t) is App:
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


def _walk(t: Term) -> Iterator[Term]:
    stack = [t]
    while stack:
        u = stack.pop()
        yield u
        if type(u) is App:
            stack.append(u.arg)
            stack.append(u.fun)


def free_vars(t: Term) -> set[int]:
    return {u.i for u in _walk(t) if type(u) is Var}


def is_closed(t: Term) -> bool:
    return not any(type(u) is Var for u in _walk(t))


def size(t: Term) -> int:
    """Number of nodes."""
    return sum(1 for _ in _walk(t))


def substitute(t: Term, env: dict[int, Term]) -> Term:
    if type(t) is Var:
        return env.get(t.i, t)
    if type(t) is not App:
        return t
    f = substitute(t.fun, env)
    a = substitute(t.arg, env)
    if f is t.fun and a is t.arg:
        return t
    return App(f, a)


def _arity(h: Term) -> int:
    if h is K:
        return 2
    if h is S:
        return 3
    if type(h) is Prim:
        return h.arity
    return 0


def is_value(t: Term) -> bool:
    """True for closed weak normal forms: atoms and unsaturated partial applications."""
    h, args = spine(t)
    if type(h) is Var:
        return False
    if not args:
        return True
    if len(args) >= _arity(h):
        return False
    return all(is_value(a) for a in args)


# -- text syntax -----------------------------------------------------------

def to_text(t: Term) -> str:
    out: list[str] = []

    def emit(u: Term, wrap: bool) -> None:
        h, args = spine(u)
        if args and wrap:
            out.append("(")
        if type(h) is Comb:
            out.append(h.name)
        elif type(h) is Prim:
            out.append(h.op)
        elif type(h) is Num:
            out.append(str(h.n))
        elif type(h) is Var:
            out.append(f"v{h.i}")
        for a in args:
            out.append(" ")
            emit(a, True)
        if args and wrap:
            out.append(")")

    emit(t, False)
    return "".join(out)


class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\()|(\))|(\d+)|([A-Za-z_][A-Za-z0-9_]*))")


def _tokens(src: str) -> list[str]:
    toks = []
    pos = 0
    src = src.rstrip()
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {src[pos:pos + 10]!r}")
        toks.append(m.group(m.lastindex))
        pos = m.end()
    return toks


def _atom(tok: str) -> Term:
    if tok == "K":
        return K
    if tok == "S":
        return S
    if tok.isdigit():
        return Num(int(tok))
    if tok in PRIMS:
        return PRIMS[tok]
    if re.fullmatch(r"v\d+", tok):
        return Var(int(tok[1:]))
    raise ParseError(f"unknown token {tok!r}")


def parse(src: str) -> Term:
    """Parse the canonical syntax; inverse of :func:`to_text`."""
    toks = _tokens(src)
    if not toks:
        raise ParseError("empty term")
    stack: list[Term | None] = [None]
    for tok in toks:
        if tok == "(":
            stack.append(None)
            continue
        if tok == ")":
            if len(stack) < 2 or stack[-1] is None:
                raise ParseError("unbalanced or empty parentheses")
            u = stack.pop()
        else:
            u = _atom(tok)
        top = stack[-1]
        stack[-1] = u if top is None else App(top, u)
    if len(stack) != 1 or stack[0] is None:
        raise ParseError("unbalanced parentheses")
    return stack[0]
