"""Goedel numbering of closed terms.

The numbering is a bijection between the naturals and closed terms:

* codes ``0 .. NATOMS-1`` are the atoms ``K, S`` followed by the primitives
  in :data:`pcalab.terms.PRIM_ARITY` order;
* for ``c >= NATOMS`` let ``r = c - NATOMS``; even ``r`` is the numeral
  ``r // 2``, odd ``r`` is ``App(f, a)`` with ``(f, a) = unpair_len(r // 2)``.

``pair_len`` is a length-graded pairing: pairs are ordered first by the
total bijective-binary length of their components.  Unlike Cantor pairing
its output has about ``bits(x) + bits(y) + log`` bits, so codes grow
linearly with term size instead of doubling per nesting level.
"""

from __future__ import annotations

from functools import lru_cache

from .terms import PRIM_ARITY, PRIMS, App, Comb, K, Num, S, Term, Var

__all__ = [
    "NATOMS", "encode", "decode", "code_app", "code_num", "pair_len", "unpair_len",
    "cantor_pair", "cantor_unpair",
]

_ATOMS: list[Term] = [K, S] + [PRIMS[op] for op in PRIM_ARITY]
NATOMS = len(_ATOMS)


def _group_offset(b: int) -> int:
    # number of pairs whose total length is < b: sum_{c<b} (c+1) 2^c
    return (b - 1) * (1 << b) + 1 if b else 0


def pair_len(x: int, y: int) -> int:
    lx = (x + 1).bit_length() - 1
    ly = (y + 1).bit_length() - 1
    px = x + 1 - (1 << lx)
    py = y + 1 - (1 << ly)
    b = lx + ly
    return _group_offset(b) + (lx << b) + ((px << ly) | py)


def unpair_len(z: int) -> tuple[int, int]:
    # b*2^b is within a factor of ~b of z; start near bit_length and adjust
    b = max(0, z.bit_length() - max(1, z.bit_length().bit_length()))
    while b > 0 and _group_offset(b) > z:
        b -= 1
    while _group_offset(b + 1) <= z:
        b += 1
    idx = z - _group_offset(b)
    lx = idx >> b
    rest = idx & ((1 << b) - 1)
    ly = b - lx
    px = rest >> ly
    py = rest & ((1 << ly) - 1)
    return (1 << lx) - 1 + px, (1 << ly) - 1 + py


def cantor_pair(x: int, y: int) -> int:
    s = x + y
    return s * (s + 1) // 2 + y


def cantor_unpair(z: int) -> tuple[int, int]:
    from math import isqrt

    w = (isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


def code_app(cf: int, ca: int) -> int:
    """Code of ``App(decode(cf), decode(ca))`` without decoding."""
    return NATOMS + 2 * pair_len(cf, ca) + 1


def code_num(n: int) -> int:
    """Code of the numeral ``n``."""
    return NATOMS + 2 * n


def _atom_code(t: Term) -> int:
    if type(t) is Comb:
        return 0 if t is K else 1
    return 2 + t.index


def encode(t: Term) -> int:
    """Code of a closed term.  Raises ``ValueError`` on open terms."""
    # post-order over an explicit stack
    out: list[int] = []
    stack: list[tuple[Term, bool]] = [(t, False)]
    while stack:
        u, seen = stack.pop()
        tp = type(u)
        if tp is App:
            if seen:
                ca = out.pop()
                cf = out.pop()
                out.append(code_app(cf, ca))
            else:
                stack.append((u, True))
                stack.append((u.arg, False))
                stack.append((u.fun, False))
        elif tp is Num:
            out.append(code_num(u.n))
        elif tp is Var:
            raise ValueError("cannot encode an open term")
        else:
            out.append(_atom_code(u))
    return out[0]


@lru_cache(maxsize=8192)
def decode(c: int) -> Term:
    """Closed term with code ``c``; total on the naturals."""
    if c < 0:
        raise ValueError("codes are natural numbers")
    # iterative: build children before parents
    todo = [c]
    order: list[int] = []
    while todo:
        x = todo.pop()
        order.append(x)
        if x >= NATOMS and (x - NATOMS) & 1:
            f, a = unpair_len((x - NATOMS) >> 1)
            todo.append(f)
            todo.append(a)
    built: dict[int, Term] = {}
    for x in reversed(order):
        if x in built:
            continue
        if x < NATOMS:
            built[x] = _ATOMS[x]
        else:
            r = x - NATOMS
            if r & 1:
                f, a = unpair_len(r >> 1)
                built[x] = App(built[f], built[a])
            else:
                built[x] = Num(r >> 1)
    return built[c]


def atom_by_code(c: int) -> Term:
    return _ATOMS[c]

