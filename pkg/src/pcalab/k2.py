"""Finite-depth approximations of Kleene's second model.

A continuous functional on Baire space is approximated by a
:class:`PrefixMap`: finitely many pairs ``input prefix -> output prefix``,
monotone in the prefix order.  Points of Baire space that matter here are
eventually periodic, so :class:`BairePoint` stores a prefix and a tail
rule.

Two facts are exercised:

* ``psi_nonextendable`` maps ``0^n 1 X`` to ``0^n 1 X`` for even ``n`` and
  to ``1 0^(n-1) X`` for odd ``n``.  Any total continuous extension would
  have to pick a first output symbol at ``0^w`` that is fixed on some
  neighbourhood ``[0^k]``, but every such neighbourhood contains points
  forcing 0 and points forcing 1.
* Against every total functional ``f`` (one that commits to ``(f g)(0)``
  while ``g`` is still completely undefined) there is a total ``g`` with
  ``(g (f g))(0) != (f g)(0)``.

Continuations ``X`` range over a finite alphabet (binary by default); the
functional is the identity on them.  Any continuous map onto the target
cylinder would serve, and this is the simplest.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Protocol, Sequence

__all__ = [
    "Seq", "PrefixMap", "InconsistentMap", "BairePoint", "apply_functional", "identity_map",
    "psi_nonextendable", "ContradictionWitness", "NotFound", "check_no_total_extension",
    "refute_extension_tables", "Functional", "ConstFunctional", "ProbeFunctional",
    "IdentityFunctional", "NonCommittal", "Diagonalization", "diagonalize_total",
    "committing_functionals", "is_prefix",
]

Seq = tuple[int, ...]


def is_prefix(a: Sequence[int], b: Sequence[int]) -> bool:
    return len(a) <= len(b) and tuple(b[:len(a)]) == tuple(a)


class InconsistentMap(ValueError):
    pass


class PrefixMap:
    """Finite monotone map between finite sequences, validated on construction."""

    __slots__ = ("entries", "depth")

    def __init__(self, entries: dict[Seq, Seq] | Iterable[tuple[Seq, Seq]], depth: int):
        items = dict(entries) if not isinstance(entries, dict) else dict(entries)
        self.entries: dict[Seq, Seq] = {tuple(k): tuple(v) for k, v in items.items()}
        self.depth = depth
        self._validate()

    def _validate(self) -> None:
        for k, v in self.entries.items():
            if len(k) > self.depth:
                raise InconsistentMap(f"input {k} is longer than depth {self.depth}")
            if any(type(a) is not int or a < 0 for a in k + v):
                raise InconsistentMap("sequences must contain naturals")
        # monotonicity only needs checking against the nearest present prefix
        for k, v in self.entries.items():
            for j in range(len(k) - 1, -1, -1):
                p = k[:j]
                if p in self.entries:
                    if not is_prefix(self.entries[p], v):
                        raise InconsistentMap(
                            f"not monotone: {list(p)} -> {list(self.entries[p])} "
                            f"but {list(k)} -> {list(v)}")
                    break

    def lookup(self, prefix: Sequence[int]) -> Seq | None:
        """Output of the longest present input that is a prefix of ``prefix``."""
        prefix = tuple(prefix)
        for j in range(min(len(prefix), self.depth), -1, -1):
            out = self.entries.get(prefix[:j])
            if out is not None:
                return out
        return None

    def __eq__(self, other) -> bool:
        return isinstance(other, PrefixMap) and self.entries == other.entries \
            and self.depth == other.depth

    def __len__(self) -> int:
        return len(self.entries)

    def __repr__(self) -> str:
        return f"PrefixMap(<{len(self.entries)} entries>, depth={self.depth})"

    # text form: a "depth N" header, then "in -> out" lines of space-separated naturals
    def dumps(self) -> str:
        lines = [f"depth {self.depth}"]
        for k in sorted(self.entries, key=lambda s: (len(s), s)):
            lines.append(f"{' '.join(map(str, k))} -> {' '.join(map(str, self.entries[k]))}".strip())
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "PrefixMap":
        depth = None
        entries: dict[Seq, Seq] = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("depth"):
                depth = int(line.split()[1])
                continue
            if "->" not in line:
                raise InconsistentMap(f"line {lineno}: expected 'input -> output'")
            a, b = line.split("->", 1)
            try:
                k = tuple(int(t) for t in a.split())
                v = tuple(int(t) for t in b.split())
            except ValueError:
                raise InconsistentMap(f"line {lineno}: not a sequence of naturals") from None
            if k in entries and entries[k] != v:
                raise InconsistentMap(f"line {lineno}: input {list(k)} given twice")
            entries[k] = v
        if depth is None:
            raise InconsistentMap("missing 'depth' header")
        return cls(entries, depth)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps())

    @classmethod
    def load(cls, path: str | Path) -> "PrefixMap":
        return cls.loads(Path(path).read_text())


@dataclass(frozen=True)
class BairePoint:
    """``prefix`` followed by zeros, or by ``cycle`` repeated forever."""

    prefix: Seq
    cycle: Seq = ()

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))

    def at(self, k: int) -> int:
        if k < len(self.prefix):
            return self.prefix[k]
        if not self.cycle:
            return 0
        return self.cycle[(k - len(self.prefix)) % len(self.cycle)]

    def prefix_at(self, k: int) -> Seq:
        return tuple(self.at(i) for i in range(k))

    def __str__(self) -> str:
        head = "".join(map(str, self.prefix))
        tail = "(" + "".join(map(str, self.cycle)) + ")^w" if self.cycle else "0^w"
        return head + tail


def apply_functional(F: PrefixMap, beta: BairePoint, out_len: int) -> Seq | None:
    """First ``out_len`` output symbols of ``F`` at ``beta``, if committed by depth ``F.depth``."""
    if out_len < 1:
        raise ValueError("out_len must be at least 1")
    out = F.lookup(beta.prefix_at(F.depth))
    if out is None or len(out) < out_len:
        return None
    return out[:out_len]


def _words(alphabet: Sequence[int], max_len: int) -> Iterator[Seq]:
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


def identity_map(depth: int, alphabet: Sequence[int] = (0, 1)) -> PrefixMap:
    return PrefixMap({w: w for w in _words(alphabet, depth)}, depth)


def psi_nonextendable(depth: int, alphabet: Sequence[int] = (0, 1)) -> PrefixMap:
    """``0^n 1 X -> 0^n 1 X`` (n even), ``-> 1 0^(n-1) X`` (n odd); undefined elsewhere."""
    if depth < 2:
        raise ValueError("depth must be at least 2")
    entries: dict[Seq, Seq] = {}
    for n in range(depth):
        head = (0,) * n + (1,)
        image = head if n % 2 == 0 else (1,) + (0,) * (n - 1)
        for x in _words(alphabet, depth - n - 1):
            entries[head + x] = image + x
    return PrefixMap(entries, depth)


# -- no total extension ----------------------------------------------------------

@dataclass(frozen=True)
class ContradictionWitness:
    """For each candidate modulus ``k``, two points in ``[0^k]`` forcing different first symbols.

    ``pair`` is the headline pair (for ``k = 1`` when present).
    """

    pair: tuple[tuple[BairePoint, int], tuple[BairePoint, int]]
    per_modulus: dict[int, tuple[tuple[BairePoint, int], tuple[BairePoint, int]]]
    depth: int


@dataclass(frozen=True)
class NotFound:
    reason: str


def _forced_points(psi: PrefixMap) -> list[tuple[Seq, int]]:
    # inputs whose image already has a first symbol; the point is input + 0^w
    return sorted(((k, v[0]) for k, v in psi.entries.items() if v),
                  key=lambda kv: (len(kv[0]), kv[0]))


def check_no_total_extension(psi: PrefixMap, depth: int) -> ContradictionWitness | NotFound:
    """Show that no total continuous extension of ``psi`` exists, up to ``depth``.

    A total extension ``f`` takes a first symbol at ``0^w`` that is fixed
    on some ``[0^k]``.  For every ``k <= depth - 2`` we look for two points
    of ``[0^k]`` whose ``psi``-images start with different symbols.  If
    some ``k`` has no such pair, that ``k`` is a consistent modulus and we
    return :class:`NotFound`.
    """
    if depth < 3:
        return NotFound(f"depth {depth} < 3 cannot force a contradiction")
    pts = [(k, s) for k, s in _forced_points(psi) if len(k) <= depth]
    per: dict[int, tuple] = {}
    for k in range(depth - 1):
        zero_k = (0,) * k
        first: dict[int, Seq] = {}
        for inp, sym in pts:
            # the point inp 0^w lies in [0^k]
            if is_prefix(zero_k, inp + (0,) * max(0, k - len(inp))) and sym not in first:
                first[sym] = inp
        if len(first) < 2:
            return NotFound(f"[0^{k}] has a consistent first symbol {sorted(first)}")
        a, b = sorted(first)[:2]
        per[k] = ((BairePoint(first[a]), a), (BairePoint(first[b]), b))
    head = per.get(1, per[0])
    return ContradictionWitness(head, per, depth)


def refute_extension_tables(psi: PrefixMap, level: int, alphabet: Sequence[int] = (0, 1)):
    """Brute force: every first-symbol table on ``alphabet^level`` violates ``psi``.

    A candidate assigns a first output symbol to every word of length
    ``level``; it extends ``psi`` only if each forced point of ``psi`` gets
    its forced symbol.  Returns ``(candidate, violated point)`` for every
    candidate, or raises if some candidate survives.
    """
    pts = _forced_points(psi)
    words = list(itertools.product(alphabet, repeat=level))
    symbols = sorted({s for _, s in pts} | set(alphabet))
    out = []
    for values in itertools.product(symbols, repeat=len(words)):
        table = dict(zip(words, values))
        bad = None
        for inp, sym in pts:
            w = (inp + (0,) * level)[:level]
            if table[w] != sym:
                bad = (inp, sym)
                break
        if bad is None:
            raise AssertionError(f"candidate table {table} extends psi at level {level}")
        out.append((table, bad))
    return out


# -- diagonalizing against total functionals -------------------------------------

class Functional(Protocol):
    """An element acting on elements: ``commit(g, step)`` is the committed prefix of ``f g``.

    ``g`` is a finite approximation; the result must be monotone in ``g``
    and in ``step``.
    """

    name: str

    def commit(self, g: PrefixMap, step: int) -> Seq: ...


@dataclass(frozen=True)
class ConstFunctional:
    """Commits to ``value 0 0 ...`` after ``delay`` steps, ignoring ``g``."""

    value: int
    delay: int = 0
    length: int = 4

    @property
    def name(self) -> str:
        return f"const-{self.value}-after-{self.delay}"

    def commit(self, g: PrefixMap, step: int) -> Seq:
        if step < self.delay:
            return ()
        return (self.value,) + (0,) * (self.length - 1)


@dataclass(frozen=True)
class ProbeFunctional:
    """Commits ``default`` after ``delay`` steps, then appends ``g``'s first symbol at ``probe`` plus ``shift``.

    Only later output positions depend on ``g``; that is what keeps it
    monotone while still committing on the undefined argument.
    """

    probe: BairePoint
    shift: int
    default: int
    delay: int

    @property
    def name(self) -> str:
        return f"probe-{self.probe}-shift{self.shift}-default{self.default}-after-{self.delay}"

    def commit(self, g: PrefixMap, step: int) -> Seq:
        if step < self.delay:
            return ()
        out = apply_functional(g, self.probe, 1) if g.entries else None
        return (self.default,) if out is None else (self.default, out[0] + self.shift)


@dataclass(frozen=True)
class IdentityFunctional:
    """``f g = g`` applied to ``0^w``: commits only what ``g`` does."""

    name: str = "identity"

    def commit(self, g: PrefixMap, step: int) -> Seq:
        out = g.lookup((0,) * g.depth)
        return out or ()


class NonCommittal(RuntimeError):
    pass


@dataclass(frozen=True)
class Diagonalization:
    f_name: str
    committed: int
    commit_step: int
    g: PrefixMap
    fg_first: int
    g_fg_first: int

    @property
    def disagrees(self) -> bool:
        return self.fg_first != self.g_fg_first


EMPTY = PrefixMap({}, 0)


def diagonalize_total(f: Functional, probe_depth: int, *, out_len: int = 4) -> Diagonalization:
    """Total ``g`` with ``(g (f g))(0) != (f g)(0)``.

    ``g`` stays totally undefined until ``f`` commits ``v = (f g)(0)``;
    then ``g`` becomes the constant map with value ``(v + 1) 0 0 ...``.
    The extension by zeros past position 0 is a free choice.
    """
    v = step = None
    for step in range(probe_depth + 1):
        out = f.commit(EMPTY, step)
        if out:
            v = out[0]
            break
    if v is None:
        raise NonCommittal(f"{f.name} did not commit within {probe_depth} probe steps")
    g = PrefixMap({(): (v + 1,) + (0,) * (out_len - 1)}, 0)
    # f committed on the undefined approximation, so by monotonicity f g starts with v
    fg = f.commit(g, probe_depth)
    assert fg and fg[0] == v, "functional is not monotone in its argument"
    g_fg = apply_functional(g, BairePoint(fg), 1)
    return Diagonalization(f.name, v, step, g, fg[0], g_fg[0])


def committing_functionals() -> list[Functional]:
    """Twenty total functionals: constants with delays and probes with fallbacks."""
    fs: list[Functional] = [ConstFunctional(v, d) for v, d in
                            [(0, 0), (1, 0), (2, 1), (3, 2), (4, 5), (5, 0), (6, 4), (7, 3),
                             (8, 8), (9, 1)]]
    probes = [BairePoint(()), BairePoint((1,)), BairePoint((0, 1)), BairePoint((), (1, 0))]
    for i in range(10):
        fs.append(ProbeFunctional(probes[i % 4], i % 3, i, i // 2))
    return fs
