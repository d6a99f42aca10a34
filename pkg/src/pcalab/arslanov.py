"""A bounded run of the fixed-point construction for limit-computable maps.

Setting: ``g`` is the limit of a computable approximation ``g(x, s)``
(``g(x) = g(x, s)`` for all ``s`` past the modulus ``m(x)``).  The
construction takes the halting stage ``s_n`` (least ``s`` with
``phi_n(n)`` converging within ``s`` steps), defines

    eta(x, n) = g(x, s_n)        (undefined when phi_n(n) diverges)

totalizes ``eta`` and takes parametrised fixed points ``f(n) ~ eta(f(n), n)``.
Whenever ``n`` halts at a stage already past the modulus of ``f(n)``,
``f(n) ~ g(f(n), s_n) = g(f(n))``: a fixed point of ``g``.  The search
scans ``n`` upward for such an ``n``.

Here ``g`` is given by a finite table, not by an oracle machine.  This
shows the construction at work; it says nothing about Turing degrees, and
no claim about completeness of any set is made or tested.

Table format, one directive per line (``#`` starts a comment)::

    name <label>
    rule <stage> <op>          # from <stage> on, every x maps to op(x)
    <x> <stage> <value>        # explicit triple for one small x
    settle <stage>             # claimed modulus for every x
    settle <x> <stage>         # claimed modulus for one x

where ``<op>`` is ``id``, ``pad <k>``, ``const <value>``, or
``alternate <op> ; <op>`` (first op on even stages, second on odd
stages).  A ``<value>`` is a natural number or a corpus program name.
The first rule must start at stage 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable

from .codec import encode
from .fixedpoints import FixpointWitness, MisuseError, ershov_param
from .k1 import FLIP, Defined, pad, phi, program
from .numberings import Numbering, TotalCodeMap, totalize
from .pca import compile_lambda, lam, turing_fixpoint
from .terms import PRIMS, Num, Term, Var, app

__all__ = [
    "Op", "LimitApprox", "parse_table", "load_table", "halting_stage", "ModulusViolation",
    "ArslanovResult", "arslanov_construct", "check_modulus", "stage_program", "builtin_tables",
    "MAX_EXPLICIT_X",
]

MAX_EXPLICIT_X = 10_000


class ModulusViolation(MisuseError):
    """The table changes after a stage it claims to have settled by."""

    def __init__(self, x: int | None, settle: int, stage: int, before: int, after: int):
        self.x, self.settle, self.stage, self.before, self.after = x, settle, stage, before, after
        who = "every x" if x is None else f"x = {x}"
        super().__init__(f"modulus violated for {who}: settled at stage {settle} "
                         f"with value {before}, but stage {stage} gives {after}")


@dataclass(frozen=True)
class Op:
    kind: str
    arg: int = 0
    alt: tuple["Op", "Op"] | None = None

    def host(self, x: int, s: int) -> int:
        if self.kind == "id":
            return x
        if self.kind == "pad":
            return pad(x, self.arg)
        if self.kind == "const":
            return self.arg
        return self.alt[s % 2].host(x, s)

    def term(self, x: Term, s: Term) -> Term:
        if self.kind == "id":
            return x
        if self.kind == "pad":
            return app(PRIMS["iter"], Num(self.arg), _PAD1, x)
        if self.kind == "const":
            return Num(self.arg)
        return app(PRIMS["ifz"], app(PRIMS["iter"], s, FLIP, Num(0)),
                   self.alt[0].term(x, s), self.alt[1].term(x, s))

    def __str__(self) -> str:
        if self.kind == "alternate":
            return f"alternate {self.alt[0]} ; {self.alt[1]}"
        if self.kind == "id":
            return "id"
        return f"{self.kind} {self.arg}"


_PAD1 = compile_lambda(r"\x. qapp (qapp 0 x) 0", optimize=True)


def _select(cond_le: tuple[Term, int], lo: Term, hi: Term) -> Term:
    # ifz (s <= t) ... : iter t pred s is zero exactly when s <= t
    s, t = cond_le
    return app(PRIMS["ifz"], app(PRIMS["iter"], Num(t), PRIMS["pred"], s), lo, hi)


@dataclass(frozen=True)
class LimitApprox:
    """A finite description of ``g(x, s)`` with a claimed modulus."""

    name: str
    rules: tuple[tuple[int, Op], ...]
    entries: tuple[tuple[int, int, int], ...] = ()
    settle_all: int = 0
    settle_x: tuple[tuple[int, int], ...] = ()

    def _rule(self, x: int, s: int) -> int:
        op = self.rules[0][1]
        for t, o in self.rules:
            if t <= s:
                op = o
        return op.host(x, s)

    def table(self, x: int, s: int) -> int:
        best = None
        for ex, es, v in self.entries:
            if ex == x and es <= s and (best is None or es >= best[0]):
                best = (es, v)
        return best[1] if best is not None else self._rule(x, s)

    def settle(self, x: int) -> int:
        return dict(self.settle_x).get(x, self.settle_all)

    def limit(self, x: int) -> int:
        """``g(x)``, read off at the claimed modulus."""
        return self.table(x, self.settle(x))

    @cached_property
    def horizon(self) -> int:
        """Past this stage the table is periodic with period 2."""
        stages = [t for t, _ in self.rules] + [s for _, s, _ in self.entries]
        return max(stages + [self.settle_all] + [s for _, s in self.settle_x]) + 2

    def term(self) -> Term:
        """Program ``\\x s. g(x, s)`` mirroring :meth:`table`."""
        x, s = Var(0), Var(1)
        rules = sorted(self.rules, key=lambda r: r[0])
        body = rules[-1][1].term(x, s)
        for i in range(len(rules) - 2, -1, -1):
            body = _select((s, rules[i + 1][0] - 1), rules[i][1].term(x, s), body)
        by_x: dict[int, list[tuple[int, int]]] = {}
        for ex, es, v in self.entries:
            by_x.setdefault(ex, []).append((es, v))
        for ex, items in sorted(by_x.items()):
            items.sort()
            branch = Num(items[-1][1])
            for i in range(len(items) - 2, -1, -1):
                branch = _select((s, items[i + 1][0] - 1), Num(items[i][1]), branch)
            if items[0][0] > 0:
                branch = _select((s, items[0][0] - 1), body, branch)
            body = app(PRIMS["ifz"], _eq(x, ex), body, branch)
        return lam([0, 1], body, optimize=True)

    @cached_property
    def code(self) -> int:
        """Code of the program on pairs: ``<x, s> -> g(x, s)``."""
        return encode(compile_lambda(r"\z. g (fst z) (snd z)", {"g": self.term()},
                                     optimize=True))


def _eq(x: Term, a: int) -> Term:
    # 1 if x = a else 0, in about 2a steps
    ifz, it, pred = PRIMS["ifz"], PRIMS["iter"], PRIMS["pred"]
    le_a = app(it, Num(a), pred, x)
    if a == 0:
        return app(ifz, le_a, Num(1), Num(0))
    le_am1 = app(it, Num(a - 1), pred, x)
    return app(ifz, le_a, app(ifz, le_am1, Num(0), Num(1)), Num(0))


# -- text format ----------------------------------------------------------------

def _value(tok: str) -> int:
    if tok.isdigit():
        return int(tok)
    try:
        return program(tok).code
    except KeyError:
        raise ValueError(f"unknown value {tok!r}: expected a natural or a corpus program") from None


def _op(toks: list[str]) -> Op:
    if not toks:
        raise ValueError("missing operation")
    if toks[0] == "alternate":
        rest = " ".join(toks[1:]).split(";")
        if len(rest) != 2:
            raise ValueError("alternate needs two operations separated by ';'")
        a, b = (_op(r.split()) for r in rest)
        if a.kind == "alternate" or b.kind == "alternate":
            raise ValueError("alternate cannot be nested")
        return Op("alternate", alt=(a, b))
    kind = toks[0]
    if kind == "id" and len(toks) == 1:
        return Op("id")
    if kind == "pad" and len(toks) == 2 and toks[1].isdigit():
        return Op("pad", int(toks[1]))
    if kind == "const" and len(toks) == 2:
        return Op("const", _value(toks[1]))
    raise ValueError(f"bad operation {' '.join(toks)!r}")


def parse_table(text: str, name: str = "table") -> LimitApprox:
    rules: list[tuple[int, Op]] = []
    entries: list[tuple[int, int, int]] = []
    settle_all, settle_x = 0, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        try:
            if toks[0] == "name":
                name = " ".join(toks[1:])
            elif toks[0] == "rule":
                rules.append((int(toks[1]), _op(toks[2:])))
            elif toks[0] == "settle":
                if len(toks) == 2:
                    settle_all = int(toks[1])
                elif len(toks) == 3:
                    settle_x.append((int(toks[1]), int(toks[2])))
                else:
                    raise ValueError("settle takes one or two numbers")
            elif len(toks) == 3 and toks[0].isdigit() and toks[1].isdigit():
                x = int(toks[0])
                if x > MAX_EXPLICIT_X:
                    raise ValueError(f"explicit entries are limited to x <= {MAX_EXPLICIT_X}")
                entries.append((x, int(toks[1]), _value(toks[2])))
            else:
                raise ValueError(f"unknown directive {toks[0]!r}")
        except (ValueError, IndexError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if not rules or min(t for t, _ in rules) != 0:
        raise ValueError("a table needs a rule starting at stage 0")
    if len({t for t, _ in rules}) != len(rules):
        raise ValueError("two rules start at the same stage")
    return LimitApprox(name, tuple(sorted(rules, key=lambda r: r[0])), tuple(entries),
                       settle_all, tuple(settle_x))


def load_table(path: str | Path) -> LimitApprox:
    p = Path(path)
    return parse_table(p.read_text(), p.stem)


def builtin_tables() -> dict[str, LimitApprox]:
    """The shipped tables, keyed by file stem."""
    d = Path(__file__).parent / "data" / "arslanov"
    return {p.stem: load_table(p) for p in sorted(d.glob("*.tbl"))}


# -- modulus ---------------------------------------------------------------------

def check_modulus(approx: LimitApprox, xs: Iterable[int] = ()) -> None:
    """Raise :class:`ModulusViolation` if the table moves after its claimed settle stage.

    Rules do not depend on ``x`` except through explicit entries, and the
    table is 2-periodic past :attr:`LimitApprox.horizon`, so checking the
    explicit ``x`` plus one generic ``x`` up to the horizon is exhaustive.
    """
    special = {x for x, _, _ in approx.entries} | {x for x, _ in approx.settle_x}
    generic = next(x for x in range(MAX_EXPLICIT_X + 2, 10 ** 6) if x not in special)
    for x in sorted(special | set(xs)) + [generic]:
        t = approx.settle(x)
        v = approx.table(x, t)
        for s in range(t, max(t, approx.horizon) + 2):
            w = approx.table(x, s)
            if w != v:
                raise ModulusViolation(None if x == generic else x, t, s, v, w)


# -- halting stages --------------------------------------------------------------

def halting_stage(n: int, budget: int) -> int | None:
    """Least ``s <= budget`` with ``phi_n(n)`` defined within ``s`` steps."""
    r = phi(n, n, budget)
    return r.steps if isinstance(r, Defined) else None


def stage_program() -> Term:
    """``\\n. least s with clock n n s > 0``: computes ``s_n`` in the language, diverging off the halting set."""
    return compile_lambda(
        r"\n. th (\r s. ifz (clock n n s) (\d. r (succ s)) (\d. s) 0) 0",
        {"th": turing_fixpoint()}, optimize=True)


# -- construction ----------------------------------------------------------------

@dataclass
class ArslanovResult:
    approx: str
    witness: FixpointWitness | None
    n: int | None = None
    stage: int | None = None
    # (n, s_n, value of g(f(n), s_n), settle(f(n))) for every halting n scanned
    scanned: list[tuple[int, int, int, int]] = field(default_factory=list)
    eta: int = 0
    f: TotalCodeMap | None = None

    @property
    def found(self) -> bool:
        return self.witness is not None


def eta_code(approx: LimitApprox) -> int:
    """Code of ``<x, n> -> g(x, s_n)``."""
    t = compile_lambda(r"\z. g (fst z) (sn (snd z))",
                       {"g": approx.term(), "sn": stage_program()}, optimize=True)
    return encode(t)


def arslanov_construct(gamma: Numbering, approx: LimitApprox, budget: int = 1000, *,
                       equiv_budget: int = 10_000, inputs: Iterable[int] = range(21)) -> ArslanovResult:
    """Scan ``n = 0, 1, ...`` (at most ``budget``) for a fixed point of the limit map.

    Raises :class:`ModulusViolation` before doing anything if the table is
    not settled where it claims to be.
    """
    check_modulus(approx)
    eta = eta_code(approx)
    h = totalize(eta)
    f = ershov_param(gamma, h, check=False)
    res = ArslanovResult(approx.name, None, eta=eta, f=f)
    for n in range(budget + 1):
        s = halting_stage(n, budget)
        if s is None:
            continue
        fn = f.host(n)
        val = approx.table(fn, s)
        res.scanned.append((n, s, val, approx.settle(fn)))
        if val == approx.limit(fn):
            v = gamma.equiv_bounded(val, fn, equiv_budget, inputs=inputs)
            res.witness = FixpointWitness(fn, approx.code, equiv_budget, v)
            res.n, res.stage = n, s
            break
    return res
