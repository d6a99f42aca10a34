"""Pure-Python evaluation machine (fallback for the compiled ``_kernel``).

Keep in step with ``_kernel.pyx``: both must count steps identically.
"""

from __future__ import annotations

from .codec import cantor_pair, cantor_unpair, code_app, code_num, decode
from .terms import App, K, Num, Prim, S, Term, Var

RUNNING, DONE, STUCK = 0, 1, 2

_EVAL, _RET, _APPLY, _SUB = 0, 1, 2, 3

_F_ARG, _F_FUN, _F_S2, _F_APPW = 0, 1, 2, 3

_SUB_CLOCK, _SUB_RACE = 0, 1

_ITER = object()


def _subject(c: Term, x: Term) -> Term:
    # a numeral in head position stands for the program it codes; inside
    # clock/race the decode is free so stages match phi's step counts
    if type(c) is Num:
        return App(decode(c.n), x)
    return App(c, x)


class Machine:
    """Strict left-to-right evaluator with an explicit continuation stack.

    ``advance(limit)`` performs at most ``limit`` contraction steps and can
    be resumed, which is what clock/race need to interleave computations.
    """

    def __init__(self, term: Term, pure_sk: bool = False):
        self.pure_sk = pure_sk
        self.mode = _EVAL
        self.cur = term
        self.fn = None
        self.stack: list[tuple] = []
        self.steps = 0
        self.status = RUNNING
        self.sub = None

    def snapshot(self):
        """Hashable configuration, or None while a sub-computation runs."""
        if self.sub is not None:
            return None
        return (self.mode, self.cur, self.fn, tuple(self.stack))

    def _stuck(self, fn: Term, arg: Term) -> None:
        self.status = STUCK

    def advance(self, limit: int) -> int:
        if self.status != RUNNING:
            return 0
        used = 0
        stack = self.stack
        mode = self.mode
        cur = self.cur
        fn = self.fn
        try:
            while True:
                if mode == _EVAL:
                    tp = type(cur)
                    if tp is App:
                        stack.append((_F_ARG, cur.arg, None))
                        cur = cur.fun
                    elif tp is Var:
                        self.status = STUCK
                        return used
                    else:
                        mode = _RET
                elif mode == _RET:
                    if not stack:
                        self.status = DONE
                        return used
                    kind, x, y = stack.pop()
                    if kind == _F_ARG:
                        stack.append((_F_FUN, cur, None))
                        cur = x
                        mode = _EVAL
                    elif kind == _F_FUN:
                        fn = x
                        mode = _APPLY
                    elif kind == _F_S2:
                        stack.append((_F_FUN, cur, None))
                        fn = x
                        cur = y
                        mode = _APPLY
                    else:
                        fn = cur
                        cur = x
                        mode = _APPLY
                elif mode == _APPLY:
                    arg = cur
                    if type(fn) is Num:
                        if self.pure_sk:
                            self.status = STUCK
                            cur = App(fn, arg)
                            return used
                        if used >= limit:
                            return used
                        used += 1
                        stack.append((_F_APPW, arg, None))
                        cur = decode(fn.n)
                        mode = _EVAL
                        continue
                    # spine of a value: head plus at most 3 arguments
                    h = fn
                    nargs = 0
                    while type(h) is App:
                        h = h.fun
                        nargs += 1
                    if h is K:
                        ar = 2
                    elif h is S:
                        ar = 3
                    else:
                        ar = h.arity
                    if nargs + 1 < ar:
                        cur = App(fn, arg)
                        mode = _RET
                        continue
                    if h is not K and h is not S and self.pure_sk:
                        self.status = STUCK
                        cur = App(fn, arg)
                        return used
                    if used >= limit:
                        return used
                    used += 1
                    if h is K:
                        cur = fn.arg
                        mode = _RET
                    elif h is S:
                        stack.append((_F_S2, fn.arg, arg))
                        fn = fn.fun.arg
                        mode = _APPLY
                    else:
                        res = self._prim(h, fn, arg)
                        if res is _ITER:
                            rest, f, a = self._iter_next
                            stack.append((_F_FUN, rest, None))
                            fn = f
                            cur = a
                            mode = _APPLY
                        elif res is None:
                            if self.status == STUCK:
                                cur = App(fn, arg)
                                return used
                            mode = _SUB
                        else:
                            cur = res
                            mode = _RET
                else:
                    sub = self.sub
                    if sub[0] == _SUB_CLOCK:
                        m, bound = sub[1], sub[2]
                        if m.status == RUNNING and m.steps < bound:
                            if used >= limit:
                                return used
                            used += m.advance(1)
                            continue
                        if m.status == DONE and type(m.cur) is Num:
                            cur = Num(m.cur.n + 1)
                        else:
                            cur = Num(0)
                        self.sub = None
                        mode = _RET
                    else:
                        if used >= limit:
                            return used
                        ms, alive, turn = sub[1], sub[2], sub[3]
                        m = ms[turn]
                        if alive[turn]:
                            used += m.advance(1)
                            if m.status != RUNNING:
                                if m.status == DONE and type(m.cur) is Num:
                                    cur = m.cur
                                    self.sub = None
                                    mode = _RET
                                    continue
                                alive[turn] = False
                        else:
                            used += 1
                        sub[3] = 1 - turn
        finally:
            self.mode = mode
            self.cur = cur
            self.fn = fn
            self.steps += used

    def _prim(self, h: Prim, fn: Term, arg: Term):
        args = []
        t = fn
        while type(t) is App:
            args.append(t.arg)
            t = t.fun
        args.reverse()
        args.append(arg)
        op = h.op
        if op == "race":
            self.sub = [_SUB_RACE,
                        [Machine(_subject(args[0], args[1])),
                         Machine(_subject(args[2], args[3]))],
                        [True, True], 0]
            return None
        if op == "ifz":
            if type(args[0]) is not Num:
                self._stuck(fn, arg)
                return None
            return args[1] if args[0].n == 0 else args[2]
        if op == "iter":
            # iter n f a: apply f n times, tail-recursively through a pending
            # partial application so the stack does not grow
            if type(args[0]) is not Num:
                self._stuck(fn, arg)
                return None
            n = args[0].n
            if n == 0:
                return args[2]
            self._iter_next = (App(App(h, Num(n - 1)), args[1]), args[1], args[2])
            return _ITER
        if op == "clock":
            if type(args[2]) is not Num:
                self._stuck(fn, arg)
                return None
            self.sub = [_SUB_CLOCK, Machine(_subject(args[0], args[1])), args[2].n]
            return None
        for a in args:
            if type(a) is not Num:
                self._stuck(fn, arg)
                return None
        if op == "succ":
            return Num(args[0].n + 1)
        if op == "pred":
            n = args[0].n
            return Num(n - 1 if n else 0)
        if op == "pair":
            return Num(cantor_pair(args[0].n, args[1].n))
        if op == "fst":
            return Num(cantor_unpair(args[0].n)[0])
        if op == "snd":
            return Num(cantor_unpair(args[0].n)[1])
        if op == "qapp":
            return Num(code_app(args[0].n, args[1].n))
        if op == "qnum":
            return Num(code_num(args[0].n))
        raise AssertionError(op)
