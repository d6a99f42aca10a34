# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled evaluation machine.

A transcription of ``_kernel_py.Machine`` with typed control state and
integer primitive dispatch.  Step counting is identical; the backend
parity tests hold the two to that.
"""

from .codec import cantor_pair, cantor_unpair, code_app, code_num, decode
from .terms import App, K, Num, S, Var

cdef int RUNNING = 0, DONE = 1, STUCK = 2
cdef int M_EVAL = 0, M_RET = 1, M_APPLY = 2, M_SUB = 3
cdef int F_ARG = 0, F_FUN = 1, F_S2 = 2, F_APPW = 3
cdef int SUB_CLOCK = 0, SUB_RACE = 1

# primitive indices, in declaration order
cdef int P_SUCC = 0, P_PRED = 1, P_IFZ = 2, P_PAIR = 3, P_FST = 4, P_SND = 5
cdef int P_QAPP = 6, P_QNUM = 7, P_CLOCK = 8, P_RACE = 9, P_ITER = 10

cdef object TApp = App, TNum = Num, TVar = Var
cdef object CK = K, CS = S


cdef object _subject(object c, object x):
    if type(c) is TNum:
        return TApp(decode(c.n), x)
    return TApp(c, x)


cdef class Machine:
    cdef public int pure_sk
    cdef public int mode
    cdef public object cur
    cdef public object fn
    cdef public list stack
    cdef public object steps
    cdef public int status
    cdef public object sub
    cdef object _iter_next

    def __init__(self, term, pure_sk=False):
        self.pure_sk = 1 if pure_sk else 0
        self.mode = M_EVAL
        self.cur = term
        self.fn = None
        self.stack = []
        self.steps = 0
        self.status = RUNNING
        self.sub = None

    def snapshot(self):
        if self.sub is not None:
            return None
        return (self.mode, self.cur, self.fn, tuple(self.stack))

    def advance(self, limit):
        cdef long long lim = limit
        cdef long long used = 0
        cdef int mode, kind, nargs, ar, turn
        cdef list stack
        cdef object cur, fn, h, arg, res, x, y, frame, m
        if self.status != RUNNING:
            return 0
        stack = self.stack
        mode = self.mode
        cur = self.cur
        fn = self.fn
        try:
            while True:
                if mode == M_EVAL:
                    tp = type(cur)
                    if tp is TApp:
                        stack.append((F_ARG, cur.arg, None))
                        cur = cur.fun
                    elif tp is TVar:
                        self.status = STUCK
                        return used
                    else:
                        mode = M_RET
                elif mode == M_RET:
                    if not stack:
                        self.status = DONE
                        return used
                    frame = stack.pop()
                    kind = frame[0]
                    x = frame[1]
                    if kind == F_ARG:
                        stack.append((F_FUN, cur, None))
                        cur = x
                        mode = M_EVAL
                    elif kind == F_FUN:
                        fn = x
                        mode = M_APPLY
                    elif kind == F_S2:
                        stack.append((F_FUN, cur, None))
                        fn = x
                        cur = frame[2]
                        mode = M_APPLY
                    else:
                        fn = cur
                        cur = x
                        mode = M_APPLY
                elif mode == M_APPLY:
                    arg = cur
                    if type(fn) is TNum:
                        if self.pure_sk:
                            self.status = STUCK
                            cur = TApp(fn, arg)
                            return used
                        if used >= lim:
                            return used
                        used += 1
                        stack.append((F_APPW, arg, None))
                        cur = decode(fn.n)
                        mode = M_EVAL
                        continue
                    h = fn
                    nargs = 0
                    while type(h) is TApp:
                        h = h.fun
                        nargs += 1
                    if h is CK:
                        ar = 2
                    elif h is CS:
                        ar = 3
                    else:
                        ar = h.arity
                    if nargs + 1 < ar:
                        cur = TApp(fn, arg)
                        mode = M_RET
                        continue
                    if h is not CK and h is not CS and self.pure_sk:
                        self.status = STUCK
                        cur = TApp(fn, arg)
                        return used
                    if used >= lim:
                        return used
                    used += 1
                    if h is CK:
                        cur = fn.arg
                        mode = M_RET
                    elif h is CS:
                        stack.append((F_S2, fn.arg, arg))
                        fn = fn.fun.arg
                        mode = M_APPLY
                    else:
                        res = self._prim(h, fn, arg)
                        if res is self:
                            x = self._iter_next
                            stack.append((F_FUN, x[0], None))
                            fn = x[1]
                            cur = x[2]
                            mode = M_APPLY
                        elif res is None:
                            if self.status == STUCK:
                                cur = TApp(fn, arg)
                                return used
                            mode = M_SUB
                        else:
                            cur = res
                            mode = M_RET
                else:
                    sub = self.sub
                    if sub[0] == SUB_CLOCK:
                        m = sub[1]
                        if (<Machine>m).status == RUNNING and (<Machine>m).steps < sub[2]:
                            if used >= lim:
                                return used
                            used += (<Machine>m).advance(1)
                            continue
                        if (<Machine>m).status == DONE and type((<Machine>m).cur) is TNum:
                            cur = TNum((<Machine>m).cur.n + 1)
                        else:
                            cur = TNum(0)
                        self.sub = None
                        mode = M_RET
                    else:
                        if used >= lim:
                            return used
                        turn = sub[3]
                        m = sub[1][turn]
                        alive = sub[2]
                        if alive[turn]:
                            used += (<Machine>m).advance(1)
                            if (<Machine>m).status != RUNNING:
                                if (<Machine>m).status == DONE and type((<Machine>m).cur) is TNum:
                                    cur = (<Machine>m).cur
                                    self.sub = None
                                    mode = M_RET
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

    cdef object _prim(self, object h, object fn, object arg):
        # returns a term, None (stuck or sub-computation started) or self (iter step)
        cdef list args = []
        cdef int op = h.index
        cdef object t = fn, a, n
        while type(t) is TApp:
            args.append(t.arg)
            t = t.fun
        args.reverse()
        args.append(arg)
        if op == P_RACE:
            self.sub = [SUB_RACE,
                        [Machine(_subject(args[0], args[1])),
                         Machine(_subject(args[2], args[3]))],
                        [True, True], 0]
            return None
        if op == P_IFZ:
            if type(args[0]) is not TNum:
                self.status = STUCK
                return None
            return args[1] if args[0].n == 0 else args[2]
        if op == P_ITER:
            if type(args[0]) is not TNum:
                self.status = STUCK
                return None
            n = args[0].n
            if n == 0:
                return args[2]
            self._iter_next = (TApp(TApp(h, TNum(n - 1)), args[1]), args[1], args[2])
            return self
        if op == P_CLOCK:
            if type(args[2]) is not TNum:
                self.status = STUCK
                return None
            self.sub = [SUB_CLOCK, Machine(_subject(args[0], args[1])), args[2].n]
            return None
        for a in args:
            if type(a) is not TNum:
                self.status = STUCK
                return None
        if op == P_SUCC:
            return TNum(args[0].n + 1)
        if op == P_PRED:
            n = args[0].n
            return TNum(n - 1 if n else 0)
        if op == P_PAIR:
            return TNum(cantor_pair(args[0].n, args[1].n))
        if op == P_FST:
            return TNum(cantor_unpair(args[0].n)[0])
        if op == P_SND:
            return TNum(cantor_unpair(args[0].n)[1])
        if op == P_QAPP:
            return TNum(code_app(args[0].n, args[1].n))
        if op == P_QNUM:
            return TNum(code_num(args[0].n))
        raise AssertionError(op)
