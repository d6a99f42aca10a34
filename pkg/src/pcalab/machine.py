"""Fuel-bounded evaluation of closed terms.

Reduction rules (each contraction costs one unit of fuel)::

    K a b          -> a
    S a b c        -> a c (b c)
    n a            -> decode(n) a          numeral in head position
    succ n         -> n + 1
    pred n         -> n - 1  (pred 0 = 0)
    ifz n a b      -> a if n = 0 else b
    pair x y       -> <x, y>               Cantor pairing
    fst z, snd z   -> components of z
    qapp c d       -> code of (decode c) (decode d)
    qnum n         -> code of the numeral n
    iter n f a     -> a if n = 0, else iter (n - 1) f (f a)
    clock c x s    -> v + 1 if c x reaches the numeral v within s steps, else 0
    race c x d y   -> value of whichever of c x, d y converges first,
                      stepping them alternately (c x first, so ties go to it)

Evaluation is strict: every argument position is forced to weak normal
form before the head consumes it, including the argument ``K`` discards
and both branches of ``ifz``.  Steps spent inside ``clock`` and ``race``
are charged to the enclosing computation.

The compiled backend (``pcalab._kernel``) is used when it was built;
set ``PCALAB_PURE=1`` to force the pure-Python machine.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from . import _kernel_py
from .terms import Term, is_closed

try:
    if os.environ.get("PCALAB_PURE"):
        raise ImportError
    from . import _kernel as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
Machine = _compiled.Machine if _compiled is not None else _kernel_py.Machine
PyMachine = _kernel_py.Machine

RUNNING, DONE, STUCK = _kernel_py.RUNNING, _kernel_py.DONE, _kernel_py.STUCK


@dataclass(frozen=True)
class Value:
    term: Term
    steps: int


@dataclass(frozen=True)
class OutOfFuel:
    steps: int


@dataclass(frozen=True)
class Stuck:
    term: Term
    steps: int


EvalResult = Value | OutOfFuel | Stuck


def evaluate(t: Term, fuel: int, *, pure_sk: bool = False, machine=None) -> EvalResult:
    """Run ``t`` for at most ``fuel`` steps.

    ``OutOfFuel`` is the only outcome that can change under a larger
    budget.  ``machine`` overrides the backend class (used by tests and
    the benchmark).
    """
    if fuel < 0:
        raise ValueError("fuel must be non-negative")
    if not is_closed(t):
        raise ValueError("evaluate needs a closed term")
    m = (machine or Machine)(t, pure_sk)
    m.advance(fuel)
    if m.status == DONE:
        return Value(m.cur, m.steps)
    if m.status == STUCK:
        return Stuck(m.cur, m.steps)
    return OutOfFuel(m.steps)


def certify_divergence(t: Term, max_steps: int) -> bool:
    """True if the run of ``t`` revisits a configuration within ``max_steps``.

    A repeated configuration of a deterministic machine proves divergence.
    Uses Brent's cycle finding over single steps; computations inside
    clock/race are not snapshotted, so those runs are never certified.
    """
    m = PyMachine(t)
    power = lam = 1
    saved = m.snapshot()
    taken = 0
    while taken < max_steps:
        if m.advance(1) == 0 or m.status != RUNNING:
            return False
        taken += 1
        snap = m.snapshot()
        if snap is None:
            return False
        if snap == saved:
            return True
        if power == lam:
            saved = snap
            power *= 2
            lam = 0
        lam += 1
    return False
