"""Immutable expression trees over rationals, symbols and a fixed kernel set.

The constructors (`add`, `mul`, `pw`, ...) flatten nested sums/products and
fold constants, so every tree they build is a fixed point of format+parse.
They never collect like terms; exact arithmetic lives in `ratform`.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import UnsupportedFormError
from .symbols import Symbol, KERNEL_HEADS


class Expr:
    __slots__ = ("_h", "size")

    def __hash__(self):
        return self._h

    def __repr__(self):
        from .printer import format_expr
        return format_expr(self)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Expr) or self._h != other._h:
            return False
        return self._key() == other._key()


class Num(Expr):
    __slots__ = ("val",)

    def __init__(self, val):
        self.val = val if isinstance(val, Fraction) else Fraction(val)
        self.size = 1
        self._h = hash(("n", self.val))

    def _key(self):
        return ("n", self.val)


class Sym(Expr):
    __slots__ = ("sym",)

    def __init__(self, sym):
        self.sym = sym
        self.size = 1
        self._h = hash(("s", sym))

    def _key(self):
        return ("s", self.sym)


class Add(Expr):
    __slots__ = ("args",)

    def __init__(self, args):
        self.args = args
        self.size = 1 + sum(a.size for a in args)
        self._h = hash(("+",) + tuple(a._h for a in args))

    def _key(self):
        return ("+", self.args)


class Mul(Expr):
    __slots__ = ("args",)

    def __init__(self, args):
        self.args = args
        self.size = 1 + sum(a.size for a in args)
        self._h = hash(("*",) + tuple(a._h for a in args))

    def _key(self):
        return ("*", self.args)


class Pow(Expr):
    __slots__ = ("base", "exp")

    def __init__(self, base, exp):
        self.base = base
        self.exp = exp
        self.size = 1 + base.size
        self._h = hash(("^", base._h, exp))

    def _key(self):
        return ("^", self.base, self.exp)


class Kernel(Expr):
    """Application of one of the fixed transcendental kernels."""

    __slots__ = ("head", "arg")

    def __init__(self, head, arg):
        self.head = head
        self.arg = arg
        self.size = 1 + arg.size
        self._h = hash(("k", head, arg._h))

    def _key(self):
        return ("k", self.head, self.arg)


class FuncApp(Expr):
    """The unknown function, possibly under repeated differentiation.

    Only appears in input/output notation; `jets.to_jet` converts it to
    jet coordinates before any arithmetic is done.
    """

    __slots__ = ("func", "args", "derivs")

    def __init__(self, func, args, derivs=()):
        self.func = func
        self.args = tuple(args)
        self.derivs = tuple(derivs)
        self.size = 2 + len(self.args) + len(self.derivs)
        self._h = hash(("f", func, self.args, self.derivs))

    def _key(self):
        return ("f", self.func, self.args, self.derivs)


ZERO = Num(0)
ONE = Num(1)
MINUS_ONE = Num(-1)


# --- constructors ---------------------------------------------------------

def num(q):
    if isinstance(q, Expr):
        return q
    return Num(Fraction(q))


def sym(s):
    return Sym(s)


def add(*parts):
    """Flattened sum; folds numeric terms, drops zeros."""
    flat = []
    total = Fraction(0)
    num_slot = None
    for p in parts:
        p = num(p)
        if isinstance(p, Add):
            inner = p.args
        else:
            inner = (p,)
        for q in inner:
            if isinstance(q, Num):
                total += q.val
                if num_slot is None:
                    num_slot = len(flat)
            else:
                flat.append(q)
    if total != 0:
        if num_slot is None:
            num_slot = len(flat)
        flat.insert(min(num_slot, len(flat)), Num(total))
    if not flat:
        return ZERO
    if len(flat) == 1:
        return flat[0]
    return Add(tuple(flat))


def mul(*parts):
    """Flattened product with the numeric coefficient first."""
    flat = []
    coeff = Fraction(1)
    for p in parts:
        p = num(p)
        if isinstance(p, Mul):
            inner = p.args
        else:
            inner = (p,)
        for q in inner:
            if isinstance(q, Num):
                coeff *= q.val
            else:
                flat.append(q)
    if coeff == 0:
        return ZERO
    if coeff != 1:
        flat.insert(0, Num(coeff))
    if not flat:
        return ONE
    if len(flat) == 1:
        return flat[0]
    return Mul(tuple(flat))


def pw(base, exponent):
    """Integer power node, with the obvious folds."""
    base = num(base)
    exponent = int(exponent)
    if exponent == 1:
        return base
    if isinstance(base, Num):
        if base.val == 0 and exponent <= 0:
            raise UnsupportedFormError("zero raised to a nonpositive power")
        return Num(base.val ** exponent)
    if exponent == 0:
        return ONE
    if isinstance(base, Pow):
        return pw(base.base, base.exp * exponent)
    return Pow(base, exponent)


def kernel(head, arg):
    if head not in KERNEL_HEADS:
        raise UnsupportedFormError("unsupported kernel head %r" % head)
    arg = num(arg)
    if isinstance(arg, Num):
        folded = _fold_kernel_constant(head, arg.val)
        if folded is not None:
            return folded
    return Kernel(head, arg)


def _fold_kernel_constant(head, q):
    if head == "ln" and q == 1:
        return ZERO
    if head == "exp" and q == 0:
        return ONE
    if head in ("sin", "tan", "arctan") and q == 0:
        return ZERO
    if head == "cos" and q == 0:
        return ONE
    if head == "sqrt":
        if q < 0:
            return None
        r = _fraction_sqrt(q)
        if r is not None:
            return Num(r)
    return None


def _fraction_sqrt(q):
    from math import isqrt
    pn, pd = isqrt(q.numerator), isqrt(q.denominator)
    if pn * pn == q.numerator and pd * pd == q.denominator:
        return Fraction(pn, pd)
    return None


def neg(e):
    return mul(MINUS_ONE, e)


def sub(a, b):
    return add(a, neg(b))


def div(a, b):
    return mul(a, pw(b, -1))


def func_app(name, args, derivs=()):
    return FuncApp(name, args, derivs)


# --- structure helpers -----------------------------------------------------

def children(e):
    if isinstance(e, (Add, Mul)):
        return e.args
    if isinstance(e, Pow):
        return (e.base,)
    if isinstance(e, Kernel):
        return (e.arg,)
    return ()


def free_symbols(e, acc=None):
    """All Symbol objects occurring in e (excluding FuncApp internals)."""
    if acc is None:
        acc = set()
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, Sym):
            acc.add(node.sym)
        elif isinstance(node, FuncApp):
            acc.update(node.args)
            acc.update(node.derivs)
        else:
            stack.extend(children(node))
    return acc


def contains_funcapp(e):
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, FuncApp):
            return True
        stack.extend(children(node))
    return False


def rebuild(e, fn):
    """Rebuild e bottom-up through the constructors, mapping leaves by fn."""
    if isinstance(e, Add):
        return add(*[rebuild(a, fn) for a in e.args])
    if isinstance(e, Mul):
        return mul(*[rebuild(a, fn) for a in e.args])
    if isinstance(e, Pow):
        return pw(rebuild(e.base, fn), e.exp)
    if isinstance(e, Kernel):
        return kernel(e.head, rebuild(e.arg, fn))
    return fn(e)


def substitute(e, bindings):
    """Simultaneous substitution of symbols or whole subterms.

    Keys may be Symbol objects or Expr subtrees; the replacement happens in
    a single pass, so bindings never act on each other's images.
    """
    if not bindings:
        return e
    table = {}
    for key, val in bindings.items():
        if isinstance(key, Symbol):
            key = Sym(key)
        table[key] = num(val)

    def walk(node):
        hit = table.get(node)
        if hit is not None:
            return hit
        if isinstance(node, Add):
            return add(*[walk(a) for a in node.args])
        if isinstance(node, Mul):
            return mul(*[walk(a) for a in node.args])
        if isinstance(node, Pow):
            return pw(walk(node.base), node.exp)
        if isinstance(node, Kernel):
            return kernel(node.head, walk(node.arg))
        return node

    return walk(e)


# --- differentiation -------------------------------------------------------

_KERNEL_DERIVATIVE = {
    "exp": lambda u: Kernel("exp", u),
    "ln": lambda u: pw(u, -1),
    "sqrt": lambda u: div(Num(Fraction(1, 2)), kernel("sqrt", u)),
    "sin": lambda u: kernel("cos", u),
    "cos": lambda u: neg(kernel("sin", u)),
    "tan": lambda u: add(ONE, pw(kernel("tan", u), 2)),
    "arctan": lambda u: pw(add(ONE, pw(u, 2)), -1),
}


def diff_partial(e, s):
    """Exact partial derivative of e w.r.t. symbol s.

    All other symbols are treated as constants; kernels follow the usual
    chain rules (d arctan u = du / (1 + u^2), and so on).
    """
    if isinstance(e, Num):
        return ZERO
    if isinstance(e, Sym):
        return ONE if e.sym is s else ZERO
    if isinstance(e, Add):
        return add(*[diff_partial(a, s) for a in e.args])
    if isinstance(e, Mul):
        terms = []
        for i, a in enumerate(e.args):
            da = diff_partial(a, s)
            if da is ZERO or (isinstance(da, Num) and da.val == 0):
                continue
            rest = e.args[:i] + e.args[i + 1:]
            terms.append(mul(da, *rest))
        return add(*terms)
    if isinstance(e, Pow):
        db = diff_partial(e.base, s)
        if isinstance(db, Num) and db.val == 0:
            return ZERO
        return mul(Num(e.exp), pw(e.base, e.exp - 1), db)
    if isinstance(e, Kernel):
        du = diff_partial(e.arg, s)
        if isinstance(du, Num) and du.val == 0:
            return ZERO
        rule = _KERNEL_DERIVATIVE.get(e.head)
        if rule is None:
            raise UnsupportedFormError("unsupported kernel head %r" % e.head)
        return mul(rule(e.arg), du)
    if isinstance(e, FuncApp):
        raise UnsupportedFormError(
            "derivative notation must be converted to jet coordinates first")
    raise UnsupportedFormError("cannot differentiate %r" % (e,))
