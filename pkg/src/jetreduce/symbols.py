"""Symbols and the table that owns them.

Every stage of the pipeline shares one SymbolTable.  Declaration order is
significant: it fixes the polynomial variable order, pivot preferences and
all output ordering, which keeps runs reproducible.
"""

from __future__ import annotations

import threading

# symbol kinds
VAR = "var"      # independent variable (t, x, x1, ...)
JET = "jet"      # jet coordinate W[k1,...,km]
PARAM = "param"  # constant parameter (a, b, c, k, A1, ...)
GRAD = "grad"    # gradient of the sought first integral w.r.t. a coordinate
BOUND = "bound"  # auxiliary/bound variable introduced by the solver
ATOM = "atom"    # opaque transcendental kernel atom, internal to normalize

KERNEL_HEADS = ("exp", "ln", "sqrt", "sin", "cos", "tan", "arctan")


class Symbol:
    __slots__ = ("name", "kind", "index", "jet_index")

    def __init__(self, name, kind, index, jet_index=None):
        self.name = name
        self.kind = kind
        self.index = index          # position in declaration order
        self.jet_index = jet_index  # multi-index tuple for JET symbols

    def __repr__(self):
        return self.name

    def __hash__(self):
        return hash((self.name, self.index))

    def __eq__(self, other):
        return self is other


class SymbolTable:
    """Registry of symbols, radical relations and kernel atoms.

    Symbols are append-only; a symbol keeps its index forever.  Radical
    relations are of the form s^2 = P with P a polynomial expression free
    of radicals; they make is_zero complete on expressions involving s.
    """

    def __init__(self):
        self._by_name = {}
        self._order = []
        self._jets = {}
        self._atoms = {}          # (head, canonical key) -> Symbol
        self._atom_defs = {}      # Symbol -> (head, argument Expr)
        self.relations = {}       # Symbol -> rhs Expr (relation sym^2 = rhs)
        self._lock = threading.Lock()
        self._counter = {}

    def declare(self, name, kind):
        with self._lock:
            if name in self._by_name:
                sym = self._by_name[name]
                if sym.kind != kind:
                    raise ValueError(
                        "symbol %r already declared as %s" % (name, sym.kind))
                return sym
            sym = Symbol(name, kind, len(self._order))
            self._by_name[name] = sym
            self._order.append(sym)
            return sym

    def fresh(self, prefix, kind):
        with self._lock:
            n = self._counter.get(prefix, 0) + 1
            self._counter[prefix] = n
            name = "%s%d" % (prefix, n)
            while name in self._by_name:
                n += 1
                self._counter[prefix] = n
                name = "%s%d" % (prefix, n)
            sym = Symbol(name, kind, len(self._order))
            self._by_name[name] = sym
            self._order.append(sym)
            return sym

    def lookup(self, name):
        return self._by_name.get(name)

    def symbols(self):
        return tuple(self._order)

    def __contains__(self, name):
        return name in self._by_name

    # --- jet coordinates ------------------------------------------------

    def jet(self, index):
        """Jet symbol W[k1,...,km] for a multi-index tuple."""
        index = tuple(int(k) for k in index)
        if any(k < 0 for k in index):
            raise ValueError("negative entry in jet multi-index %r" % (index,))
        with self._lock:
            sym = self._jets.get(index)
            if sym is not None:
                return sym
            name = "W[%s]" % ",".join(str(k) for k in index)
            sym = Symbol(name, JET, len(self._order), jet_index=index)
            self._by_name[name] = sym
            self._order.append(sym)
            self._jets[index] = sym
            return sym

    def jets(self):
        return dict(self._jets)

    # --- radical relations ----------------------------------------------

    def add_relation(self, sym, rhs):
        """Register sym^2 = rhs (rhs an Expr polynomial in other symbols)."""
        self.relations[sym] = rhs

    # --- kernel atoms ----------------------------------------------------

    def atom(self, head, key, argument, relation_rhs=None):
        """Opaque symbol standing for head(argument) inside rational forms.

        `key` must be a canonical, hashable rendering of the argument so
        that equal arguments share one atom.  sqrt atoms register their
        defining relation automatically.
        """
        with self._lock:
            sym = self._atoms.get((head, key))
            if sym is not None:
                return sym
            n = len(self._atoms) + 1
            name = "@%s%d" % (head, n)
            while name in self._by_name:
                n += 1
                name = "@%s%d" % (head, n)
            sym = Symbol(name, ATOM, len(self._order))
            self._by_name[name] = sym
            self._order.append(sym)
            self._atoms[(head, key)] = sym
            self._atom_defs[sym] = (head, argument)
        if relation_rhs is not None:
            self.add_relation(sym, relation_rhs)
        return sym

    def atom_definition(self, sym):
        return self._atom_defs.get(sym)
