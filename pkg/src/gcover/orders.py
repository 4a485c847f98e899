"""Term orders on exponent vectors.

Each order turns an exponent vector into a sort key; keys compare
ascending, so a larger key means a larger power product. Every order
here is total, multiplicative and has 1 as its minimum, which is what
the Groebner machinery requires. Keys of a block order are tuples of
sub-keys, so they stay comparable as long as both operands come from
the same ring.
"""

from __future__ import annotations


class TermOrder:
    name = "?"

    def key(self, exp):
        raise NotImplementedError

    def compare(self, e1, e2):
        k1, k2 = self.key(e1), self.key(e2)
        if k1 < k2:
            return -1
        if k1 > k2:
            return 1
        return 0

    def __eq__(self, other):
        return type(self) is type(other)

    def __hash__(self):
        return hash(type(self))

    def __repr__(self):
        return f"<order {self.name}>"


class _Lex(TermOrder):
    name = "lex"

    def key(self, exp):
        return exp


class _GrLex(TermOrder):
    name = "grlex"

    def key(self, exp):
        return (sum(exp), exp)


class _GrevLex(TermOrder):
    name = "grevlex"

    def key(self, exp):
        # same degree: smaller exponent in the last differing position wins
        return (sum(exp), tuple(-e for e in reversed(exp)))


LEX = _Lex()
GRLEX = _GrLex()
GREVLEX = _GrevLex()

_BY_NAME = {"lex": LEX, "grlex": GRLEX, "grevlex": GREVLEX}


def by_name(name):
    try:
        return _BY_NAME[name]
    except KeyError:
        raise ValueError(f"unknown term order {name!r}") from None


class BlockOrder(TermOrder):
    """Compare block by block; earlier blocks dominate.

    ``blocks`` is a sequence of (indices, suborder) pairs whose index
    tuples partition range(nvars) of the ring the order is used with.
    """

    def __init__(self, blocks):
        self.blocks = tuple((tuple(ix), sub) for ix, sub in blocks)
        self.name = "block(" + ",".join(sub.name for _, sub in self.blocks) + ")"

    def key(self, exp):
        return tuple(sub.key(tuple(exp[i] for i in ix)) for ix, sub in self.blocks)

    def __eq__(self, other):
        return isinstance(other, BlockOrder) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)
