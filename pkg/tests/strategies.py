"""Hypothesis strategies for formulas, sequents and credences."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from trivalent.formula import BOT, TOP, And, Atom, Cond, Not, Or
from trivalent.probability import Credence
from trivalent.semantics import Mode, enumerate_valuations

NAMES = ("a", "b", "c")
CONFIG_NAMES = ("cooper-quasi", "definetti-quasi", "cooper-sk", "definetti-sk")


def formulas(names=NAMES, max_leaves=8, conditionals=True, constants=True):
    leaves = [st.sampled_from([Atom(n) for n in names])]
    if constants:
        leaves.append(st.sampled_from([TOP, BOT]))
    base = st.one_of(*leaves)

    def extend(children):
        ops = [
            children.map(Not),
            st.builds(And, children, children),
            st.builds(Or, children, children),
        ]
        if conditionals:
            ops.append(st.builds(Cond, children, children))
        return st.one_of(*ops)

    return st.recursive(base, extend, max_leaves=max_leaves)


classical_formulas = formulas(conditionals=False)


@st.composite
def credences(draw, names=NAMES, mode=Mode.BIVALENT, max_support=6):
    worlds = list(enumerate_valuations(names, mode))
    support = draw(st.lists(st.sampled_from(worlds), min_size=1, max_size=max_support, unique=True))
    weights = draw(st.lists(st.integers(1, 20), min_size=len(support), max_size=len(support)))
    total = sum(weights)
    return Credence.of(names, mode, {v: Fraction(w, total) for v, w in zip(support, weights)})
