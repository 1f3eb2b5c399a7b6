"""Independent reference implementations used as test oracles.

Nothing here imports the package's truth tables, kernel or consequence
code: tables are literal transcriptions with Fraction values, and every
check is the textbook definition run by brute force.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from trivalent.formula import And, Atom, Bot, Cond, Not, Or, Top, atoms

ZERO, HALF, ONE = Fraction(0), Fraction(1, 2), Fraction(1)
VALUES = (ZERO, HALF, ONE)


def _grid(rows):
    """Table given as rows for left operand 1, 1/2, 0 and columns for right operand 1, 1/2, 0."""
    order = (ONE, HALF, ZERO)
    return {(x, y): rows[i][j] for i, x in enumerate(order) for j, y in enumerate(order)}


h = HALF
DE_FINETTI = _grid([[1, h, 0], [h, h, h], [h, h, h]])
COOPER = _grid([[1, h, 0], [1, h, 0], [h, h, h]])
SK_AND = _grid([[1, h, 0], [h, h, 0], [0, 0, 0]])
SK_OR = _grid([[1, 1, 1], [1, h, h], [1, h, 0]])
QUASI_AND = _grid([[1, 1, 0], [1, h, 0], [0, 0, 0]])
QUASI_OR = _grid([[1, 1, 1], [1, h, 0], [1, 0, 0]])
NEG = {ONE: ZERO, HALF: HALF, ZERO: ONE}

CONFIGS = {
    "cooper-quasi": (COOPER, QUASI_AND, QUASI_OR),
    "definetti-quasi": (DE_FINETTI, QUASI_AND, QUASI_OR),
    "cooper-sk": (COOPER, SK_AND, SK_OR),
    "definetti-sk": (DE_FINETTI, SK_AND, SK_OR),
}


def value(f, v: dict[str, Fraction], config: str = "cooper-quasi") -> Fraction:
    cond, conj, disj = CONFIGS[config]
    if isinstance(f, Atom):
        return v[f.name]
    if isinstance(f, Top):
        return ONE
    if isinstance(f, Bot):
        return ZERO
    if isinstance(f, Not):
        return NEG[value(f.sub, v, config)]
    x, y = value(f.left, v, config), value(f.right, v, config)
    if isinstance(f, And):
        return conj[x, y]
    if isinstance(f, Or):
        return disj[x, y]
    assert isinstance(f, Cond)
    return cond[x, y]


def valuations(names, bivalent=False):
    vals = (ZERO, ONE) if bivalent else VALUES
    for combo in itertools.product(vals, repeat=len(names)):
        yield dict(zip(names, combo))


def joint_atoms(*fs):
    return tuple(sorted({a for f in fs for a in atoms(f)}))


def c_valid(premises, conclusion, config="cooper-quasi", bivalent=False) -> bool:
    names = joint_atoms(*premises, conclusion)
    for v in valuations(names, bivalent):
        if all(value(p, v, config) >= HALF for p in premises) and value(conclusion, v, config) == 0:
            return False
    return True


def ss_valid(premise, conclusion, config="cooper-quasi", bivalent=False) -> bool:
    fs = (conclusion,) if premise is None else (premise, conclusion)
    names = joint_atoms(*fs)
    for v in valuations(names, bivalent):
        if (premise is None or value(premise, v, config) == 1) and value(conclusion, v, config) != 1:
            return False
    return True


def quasi_conjunction_value(fs, v, config="cooper-quasi"):
    _, conj, _ = CONFIGS[config]
    if not fs:
        return ONE
    out = value(fs[0], v, config)
    for f in fs[1:]:
        out = conj[out, value(f, v, config)]
    return out


def u_valid(premises, conclusion, config="cooper-quasi", bivalent=False) -> bool:
    names = joint_atoms(*premises, conclusion)
    vs = list(valuations(names, bivalent))
    if all(value(conclusion, v, config) >= HALF for v in vs):
        return True
    for k in range(len(premises) + 1):
        for sub in itertools.combinations(premises, k):
            if all(quasi_conjunction_value(sub, v, config) <= value(conclusion, v, config) for v in vs):
                return True
    return False


def world_dict(valuation) -> dict[str, Fraction]:
    return {k: Fraction(int(x), 2) for k, x in valuation.items}


def probability(f, credence, config="cooper-quasi") -> Fraction:
    t = fa = Fraction(0)
    for world, w in credence.weights.items():
        x = value(f, world_dict(world), config)
        if x == 1:
            t += w
        elif x == 0:
            fa += w
    return ONE if t + fa == 0 else t / (t + fa)


def classical_conditional(c, a, credence) -> Fraction:
    num = den = Fraction(0)
    for world, w in credence.weights.items():
        v = world_dict(world)
        if value(a, v) == 1:
            den += w
            if value(c, v) == 1:
                num += w
    return num / den
