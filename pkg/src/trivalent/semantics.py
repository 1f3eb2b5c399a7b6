"""Trivalent truth tables, valuations and exhaustive table evaluation."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from . import kernel
from ._opcodes import OP_AND, OP_ATOM, OP_BOT, OP_COND, OP_NOT, OP_OR, OP_TOP
from .formula import And, Atom, Bot, Formula, Not, Or, Top, atoms

__all__ = [
    "TruthValue",
    "Conditional",
    "Connectives",
    "SemanticsConfig",
    "DEFAULT",
    "Mode",
    "Valuation",
    "CapExceeded",
    "UnassignedAtom",
    "DEFAULT_CAPS",
    "evaluate",
    "enumerate_valuations",
    "valuation_at",
    "truth_table",
    "equivalent",
    "compile_formula",
    "value_column",
]


class TruthValue(enum.IntEnum):
    """The three semantic values, coded 0/1/2 so that order is preserved."""

    FALSE = 0
    INDETERMINATE = 1
    TRUE = 2

    @property
    def fraction(self) -> Fraction:
        return Fraction(int(self), 2)

    def __str__(self) -> str:
        return ("0", "1/2", "1")[self]

    @classmethod
    def parse(cls, text: str) -> TruthValue:
        try:
            return {"0": cls.FALSE, "1/2": cls.INDETERMINATE, "1": cls.TRUE}[text.strip()]
        except KeyError:
            raise ValueError(f"not a truth value: {text!r}") from None


F0, HALF, T1 = TruthValue.FALSE, TruthValue.INDETERMINATE, TruthValue.TRUE


class Conditional(enum.Enum):
    COOPER = "cooper"
    DE_FINETTI = "definetti"


class Connectives(enum.Enum):
    QUASI = "quasi"
    STRONG_KLEENE = "sk"


class Mode(enum.Enum):
    TRIVALENT = "trivalent"
    BIVALENT = "bivalent"


def _table(fn) -> bytes:
    return bytes(fn(x, y) for x in range(3) for y in range(3))


# Codes: 0 = 0, 1 = 1/2, 2 = 1. Tables are indexed by 3*x + y.
COOPER_TABLE = _table(lambda a, c: 1 if a == 0 else c)
DE_FINETTI_TABLE = _table(lambda a, c: c if a == 2 else 1)
SK_AND_TABLE = _table(min)
SK_OR_TABLE = _table(max)
QUASI_AND_TABLE = _table(lambda x, y: y if x == 1 else x if y == 1 else min(x, y))
QUASI_OR_TABLE = _table(lambda x, y: y if x == 1 else x if y == 1 else max(x, y))


@dataclass(frozen=True)
class SemanticsConfig:
    conditional: Conditional = Conditional.COOPER
    connectives: Connectives = Connectives.QUASI

    NAMES = {
        "cooper-quasi": (Conditional.COOPER, Connectives.QUASI),
        "definetti-quasi": (Conditional.DE_FINETTI, Connectives.QUASI),
        "cooper-sk": (Conditional.COOPER, Connectives.STRONG_KLEENE),
        "definetti-sk": (Conditional.DE_FINETTI, Connectives.STRONG_KLEENE),
    }

    @classmethod
    def from_name(cls, name: str) -> SemanticsConfig:
        try:
            return cls(*cls.NAMES[name])
        except KeyError:
            raise ValueError(
                f"unknown semantics {name!r}; choose from {', '.join(cls.NAMES)}"
            ) from None

    @property
    def name(self) -> str:
        for k, v in self.NAMES.items():
            if v == (self.conditional, self.connectives):
                return k
        raise AssertionError(self)  # pragma: no cover

    @property
    def cond_table(self) -> bytes:
        return COOPER_TABLE if self.conditional is Conditional.COOPER else DE_FINETTI_TABLE

    @property
    def and_table(self) -> bytes:
        return QUASI_AND_TABLE if self.connectives is Connectives.QUASI else SK_AND_TABLE

    @property
    def or_table(self) -> bytes:
        return QUASI_OR_TABLE if self.connectives is Connectives.QUASI else SK_OR_TABLE


DEFAULT = SemanticsConfig()

DEFAULT_CAPS = {Mode.TRIVALENT: 12, Mode.BIVALENT: 20}


class CapExceeded(ValueError):
    pass


class UnassignedAtom(KeyError):
    pass


@dataclass(frozen=True)
class Valuation:
    """Total assignment of truth values to a finite, ordered set of atoms."""

    items: tuple[tuple[str, TruthValue], ...]
    mode: Mode = Mode.TRIVALENT

    def __post_init__(self):
        if self.mode is Mode.BIVALENT and any(v is HALF for _, v in self.items):
            raise ValueError("bivalent valuation assigns 1/2")

    @classmethod
    def of(cls, mapping: Mapping[str, TruthValue | int | str], mode: Mode = Mode.TRIVALENT):
        def coerce(v):
            if isinstance(v, str):
                return TruthValue.parse(v)
            return TruthValue(v)

        return cls(tuple(sorted((k, coerce(v)) for k, v in mapping.items())), mode)

    @property
    def assignment(self) -> dict[str, TruthValue]:
        return dict(self.items)

    @property
    def atoms(self) -> tuple[str, ...]:
        return tuple(k for k, _ in self.items)

    def __getitem__(self, name: str) -> TruthValue:
        for k, v in self.items:
            if k == name:
                return v
        raise UnassignedAtom(name)

    def key(self) -> str:
        """``"a=1,b=1/2"`` form, used by the credence file format."""
        return ",".join(f"{k}={v}" for k, v in self.items)

    def __str__(self) -> str:
        return ", ".join(f"v({k})={v}" for k, v in self.items) or "(empty valuation)"


def evaluate(f: Formula, v: Valuation | Mapping[str, TruthValue], cfg: SemanticsConfig = DEFAULT) -> TruthValue:
    """Value of ``f`` under ``v`` by recursion over the configured tables."""
    assignment = v.assignment if isinstance(v, Valuation) else v
    cond_t, and_t, or_t = cfg.cond_table, cfg.and_table, cfg.or_table

    def go(g: Formula) -> int:
        if isinstance(g, Atom):
            try:
                return int(assignment[g.name])
            except KeyError:
                raise UnassignedAtom(g.name) from None
        if isinstance(g, Top):
            return 2
        if isinstance(g, Bot):
            return 0
        if isinstance(g, Not):
            return 2 - go(g.sub)
        x, y = go(g.left), go(g.right)
        if isinstance(g, And):
            return and_t[3 * x + y]
        if isinstance(g, Or):
            return or_t[3 * x + y]
        return cond_t[3 * x + y]

    return TruthValue(go(f))


def _check_cap(n: int, mode: Mode, max_atoms: int | None):
    cap = DEFAULT_CAPS[mode] if max_atoms is None else max_atoms
    if n > cap:
        raise CapExceeded(f"{n} atoms exceeds the {mode.value} cap of {cap}")


def _values(mode: Mode) -> tuple[TruthValue, ...]:
    return (F0, T1) if mode is Mode.BIVALENT else (F0, HALF, T1)


def enumerate_valuations(
    atom_set: Iterable[str], mode: Mode = Mode.TRIVALENT, *, max_atoms: int | None = None
) -> Iterator[Valuation]:
    """All valuations of ``atom_set`` in lexicographic order.

    The first atom (after sorting) is the most significant digit and values
    run 0, 1/2, 1 (0, 1 in bivalent mode).
    """
    names = tuple(sorted(set(atom_set)))
    _check_cap(len(names), mode, max_atoms)
    for combo in itertools.product(_values(mode), repeat=len(names)):
        yield Valuation(tuple(zip(names, combo)), mode)


def valuation_at(index: int, names: tuple[str, ...], mode: Mode) -> Valuation:
    """The ``index``-th valuation of ``enumerate_valuations(names, mode)``."""
    vals = _values(mode)
    base = len(vals)
    digits = []
    for _ in names:
        index, r = divmod(index, base)
        digits.append(vals[r])
    return Valuation(tuple(zip(names, reversed(digits))), mode)


def compile_formula(f: Formula, names: tuple[str, ...]) -> list[int]:
    """Postfix program for the kernel; atoms are indexed into ``names``."""
    index = {n: i for i, n in enumerate(names)}
    code: list[int] = []

    def go(g: Formula):
        if isinstance(g, Atom):
            try:
                code.extend((OP_ATOM, index[g.name]))
            except KeyError:
                raise UnassignedAtom(g.name) from None
        elif isinstance(g, Top):
            code.append(OP_TOP)
        elif isinstance(g, Bot):
            code.append(OP_BOT)
        elif isinstance(g, Not):
            go(g.sub)
            code.append(OP_NOT)
        else:
            go(g.left)
            go(g.right)
            code.append(OP_AND if isinstance(g, And) else OP_OR if isinstance(g, Or) else OP_COND)

    go(f)
    return code


def value_column(
    f: Formula,
    names: tuple[str, ...],
    cfg: SemanticsConfig = DEFAULT,
    mode: Mode = Mode.TRIVALENT,
    *,
    max_atoms: int | None = None,
) -> bytes:
    """Value codes of ``f`` at every valuation of ``names``, in enumeration order."""
    _check_cap(len(names), mode, max_atoms)
    return kernel.evaluate(
        compile_formula(f, names),
        len(names),
        mode is Mode.BIVALENT,
        cfg.and_table,
        cfg.or_table,
        cfg.cond_table,
    )


def truth_table(
    f: Formula,
    cfg: SemanticsConfig = DEFAULT,
    mode: Mode = Mode.TRIVALENT,
    *,
    max_atoms: int | None = None,
) -> list[tuple[Valuation, TruthValue]]:
    names = atoms(f)
    col = value_column(f, names, cfg, mode, max_atoms=max_atoms)
    return [
        (v, TruthValue(x))
        for v, x in zip(enumerate_valuations(names, mode, max_atoms=max_atoms), col)
    ]


def equivalent(
    f: Formula,
    g: Formula,
    cfg: SemanticsConfig = DEFAULT,
    mode: Mode = Mode.TRIVALENT,
    *,
    max_atoms: int | None = None,
) -> bool:
    """True iff ``f`` and ``g`` agree at every valuation of their joint atoms."""
    names = tuple(sorted(set(atoms(f)) | set(atoms(g))))
    return value_column(f, names, cfg, mode, max_atoms=max_atoms) == value_column(
        g, names, cfg, mode, max_atoms=max_atoms
    )
