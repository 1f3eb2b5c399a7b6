"""Decision procedures for certain (C), possibility-preserving (SS) and
uncertain (U) consequence, by exhaustive evaluation over valuations.

Value columns come from the kernel as ``bytes`` (one code per valuation row).
Row predicates are turned into 0/1 byte strings with ``bytes.translate`` and
combined with big-int bitwise operations, so scanning stays linear and cheap.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .formula import Formula, atoms, is_conditional_free, parse
from .semantics import (
    DEFAULT,
    CapExceeded,
    Mode,
    SemanticsConfig,
    Valuation,
    value_column,
    valuation_at,
)

__all__ = [
    "Logic",
    "Status",
    "Sequent",
    "Verdict",
    "ConditionalNotAllowed",
    "DEFAULT_SUBSET_CAP",
    "parse_sequent",
    "entails",
    "entails_c",
    "is_theorem_c",
    "entails_ss",
    "entails_u",
    "classical_valid",
    "dual_check",
]

DEFAULT_SUBSET_CAP = 16


class Logic(enum.Enum):
    C = "c"
    SS = "ss"
    U = "u"


class Status(enum.Enum):
    VALID = "valid"
    INVALID = "invalid"


class ConditionalNotAllowed(ValueError):
    pass


@dataclass(frozen=True)
class Sequent:
    premises: tuple[Formula, ...]
    conclusion: Formula

    def __init__(self, premises: Sequence[Formula], conclusion: Formula):
        object.__setattr__(self, "premises", tuple(premises))
        object.__setattr__(self, "conclusion", conclusion)

    def atoms(self) -> tuple[str, ...]:
        names: set[str] = set(atoms(self.conclusion))
        for p in self.premises:
            names.update(atoms(p))
        return tuple(sorted(names))

    def __str__(self) -> str:
        from .formula import render

        return f"{'; '.join(render(p) for p in self.premises)} |- {render(self.conclusion)}".lstrip()


def parse_sequent(text: str) -> Sequent:
    """Parse ``"P1; P2; ... |- C"``. Premises may be empty (``"|- C"``);
    text without a turnstile is read as a bare conclusion."""
    if "|-" in text:
        left, _, right = text.partition("|-")
    else:
        left, right = "", text
    premises = [parse(p) for p in left.split(";") if p.strip()]
    return Sequent(premises, parse(right))


@dataclass
class Verdict:
    status: Status
    logic: Logic
    mode: Mode
    countermodel: Valuation | None = None
    witness_subset: tuple[int, ...] | None = None
    conclusion_theorem: bool = False
    bivalent_only: bool | None = None
    subset_countermodels: dict[tuple[int, ...], Valuation] | None = field(default=None, repr=False)

    @property
    def valid(self) -> bool:
        return self.status is Status.VALID

    def __bool__(self) -> bool:
        return self.valid

    def to_dict(self) -> dict:
        out = {
            "logic": self.logic.value,
            "mode": self.mode.value,
            "status": self.status.value,
            "countermodel": None
            if self.countermodel is None
            else {k: str(v) for k, v in self.countermodel.items},
            "witness_subset": None if self.witness_subset is None else list(self.witness_subset),
            "conclusion_theorem": self.conclusion_theorem,
        }
        if self.bivalent_only is not None:
            out["bivalent_only"] = self.bivalent_only
        if self.subset_countermodels is not None:
            out["subset_countermodels"] = [
                {"subset": list(k), "countermodel": {a: str(x) for a, x in v.items}}
                for k, v in self.subset_countermodels.items()
            ]
        return out


# ---------------------------------------------------------------------------
# column helpers

def _flag_table(pred) -> bytes:
    return bytes(1 if i < 3 and pred(i) else 0 for i in range(256))


_IS_FALSE = _flag_table(lambda x: x == 0)
_NOT_FALSE = _flag_table(lambda x: x > 0)
_IS_TRUE = _flag_table(lambda x: x == 2)
_NOT_TRUE = _flag_table(lambda x: x < 2)
_TIMES3 = bytes(3 * i if i < 3 else 0 for i in range(256))
_GREATER = bytes(1 if i < 9 and i // 3 > i % 3 else 0 for i in range(256))


def _flags(col: bytes, table: bytes) -> int:
    return int.from_bytes(col.translate(table), "big")


def _first_row(flags: int, rows: int) -> int | None:
    if not flags:
        return None
    return flags.to_bytes(rows, "big").find(1)


def _pair(x: bytes, y: bytes, table: bytes) -> bytes:
    code = int.from_bytes(x.translate(_TIMES3), "big") + int.from_bytes(y, "big")
    return code.to_bytes(len(x), "big").translate(table + bytes(256 - len(table)))


class _Context:
    """Shared atom domain and value columns for one check."""

    def __init__(self, formulas, cfg, mode, max_atoms):
        names: set[str] = set()
        for f in formulas:
            names.update(atoms(f))
        self.names = tuple(sorted(names))
        self.cfg = cfg
        self.mode = mode
        self.max_atoms = max_atoms
        self.rows = (2 if mode is Mode.BIVALENT else 3) ** len(self.names)

    def column(self, f: Formula) -> bytes:
        return value_column(f, self.names, self.cfg, self.mode, max_atoms=self.max_atoms)

    def valuation(self, row: int) -> Valuation:
        return valuation_at(row, self.names, self.mode)


def _c_violation(ctx: _Context, premise_cols: Sequence[bytes], concl_col: bytes) -> int | None:
    bad = _flags(concl_col, _IS_FALSE)
    for col in premise_cols:
        if not bad:
            break
        bad &= _flags(col, _NOT_FALSE)
    return _first_row(bad, ctx.rows)


def _conjunction_column(ctx: _Context, cols: Sequence[bytes]) -> bytes:
    if not cols:
        return b"\x02" * ctx.rows
    out = cols[0]
    for col in cols[1:]:
        out = _pair(out, col, ctx.cfg.and_table)
    return out


def _u_violation(ctx: _Context, conj_col: bytes, concl_col: bytes) -> int | None:
    return _first_row(int.from_bytes(_pair(conj_col, concl_col, _GREATER), "big"), ctx.rows)


# ---------------------------------------------------------------------------
# public checks

def entails_c(
    s: Sequent,
    cfg: SemanticsConfig = DEFAULT,
    mode: Mode = Mode.TRIVALENT,
    *,
    max_atoms: int | None = None,
) -> Verdict:
    """Non-falsity preservation: no valuation makes every premise >= 1/2 and
    the conclusion 0. The countermodel is the first such valuation."""
    ctx = _Context((*s.premises, s.conclusion), cfg, mode, max_atoms)
    row = _c_violation(ctx, [ctx.column(p) for p in s.premises], ctx.column(s.conclusion))
    if row is None:
        return Verdict(Status.VALID, Logic.C, mode)
    return Verdict(Status.INVALID, Logic.C, mode, countermodel=ctx.valuation(row))


def is_theorem_c(
    f: Formula,
    cfg: SemanticsConfig = DEFAULT,
    mode: Mode = Mode.TRIVALENT,
    *,
    max_atoms: int | None = None,
) -> Verdict:
    return entails_c(Sequent((), f), cfg, mode, max_atoms=max_atoms)


def entails_ss(
    premise: Formula | None,
    conclusion: Formula,
    cfg: SemanticsConfig = DEFAULT,
    mode: Mode = Mode.TRIVALENT,
    *,
    max_atoms: int | None = None,
) -> Verdict:
    """Strict-truth preservation from a single premise (``None`` means no
    premise, i.e. theoremhood: the conclusion must always be 1)."""
    formulas = (conclusion,) if premise is None else (premise, conclusion)
    ctx = _Context(formulas, cfg, mode, max_atoms)
    bad = _flags(ctx.column(conclusion), _NOT_TRUE)
    if premise is not None:
        bad &= _flags(ctx.column(premise), _IS_TRUE)
    row = _first_row(bad, ctx.rows)
    if row is None:
        return Verdict(Status.VALID, Logic.SS, mode)
    return Verdict(Status.INVALID, Logic.SS, mode, countermodel=ctx.valuation(row))


def _subsets(n: int):
    for k in range(n + 1):
        yield from itertools.combinations(range(n), k)


def entails_u(
    s: Sequent,
    cfg: SemanticsConfig = DEFAULT,
    mode: Mode = Mode.TRIVALENT,
    *,
    max_atoms: int | None = None,
    max_premises: int = DEFAULT_SUBSET_CAP,
    exhaustive: bool = False,
) -> Verdict:
    """Uncertain consequence.

    Valid iff the conclusion is a C-theorem, or for some subset of premises
    (tried smallest first, then lexicographically) the value of their
    conjunction never exceeds the value of the conclusion. An invalid verdict
    carries a valuation where the conjunction of *all* premises exceeds the
    conclusion; with ``exhaustive=True`` one countermodel per subset is kept.
    """
    if len(s.premises) > max_premises:
        raise CapExceeded(f"{len(s.premises)} premises exceeds the subset cap of {max_premises}")
    ctx = _Context((*s.premises, s.conclusion), cfg, mode, max_atoms)
    concl = ctx.column(s.conclusion)
    if _c_violation(ctx, (), concl) is None:
        return Verdict(Status.VALID, Logic.U, mode, conclusion_theorem=True)
    cols = [ctx.column(p) for p in s.premises]
    failures: dict[tuple[int, ...], Valuation] = {}
    for subset in _subsets(len(cols)):
        row = _u_violation(ctx, _conjunction_column(ctx, [cols[i] for i in subset]), concl)
        if row is None:
            return Verdict(Status.VALID, Logic.U, mode, witness_subset=subset)
        if exhaustive:
            failures[subset] = ctx.valuation(row)
    row = _u_violation(ctx, _conjunction_column(ctx, cols), concl)
    assert row is not None  # the full set was among the failed subsets
    return Verdict(
        Status.INVALID,
        Logic.U,
        mode,
        countermodel=ctx.valuation(row),
        subset_countermodels=failures if exhaustive else None,
    )


def entails(
    logic: Logic,
    s: Sequent,
    cfg: SemanticsConfig = DEFAULT,
    mode: Mode = Mode.TRIVALENT,
    *,
    max_atoms: int | None = None,
    max_premises: int = DEFAULT_SUBSET_CAP,
    exhaustive: bool = False,
) -> Verdict:
    if logic is Logic.C:
        return entails_c(s, cfg, mode, max_atoms=max_atoms)
    if logic is Logic.U:
        return entails_u(
            s, cfg, mode, max_atoms=max_atoms, max_premises=max_premises, exhaustive=exhaustive
        )
    if len(s.premises) > 1:
        raise ValueError("SS consequence is defined for a single premise")
    premise = s.premises[0] if s.premises else None
    return entails_ss(premise, s.conclusion, cfg, mode, max_atoms=max_atoms)


def dual_check(
    logic: Logic, s: Sequent, cfg: SemanticsConfig = DEFAULT, **kwargs
) -> Verdict:
    """Trivalent verdict, with ``bivalent_only`` set when the sequent fails
    trivalently but holds once atoms are restricted to classical values."""
    tri = entails(logic, s, cfg, Mode.TRIVALENT, **kwargs)
    bi = entails(logic, s, cfg, Mode.BIVALENT, **kwargs)
    tri.bivalent_only = (not tri.valid) and bi.valid
    return tri


def classical_valid(f: Formula) -> bool:
    """Two-valued tautology check for a conditional-free formula."""
    if not is_conditional_free(f):
        raise ConditionalNotAllowed("classical validity is only defined without '->'")
    names = atoms(f)
    col = value_column(f, names, DEFAULT, Mode.BIVALENT)
    return col == b"\x02" * len(col)
