"""Registry of inference principles with their expected verdicts, plus the
machinery to recompute every verdict and report disagreements.

Sequent and theorem principles are written over uppercase schema letters and
instantiated with one fresh lowercase atom per letter. Meta-rules (rules
with a side condition) are checked by bounded exhaustive instantiation: all
formulas over two atoms up to a depth bound, deduplicated by the truth
function they denote, since every check here is truth-functional.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .consequence import Logic, Sequent, Status, Verdict, entails
from .formula import (
    BOT,
    TOP,
    And,
    Atom,
    Cond,
    Formula,
    Not,
    Or,
    atoms,
    parse,
    render,
    substitute,
)
from .semantics import (
    DEFAULT,
    Conditional,
    Connectives,
    Mode,
    SemanticsConfig,
    TruthValue,
    Valuation,
    enumerate_valuations,
)

__all__ = [
    "Kind",
    "Mark",
    "Principle",
    "PRINCIPLES",
    "FIXTURES",
    "principle",
    "instantiate",
    "evaluate_principle",
    "meta_rule_check",
    "MetaResult",
    "ReportRow",
    "Report",
    "full_report",
    "BoundTooLarge",
]


class Kind(enum.Enum):
    SEQUENT = "sequent"
    THEOREM = "theorem"
    META_RULE = "meta-rule"


class Mark(enum.Enum):
    """Three-way table marks: valid in general, only for classical atoms, or not at all."""

    VALID = "✓"
    BIVALENT_ONLY = "(✓)"
    INVALID = "✗"

    def expected(self, mode: Mode) -> Status:
        if self is Mark.VALID or (self is Mark.BIVALENT_ONLY and mode is Mode.BIVALENT):
            return Status.VALID
        return Status.INVALID


@dataclass(frozen=True)
class Principle:
    """One row of the principles table.

    ``sequents`` holds ``(premises, conclusion)`` pairs over schema letters;
    the principle holds iff every listed sequent does (two entries encode an
    "if and only if"). Meta-rules have no sequents; ``rule`` names the
    bounded checker used for them.
    """

    name: str
    kind: Kind
    marks: dict[Logic, Mark]
    sequents: tuple[tuple[tuple[str, ...], str], ...] = ()
    rule: str | None = None
    description: str = ""

    def expected(self, logic: Logic, mode: Mode) -> Status:
        return self.marks[logic].expected(mode)


def _p(name, kind, c, u, *sequents, rule=None, description=""):
    marks = {Logic.C: Mark(c), Logic.U: Mark(u)}
    seqs = tuple((tuple(prem), concl) for prem, concl in sequents)
    if not description:
        description = "; ".join(
            f"{', '.join(prem)} |= {concl}".lstrip(", ").strip() for prem, concl in seqs
        )
    return Principle(name, kind, marks, seqs, rule, description)


S, TH, M = Kind.SEQUENT, Kind.THEOREM, Kind.META_RULE
V, B, X = "✓", "(✓)", "✗"

PRINCIPLES: tuple[Principle, ...] = (
    _p("Logical Truth", TH, V, V, ((), "A -> T")),
    _p("Law of Identity", TH, V, V, ((), "A -> A")),
    _p("Supraclassicality (Laws)", M, B, B, rule="supraclassical_laws",
       description="for A without ->: if |=CL A then |= A"),
    _p("Left Logical Equivalence", M, V, V, rule="left_logical_equivalence",
       description="if A |=C B and B |=C A then A -> C |= B -> C"),
    _p("Stronger-Than-Material", S, B, B, (("A -> B",), "A => B")),
    _p("Conjunctive Sufficiency", S, V, B, (("A", "B"), "A -> B")),
    _p("AND", S, V, V, (("A -> B", "A -> C"), "A -> (B & C)")),
    _p("OR", S, V, B, (("A -> C", "B -> C"), "(A | B) -> C")),
    _p("Cautious Transitivity", S, V, B, (("A -> B", "(A & B) -> C"), "A -> C")),
    _p("Cautious Monotonicity", S, V, V, (("A -> B", "A -> C"), "(A & C) -> B")),
    _p("Rational Monotonicity", S, V, V, (("A -> B", "~(A -> ~C)"), "(A & C) -> B")),
    _p("Reciprocity", S, V, B,
       (("A -> B", "B -> A", "A -> C"), "B -> C"),
       (("A -> B", "B -> A", "B -> C"), "A -> C"),
       description="A -> B, B -> A |= (A -> C) iff (B -> C)"),
    _p("Right Weakening", M, V, B, rule="right_weakening",
       description="if B |=C C then A -> B |= A -> C"),
    _p("Rule of Conditional K", M, V, B, rule="conditional_k",
       description="if A1, ..., An |=C C then B -> A1, ..., B -> An |= B -> C"),
    _p("Supraclassicality (Inferences)", M, X, X, rule="supraclassical_inferences",
       description="if Gamma |=CL B then Gamma |= B"),
    _p("Modus Ponens", S, V, B, (("A -> B", "A"), "B")),
    _p("Modus Tollens", S, B, B, (("A -> B", "~B"), "~A")),
    _p("Simplifying Disjunctive Antecedents", S, B, B,
       (("(A | B) -> C",), "(A -> C) & (B -> C)")),
    _p("Import-Export", S, V, V,
       (("A -> (B -> C)",), "(A & B) -> C"),
       (("(A & B) -> C",), "A -> (B -> C)"),
       description="A -> (B -> C) iff (A & B) -> C"),
    _p("Or-to-If", S, V, X, (("~A | B",), "A -> B")),
    _p("Conditional Excluded Middle", TH, V, V, ((), "(A -> B) | (A -> ~B)")),
    _p("Aristotle's Thesis", TH, V, V, ((), "~(~A -> A)")),
    _p("Boethius's Thesis", TH, V, V, ((), "(A -> C) -> ~(A -> ~C)")),
    _p("Contraposition", S, B, X, (("A -> C",), "~C -> ~A")),
    _p("Monotonicity", S, V, X, (("A -> C",), "(A & B) -> C")),
    _p("Transitivity", S, V, X, (("A -> B", "B -> C"), "A -> C")),
)

# Stress instances where a letter is itself a conditional. With classical
# atoms the nested conditional can still be 1/2, so these fail in U (and
# Modus Tollens also in C) in both modes.
FIXTURES: tuple[Principle, ...] = (
    _p("Modus Ponens (nested consequent)", S, V, X, (("A -> (C -> D)", "A"), "C -> D")),
    _p("Modus Tollens (nested consequent)", S, X, X, (("A -> (C -> D)", "~(C -> D)"), "~A")),
    _p("McGee election argument", S, V, X, (("(R | N) -> (~R -> N)", "R | N"), "~R -> N")),
)


def principle(name: str) -> Principle:
    for p in (*PRINCIPLES, *FIXTURES):
        if p.name.lower() == name.lower():
            return p
    raise KeyError(name)


def instantiate(p: Principle) -> list[Sequent]:
    """Sequents of ``p`` with each schema letter replaced by a fresh atom."""
    out = []
    for prem, concl in p.sequents:
        schemas = [parse(s, schema=True) for s in (*prem, concl)]
        letters = sorted({a for f in schemas for a in atoms(f)})
        binding = {x: Atom(x.lower()) for x in letters}
        inst = [substitute(f, binding) for f in schemas]
        out.append(Sequent(inst[:-1], inst[-1]))
    return out


# ---------------------------------------------------------------------------
# Truth functions over a small valuation space, as (true-rows, false-rows)
# bitmasks. Rows not in either mask are indeterminate.


@dataclass(frozen=True)
class _Fn:
    t: int
    f: int


class _Space:
    """Connectives acting on truth functions over the valuations of ``names``."""

    def __init__(self, names: tuple[str, ...], mode: Mode, cfg: SemanticsConfig):
        self.names = names
        self.mode = mode
        self.cfg = cfg
        self.valuations = list(enumerate_valuations(names, mode))
        self.rows = len(self.valuations)
        self.full = (1 << self.rows) - 1
        self.classical_rows = 0
        for i, v in enumerate(self.valuations):
            if all(x is not TruthValue.INDETERMINATE for _, x in v.items):
                self.classical_rows |= 1 << i
        self.top = _Fn(self.full, 0)
        self.bot = _Fn(0, self.full)

    def atom(self, name: str) -> _Fn:
        t = f = 0
        for i, v in enumerate(self.valuations):
            x = v[name]
            if x is TruthValue.TRUE:
                t |= 1 << i
            elif x is TruthValue.FALSE:
                f |= 1 << i
        return _Fn(t, f)

    def neg(self, x: _Fn) -> _Fn:
        return _Fn(x.f, x.t)

    def conj(self, x: _Fn, y: _Fn) -> _Fn:
        if self.cfg.connectives is Connectives.QUASI:
            f = x.f | y.f
            return _Fn((x.t | y.t) & ~f & self.full, f)
        return _Fn(x.t & y.t, x.f | y.f)

    def disj(self, x: _Fn, y: _Fn) -> _Fn:
        if self.cfg.connectives is Connectives.QUASI:
            t = x.t | y.t
            return _Fn(t, (x.f | y.f) & ~t & self.full)
        return _Fn(x.t | y.t, x.f & y.f)

    def cond(self, x: _Fn, y: _Fn) -> _Fn:
        if self.cfg.conditional is Conditional.COOPER:
            live = self.full & ~x.f
        else:
            live = x.t
        return _Fn(live & y.t, live & y.f)

    def apply(self, f: Formula, env: dict[str, _Fn]) -> _Fn:
        if isinstance(f, Atom):
            return env[f.name]
        if f == TOP:
            return self.top
        if f == BOT:
            return self.bot
        if isinstance(f, Not):
            return self.neg(self.apply(f.sub, env))
        x, y = self.apply(f.left, env), self.apply(f.right, env)
        if isinstance(f, And):
            return self.conj(x, y)
        if isinstance(f, Or):
            return self.disj(x, y)
        return self.cond(x, y)

    def pool(self, depth: int, *, conditionals: bool = True, classical: bool = False):
        """Representatives of every truth function expressible over
        ``names`` with formulas of depth at most ``depth``.

        Returns ``(formula, fn)`` pairs, shallowest representative first.
        ``classical=True`` keeps only functions that never take 1/2.
        """
        seen: dict[_Fn, Formula] = {}
        layers: list[list[tuple[Formula, _Fn]]] = [[]]
        for f in [*(Atom(n) for n in self.names), TOP, BOT]:
            fn = self.apply(f, {n: self.atom(n) for n in self.names})
            if fn not in seen:
                seen[fn] = f
                layers[0].append((f, fn))
        binops: list[tuple[type, Callable]] = [(And, self.conj), (Or, self.disj)]
        if conditionals:
            binops.append((Cond, self.cond))
        for d in range(1, depth + 1):
            older = [item for layer in layers[:-1] for item in layer]
            last = layers[-1]
            new: list[tuple[Formula, _Fn]] = []

            def add(f, fn):
                if fn not in seen:
                    seen[fn] = f
                    new.append((f, fn))

            for f, fn in last:
                add(Not(f), self.neg(fn))
            for ctor, op in binops:
                for (f1, x), (f2, y) in itertools.chain(
                    itertools.product(last, older),
                    itertools.product(older, last),
                    itertools.product(last, last),
                ):
                    add(ctor(f1, f2), op(x, y))
            layers.append(new)
        out = [item for layer in layers for item in layer]
        if classical:
            out = [(f, fn) for f, fn in out if (fn.t | fn.f) == self.full]
        return out

    # consequence on truth functions ------------------------------------

    def c_valid(self, premises: Iterable[_Fn], concl: _Fn) -> int:
        """Rows where every premise is non-false and the conclusion false."""
        bad = concl.f
        for p in premises:
            bad &= ~p.f
        return bad

    def conj_all(self, premises: Iterable[_Fn]) -> _Fn:
        # 1/2 is the quasi-conjunction unit, so folding from T would be wrong
        out = None
        for p in premises:
            out = p if out is None else self.conj(out, p)
        return self.top if out is None else out

    def u_valid(self, premises: list[_Fn], concl: _Fn) -> bool:
        if concl.f == 0:
            return True
        for k in range(len(premises) + 1):
            for sub in itertools.combinations(premises, k):
                conj = self.conj_all(sub)
                if conj.t & ~concl.t == 0 and concl.f & ~conj.f == 0:
                    return True
        return False

    def holds(self, logic: Logic, premises: list[_Fn], concl: _Fn) -> bool:
        if logic is Logic.C:
            return self.c_valid(premises, concl) == 0
        if logic is Logic.U:
            return self.u_valid(premises, concl)
        raise ValueError(f"meta-rules are defined for C and U, not {logic}")

    def first_bad_row(self, logic: Logic, premises: list[_Fn], concl: _Fn) -> Valuation:
        if logic is Logic.C:
            bad = self.c_valid(premises, concl)
        else:
            conj = self.conj_all(premises)
            # conjunction strictly above the conclusion
            bad = (conj.t & ~concl.t) | (concl.f & ~conj.f)
        return self.valuations[(bad & -bad).bit_length() - 1]


# ---------------------------------------------------------------------------
# Meta-rules


class BoundTooLarge(ValueError):
    pass


@dataclass
class MetaResult:
    violation: bool
    instance: dict[str, Formula] | None = None
    countermodel: Valuation | None = None
    instances_checked: int = 0
    depth_bound: int = 0

    def describe(self) -> str:
        if not self.violation:
            return f"no violation found (verified at depth bound {self.depth_bound}, {self.instances_checked} instances)"
        inst = ", ".join(f"{k} := {render(v)}" for k, v in (self.instance or {}).items())
        return f"violation found: {inst}; countermodel {self.countermodel}"


META_NAMES = ("a", "b")
DEFAULT_INSTANCE_CAP = 20_000_000


def _letters_pool(space: _Space, mode: Mode, depth: int):
    # Letters are the sentential variables of the rule: classical-valued in
    # bivalent mode, unrestricted otherwise.
    return space.pool(depth, classical=mode is Mode.BIVALENT)


def _check_budget(n: int, cap: int):
    if n > cap:
        raise BoundTooLarge(f"{n} instances exceed the instance cap of {cap}")


def _supraclassical_laws(space, logic, mode, depth, cap) -> MetaResult:
    pool = space.pool(depth, conditionals=False)
    for i, (f, fn) in enumerate(pool, 1):
        classically_valid = fn.t & space.classical_rows == space.classical_rows
        if classically_valid and fn.f:
            return MetaResult(True, {"A": f}, space.first_bad_row(Logic.C, [], fn), i, depth)
    return MetaResult(False, instances_checked=len(pool), depth_bound=depth)


def _left_logical_equivalence(space, logic, mode, depth, cap) -> MetaResult:
    pool = _letters_pool(space, mode, depth)
    _check_budget(len(pool) ** 3, cap)
    by_falsity: dict[int, list] = {}
    for item in pool:
        by_falsity.setdefault(item[1].f, []).append(item)
    checked = 0
    for group in by_falsity.values():
        for (fa, a), (fb, b) in itertools.product(group, repeat=2):
            for fc, c in pool:
                checked += 1
                prem, concl = space.cond(a, c), space.cond(b, c)
                if not space.holds(logic, [prem], concl):
                    return MetaResult(
                        True, {"A": fa, "B": fb, "C": fc},
                        space.first_bad_row(logic, [prem], concl), checked, depth,
                    )
    return MetaResult(False, instances_checked=checked, depth_bound=depth)


def _right_weakening(space, logic, mode, depth, cap) -> MetaResult:
    pool = _letters_pool(space, mode, depth)
    _check_budget(len(pool) ** 3, cap)
    checked = 0
    for (fb, b), (fc, c) in itertools.product(pool, repeat=2):
        if c.f & ~b.f:  # side condition B |=C C fails
            continue
        for fa, a in pool:
            checked += 1
            prem, concl = space.cond(a, b), space.cond(a, c)
            if not space.holds(logic, [prem], concl):
                return MetaResult(
                    True, {"A": fa, "B": fb, "C": fc},
                    space.first_bad_row(logic, [prem], concl), checked, depth,
                )
    return MetaResult(False, instances_checked=checked, depth_bound=depth)


def _conditional_k(space, logic, mode, depth, cap, max_premises: int = 2) -> MetaResult:
    pool = _letters_pool(space, mode, depth)
    _check_budget(sum(len(pool) ** (n + 2) for n in range(1, max_premises + 1)), cap)
    checked = 0
    for n in range(1, max_premises + 1):
        for prems in itertools.combinations_with_replacement(pool, n):
            falsity = 0
            for _, x in prems:
                falsity |= x.f
            for fc, c in pool:
                if c.f & ~falsity:  # side condition A1..An |=C C fails
                    continue
                for fb, b in pool:
                    checked += 1
                    lifted = [space.cond(b, x) for _, x in prems]
                    concl = space.cond(b, c)
                    if not space.holds(logic, lifted, concl):
                        inst = {f"A{i + 1}": f for i, (f, _) in enumerate(prems)}
                        inst.update(B=fb, C=fc)
                        return MetaResult(
                            True, inst, space.first_bad_row(logic, lifted, concl), checked, depth
                        )
    return MetaResult(False, instances_checked=checked, depth_bound=depth)


def _supraclassical_inferences(space, logic, mode, depth, cap) -> MetaResult:
    # Classical consequence is judged on propositional form: forms over
    # letters P, Q without '->', letters instantiated by arbitrary formulas
    # (the rule quantifies over all sentences, conditionals included).
    form_space = _Space(("p", "q"), Mode.TRIVALENT, space.cfg)
    forms = form_space.pool(min(depth, 2), conditionals=False)
    classical = form_space.classical_rows
    pool = space.pool(depth)
    _check_budget(len(forms) ** 2 * len(pool) ** 2, cap)
    checked = 0
    for (fx, x), (fy, y) in itertools.product(forms, repeat=2):
        if y.f & ~x.f & classical:  # X |=CL Y fails
            continue
        for (fp, p), (fq, q) in itertools.product(pool, repeat=2):
            checked += 1
            env = {"p": p, "q": q}
            prem, concl = space.apply(fx, env), space.apply(fy, env)
            if not space.holds(logic, [prem], concl):
                binding = {"p": fp, "q": fq}
                return MetaResult(
                    True,
                    {"Gamma": substitute(fx, binding), "B": substitute(fy, binding)},
                    space.first_bad_row(logic, [prem], concl),
                    checked,
                    depth,
                )
    return MetaResult(False, instances_checked=checked, depth_bound=depth)


# Default depth bounds used by the report. The conditional-free pool for
# laws is small enough to go one level deeper.
DEFAULT_META_DEPTH = {
    "supraclassical_laws": 2,
    "left_logical_equivalence": 1,
    "right_weakening": 1,
    "conditional_k": 1,
    "supraclassical_inferences": 1,
}

_META_CHECKERS = {
    "supraclassical_laws": _supraclassical_laws,
    "left_logical_equivalence": _left_logical_equivalence,
    "right_weakening": _right_weakening,
    "conditional_k": _conditional_k,
    "supraclassical_inferences": _supraclassical_inferences,
}


def meta_rule_check(
    p: Principle,
    logic: Logic,
    mode: Mode = Mode.TRIVALENT,
    depth_bound: int | None = None,
    cfg: SemanticsConfig = DEFAULT,
    *,
    instance_cap: int = DEFAULT_INSTANCE_CAP,
) -> MetaResult:
    """Bounded search for an instance of a meta-rule whose side condition
    holds but whose conclusion sequent fails.

    Instances range over formulas in two atoms of depth at most
    ``depth_bound`` (a per-rule default when ``None``). A negative result only certifies the bound.

    Raises:
        BoundTooLarge: if the instance count would exceed ``instance_cap``.
    """
    if p.kind is not Kind.META_RULE:
        raise ValueError(f"{p.name} is not a meta-rule")
    if depth_bound is None:
        depth_bound = DEFAULT_META_DEPTH[p.rule]
    if depth_bound < 1:
        raise ValueError("depth_bound must be at least 1")
    space = _Space(META_NAMES, mode, cfg)
    return _META_CHECKERS[p.rule](space, logic, mode, depth_bound, instance_cap)


# ---------------------------------------------------------------------------
# Evaluation and report


def evaluate_principle(
    p: Principle,
    logic: Logic,
    mode: Mode = Mode.TRIVALENT,
    cfg: SemanticsConfig = DEFAULT,
    *,
    depth_bound: int | None = None,
) -> Verdict:
    """Verdict for ``p`` in ``logic`` and ``mode``.

    For sequent and theorem principles, the fresh-atom instance is decided
    exactly; a principle with several sequents fails at the first failing
    one. Meta-rules go through :func:`meta_rule_check`.
    """
    if p.kind is Kind.META_RULE:
        res = meta_rule_check(p, logic, mode, depth_bound, cfg)
        if res.violation:
            return Verdict(Status.INVALID, logic, mode, countermodel=res.countermodel)
        return Verdict(Status.VALID, logic, mode)
    verdict = None
    for s in instantiate(p):
        verdict = entails(logic, s, cfg, mode)
        if not verdict.valid:
            return verdict
    assert verdict is not None
    return verdict


@dataclass
class ReportRow:
    name: str
    logic: Logic
    mode: Mode
    expected: Status
    computed: Status
    mark: Mark
    countermodel: Valuation | None = None
    detail: str = ""
    fixture: bool = False

    @property
    def ok(self) -> bool:
        return self.expected is self.computed

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "logic": self.logic.value,
            "mode": self.mode.value,
            "mark": self.mark.value,
            "expected": self.expected.value,
            "computed": self.computed.value,
            "match": self.ok,
            "countermodel": None
            if self.countermodel is None
            else {k: str(v) for k, v in self.countermodel.items},
            "detail": self.detail,
            "fixture": self.fixture,
        }


@dataclass
class Report:
    semantics: str
    rows: list[ReportRow] = field(default_factory=list)

    @property
    def mismatches(self) -> list[ReportRow]:
        return [r for r in self.rows if not r.ok]

    def to_dict(self) -> dict:
        return {
            "semantics": self.semantics,
            "principles": len({r.name for r in self.rows if not r.fixture}),
            "rows": [r.to_dict() for r in self.rows],
            "mismatches": len(self.mismatches),
        }


def _report_rows(p: Principle, cfg: SemanticsConfig, depth_bound: int | None, fixture: bool) -> Iterator[ReportRow]:
    for logic in (Logic.C, Logic.U):
        for mode in (Mode.TRIVALENT, Mode.BIVALENT):
            detail = ""
            if p.kind is Kind.META_RULE:
                res = meta_rule_check(p, logic, mode, depth_bound, cfg)
                computed = Status.INVALID if res.violation else Status.VALID
                countermodel = res.countermodel
                detail = res.describe()
            else:
                v = evaluate_principle(p, logic, mode, cfg)
                computed, countermodel = v.status, v.countermodel
                if v.witness_subset is not None:
                    detail = f"witness premises {list(v.witness_subset)}"
            yield ReportRow(
                p.name, logic, mode, p.expected(logic, mode), computed, p.marks[logic],
                countermodel, detail, fixture,
            )


def full_report(
    cfg: SemanticsConfig = DEFAULT, *, depth_bound: int | None = None, fixtures: bool = True
) -> Report:
    """Recompute every principle in C and U, trivalent and bivalent, and
    compare against the expected marks."""
    report = Report(cfg.name)
    for p in PRINCIPLES:
        report.rows.extend(_report_rows(p, cfg, depth_bound, False))
    if fixtures:
        for p in FIXTURES:
            report.rows.extend(_report_rows(p, cfg, depth_bound, True))
    return report
