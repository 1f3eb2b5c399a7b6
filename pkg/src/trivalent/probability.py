"""Exact trivalent probability over finite credence functions.

Worlds are valuations of a fixed atom set. The probability of a formula is
the weight of the worlds where it is true, renormalized over the worlds
where it takes a classical value; it is 1 when the formula is nowhere
classical. All arithmetic uses :class:`fractions.Fraction`.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterator, Mapping, NamedTuple, Sequence

from .consequence import ConditionalNotAllowed, Sequent
from .formula import And, Cond, Formula, Not, atoms, conjoin, is_conditional_free, parse
from .semantics import (
    DEFAULT,
    Mode,
    SemanticsConfig,
    TruthValue,
    Valuation,
    enumerate_valuations,
    valuation_at,
    value_column,
)

__all__ = [
    "Credence",
    "CredenceError",
    "TruthPartition",
    "UndefinedOdds",
    "ZeroProbability",
    "POINT_MASS_RATE",
    "partition",
    "probability",
    "decimal_odds",
    "conditional_probability",
    "check_adams",
    "random_credence",
    "find_credence",
    "c_probabilistic_countermodel",
    "ss_probabilistic_countermodel",
    "search_probabilistic_countermodel",
    "SubsetCertificate",
    "ProbabilisticCountermodel",
    "total_probability",
    "nested_total_probability",
    "mcgee_demo",
    "McGeeReport",
    "triviality_witness",
    "TrivialityReport",
]


class CredenceError(ValueError):
    pass


class UndefinedOdds(ValueError):
    pass


class ZeroProbability(ValueError):
    pass


def _row_index(v: Valuation, names: tuple[str, ...], mode: Mode) -> int:
    base = 2 if mode is Mode.BIVALENT else 3
    index = 0
    for name in names:
        x = int(v[name])
        if mode is Mode.BIVALENT:
            if x == 1:
                raise CredenceError(f"world {v.key()} assigns 1/2 in a bivalent credence")
            x //= 2
        index = index * base + x
    return index


def _parse_world(key: str, names: tuple[str, ...], mode: Mode) -> Valuation:
    mapping: dict[str, TruthValue] = {}
    for part in key.split(","):
        name, sep, value = part.partition("=")
        if not sep:
            raise CredenceError(f"malformed world {key!r}: expected name=value pairs")
        name = name.strip()
        if name in mapping:
            raise CredenceError(f"world {key!r} assigns {name} twice")
        try:
            mapping[name] = TruthValue.parse(value)
        except ValueError as exc:
            raise CredenceError(f"world {key!r}: {exc}") from None
    if tuple(sorted(mapping)) != names:
        raise CredenceError(f"world {key!r} does not assign exactly the atoms {', '.join(names)}")
    try:
        return Valuation.of(mapping, mode)
    except ValueError as exc:
        raise CredenceError(f"world {key!r}: {exc}") from None


def _fraction(x) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise CredenceError(f"weight {x!r} must be an integer or a 'num/den' string")
    try:
        return Fraction(x)
    except (ValueError, TypeError, ZeroDivisionError):
        raise CredenceError(f"weight {x!r} is not a rational number") from None


@dataclass(frozen=True)
class Credence:
    """A probability mass function over the valuations of ``atoms``.

    ``weights`` maps worlds to positive rationals summing to 1; worlds not
    listed carry weight 0. Build instances through :meth:`of` or the other
    constructors, which validate these invariants.
    """

    atoms: tuple[str, ...]
    mode: Mode
    weights: Mapping[Valuation, Fraction]

    def __post_init__(self):
        total = Fraction(0)
        for v, w in self.weights.items():
            if v.atoms != self.atoms:
                raise CredenceError(f"world {v.key()} is not a valuation of {self.atoms}")
            if self.mode is Mode.BIVALENT and any(x is TruthValue.INDETERMINATE for _, x in v.items):
                raise CredenceError(f"world {v.key()} assigns 1/2 in a bivalent credence")
            if w < 0:
                raise CredenceError(f"negative weight {w} on {v.key()}")
            total += w
        if total != 1:
            raise CredenceError(f"weights sum to {total}, not 1")

    __hash__ = None  # type: ignore[assignment]

    @classmethod
    def of(
        cls,
        atom_set: Sequence[str],
        mode: Mode,
        weights: Mapping[Valuation | str, Fraction | int | str],
        *,
        normalize: bool = False,
    ) -> Credence:
        """Build a credence; worlds may be valuations or ``"a=1,b=0"`` keys.

        With ``normalize=True`` the weights are divided by their sum.
        """
        names = tuple(sorted(set(atom_set)))
        out: dict[Valuation, Fraction] = {}
        for k, w in weights.items():
            v = _parse_world(k, names, mode) if isinstance(k, str) else Valuation(k.items, mode)
            if v.atoms != names:
                raise CredenceError(f"world {v.key()} is not a valuation of {names}")
            out[v] = out.get(v, Fraction(0)) + _fraction(w)
        if normalize:
            total = sum(out.values(), Fraction(0))
            if total <= 0:
                raise CredenceError("cannot normalize weights with a non-positive sum")
            out = {v: w / total for v, w in out.items()}
        return cls(names, mode, {v: w for v, w in out.items() if w})

    @classmethod
    def point_mass(cls, v: Valuation, mode: Mode | None = None) -> Credence:
        mode = v.mode if mode is None else mode
        return cls.of(v.atoms, mode, {v: 1})

    @classmethod
    def uniform(cls, atom_set: Sequence[str], mode: Mode = Mode.BIVALENT) -> Credence:
        worlds = list(enumerate_valuations(atom_set, mode))
        return cls.of(atom_set, mode, {v: Fraction(1, len(worlds)) for v in worlds})

    @classmethod
    def from_rows(cls, names: tuple[str, ...], mode: Mode, rows: Mapping[int, int | Fraction]) -> Credence:
        """Credence from unnormalized weights indexed by enumeration row."""
        return cls.of(names, mode, {valuation_at(r, names, mode): w for r, w in rows.items()}, normalize=True)

    def rows(self) -> dict[int, Fraction]:
        """Weights keyed by enumeration row of ``(atoms, mode)``."""
        return {_row_index(v, self.atoms, self.mode): w for v, w in self.weights.items()}

    def __getitem__(self, v: Valuation) -> Fraction:
        return self.weights.get(v, Fraction(0))

    def support(self) -> list[tuple[Valuation, Fraction]]:
        """Positive-weight worlds in enumeration order."""
        return sorted(self.weights.items(), key=lambda kv: _row_index(kv[0], self.atoms, self.mode))

    # serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "atoms": list(self.atoms),
            "mode": self.mode.value,
            "weights": {v.key(): str(w) for v, w in self.support()},
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> Credence:
        try:
            names = data["atoms"]
            weights = data["weights"]
        except (KeyError, TypeError):
            raise CredenceError("credence needs 'atoms' and 'weights' fields") from None
        if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
            raise CredenceError("'atoms' must be a list of atom names")
        if not isinstance(weights, dict):
            raise CredenceError("'weights' must be an object mapping worlds to weights")
        try:
            mode = Mode(data.get("mode", "bivalent"))
        except ValueError:
            raise CredenceError(f"unknown mode {data.get('mode')!r}") from None
        return cls.of(names, mode, weights)

    @classmethod
    def load(cls, path: str | Path) -> Credence:
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise CredenceError(f"{path}: invalid JSON ({exc})") from None
        return cls.from_dict(data)

    def dump(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n")


# ---------------------------------------------------------------------------
# probability


@dataclass(frozen=True)
class TruthPartition:
    """Weights of the worlds where a formula is true, 1/2 and false."""

    true_mass: Fraction
    indeterminate_mass: Fraction
    false_mass: Fraction

    @property
    def probability(self) -> Fraction:
        return _p(self.true_mass, self.false_mass)


def _p(t, f) -> Fraction:
    if t + f == 0:
        return Fraction(1)
    return Fraction(t) / (t + f)


def partition(f: Formula, cr: Credence, cfg: SemanticsConfig = DEFAULT) -> TruthPartition:
    """Split the credence mass by the value of ``f``.

    Raises:
        UnassignedAtom: if ``f`` mentions an atom outside ``cr.atoms``.
    """
    col = value_column(f, cr.atoms, cfg, cr.mode, max_atoms=len(cr.atoms))
    masses = [Fraction(0)] * 3
    for row, w in cr.rows().items():
        masses[col[row]] += w
    return TruthPartition(masses[2], masses[1], masses[0])


def probability(f: Formula, cr: Credence, cfg: SemanticsConfig = DEFAULT) -> Fraction:
    return partition(f, cr, cfg).probability


def decimal_odds(f: Formula, cr: Credence, cfg: SemanticsConfig = DEFAULT) -> Fraction | float:
    """Stake multiplier of a winning bet on ``f``; ``math.inf`` when the bet
    cannot be won but can be lost.

    Raises:
        UndefinedOdds: when ``f`` is nowhere classical, so no bet is settled.
    """
    part = partition(f, cr, cfg)
    settled = part.true_mass + part.false_mass
    if settled == 0:
        raise UndefinedOdds("formula is never classical under this credence")
    if part.true_mass == 0:
        return math.inf
    return settled / part.true_mass


def _require_classical(cr: Credence, *fs: Formula):
    for f in fs:
        if not is_conditional_free(f):
            raise ConditionalNotAllowed("conditional probability needs conditional-free formulas")
    if cr.mode is not Mode.BIVALENT:
        raise CredenceError("conditional probability needs a bivalent credence")


def conditional_probability(c_given: Formula, given: Formula, cr: Credence) -> Fraction:
    """Classical ratio ``c(given and c_given) / c(given)``.

    Raises:
        ConditionalNotAllowed: if either formula contains ``->``.
        CredenceError: if the credence is not bivalent.
        ZeroProbability: if ``given`` has probability 0.
    """
    _require_classical(cr, c_given, given)
    denom = partition(given, cr).true_mass
    if denom == 0:
        raise ZeroProbability("conditioning on a probability-zero formula")
    return partition(And(given, c_given), cr).true_mass / denom


def check_adams(a: Formula, c: Formula, cr: Credence, cfg: SemanticsConfig = DEFAULT) -> Fraction:
    """``p(a -> c) - p(c | a)``; zero whenever the inputs are admissible."""
    cp = conditional_probability(c, a, cr)
    return probability(Cond(a, c), cr, cfg) - cp


# ---------------------------------------------------------------------------
# random credences and structured search

POINT_MASS_RATE = 0.1
DEFAULT_DENOMINATOR_BOUND = 12


def _random_rows(rng: random.Random, rows: int, bound: int) -> dict[int, int]:
    """Integer weights by row with total at most ``bound``."""
    if bound <= 1 or rng.random() < POINT_MASS_RATE:
        return {rng.randrange(rows): 1}
    out: dict[int, int] = {}
    for _ in range(rng.randint(1, bound)):
        r = rng.randrange(rows)
        out[r] = out.get(r, 0) + 1
    return out


def random_credence(
    atom_set: Sequence[str],
    mode: Mode = Mode.BIVALENT,
    seed: int | random.Random = 0,
    denominator_bound: int = DEFAULT_DENOMINATOR_BOUND,
) -> Credence:
    """Reproducible random credence with weights ``k / D`` for ``D <= denominator_bound``.

    With probability ``POINT_MASS_RATE`` (and always when the bound is 1)
    all mass sits on a single world.
    """
    if denominator_bound < 1:
        raise ValueError("denominator_bound must be at least 1")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    names = tuple(sorted(set(atom_set)))
    rows = (2 if mode is Mode.BIVALENT else 3) ** len(names)
    return Credence.from_rows(names, mode, _random_rows(rng, rows, denominator_bound))


class Masses(NamedTuple):
    """Unnormalized true/indeterminate/false weights of one formula."""

    t: int
    i: int
    f: int

    @property
    def p(self) -> Fraction:
        return _p(self.t, self.f)


def _masses(col: bytes, weights: Mapping[int, int]) -> Masses:
    m = [0, 0, 0]
    for r, w in weights.items():
        m[col[r]] += w
    return Masses(m[2], m[1], m[0])


FAMILIES = ("point", "pair")


def _candidates(
    rows: int, budget: int, seed: int, bound: int, families: Sequence[str] = FAMILIES
) -> Iterator[dict[int, int]]:
    # point masses, then half/half pairs, then random samples
    unknown = set(families) - set(FAMILIES)
    if unknown:
        raise ValueError(f"unknown credence families: {sorted(unknown)}")
    if "point" in families:
        for r in range(rows):
            yield {r: 1}
    if "pair" in families:
        for r1, r2 in itertools.combinations(range(rows), 2):
            yield {r1: 1, r2: 1}
    rng = random.Random(seed)
    for _ in range(budget):
        yield _random_rows(rng, rows, bound)


def find_credence(
    formulas: Sequence[Formula],
    predicate: Callable[[list[Masses]], bool],
    *,
    names: tuple[str, ...] | None = None,
    mode: Mode = Mode.TRIVALENT,
    cfg: SemanticsConfig = DEFAULT,
    budget: int = 0,
    seed: int = 0,
    denominator_bound: int = DEFAULT_DENOMINATOR_BOUND,
    max_atoms: int | None = None,
    families: Sequence[str] = FAMILIES,
) -> tuple[Credence, list[Fraction]] | None:
    """First credence (point masses, then 1/2-1/2 pairs of worlds, then
    ``budget`` seeded random samples) whose masses satisfy ``predicate``.
    ``families`` selects which structured families are tried.

    Returns the credence and the probabilities of ``formulas`` under it.
    """
    if names is None:
        names = tuple(sorted({a for f in formulas for a in atoms(f)}))
    cols = [value_column(f, names, cfg, mode, max_atoms=max_atoms) for f in formulas]
    rows = (2 if mode is Mode.BIVALENT else 3) ** len(names)
    for weights in _candidates(rows, budget, seed, denominator_bound, families):
        ms = [_masses(col, weights) for col in cols]
        if predicate(ms):
            return Credence.from_rows(names, mode, weights), [m.p for m in ms]
    return None


def c_probabilistic_countermodel(
    s: Sequent, cfg: SemanticsConfig = DEFAULT, mode: Mode = Mode.TRIVALENT, *,
    budget: int = 0, seed: int = 0, families: Sequence[str] = ("point",),
):
    """A credence giving every premise probability 1 and the conclusion less.

    Point masses suffice: one exists iff the sequent is C-invalid.
    """
    n = len(s.premises)
    return find_credence(
        (*s.premises, s.conclusion),
        lambda ms: all(m.p == 1 for m in ms[:n]) and ms[n].p < 1,
        names=s.atoms(), mode=mode, cfg=cfg, budget=budget, seed=seed, families=families,
    )


def ss_probabilistic_countermodel(
    premise: Formula, conclusion: Formula, cfg: SemanticsConfig = DEFAULT,
    mode: Mode = Mode.TRIVALENT, *, budget: int = 0, seed: int = 0,
):
    """A credence with ``p(premise) > 0`` and ``p(conclusion) = 0`` where the
    premise is not indeterminate with certainty."""
    return find_credence(
        (premise, conclusion),
        lambda ms: ms[0].p > 0 and ms[0].i < sum(ms[0]) and ms[1].p == 0,
        names=Sequent((premise,), conclusion).atoms(), mode=mode, cfg=cfg, budget=budget, seed=seed,
    )


@dataclass
class SubsetCertificate:
    subset: tuple[int, ...]
    conjunction: Formula
    credence: Credence
    p_conjunction: Fraction
    p_conclusion: Fraction


@dataclass
class ProbabilisticCountermodel:
    """One failing credence per premise subset: together they refute the sequent."""

    sequent: Sequent
    certificates: list[SubsetCertificate]


def search_probabilistic_countermodel(
    s: Sequent,
    cfg: SemanticsConfig = DEFAULT,
    budget: int = 1000,
    seed: int = 0,
    *,
    mode: Mode = Mode.TRIVALENT,
    max_premises: int = 16,
    families: Sequence[str] = FAMILIES,
) -> ProbabilisticCountermodel | None:
    """Look, for every subset of premises, for a credence making their
    quasi-conjunction more probable than the conclusion.

    Returns ``None`` (inconclusive) as soon as some subset survives the
    structured families and ``budget`` random samples.
    """
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    if len(s.premises) > max_premises:
        raise ValueError(f"{len(s.premises)} premises exceeds the subset cap of {max_premises}")
    names = s.atoms()
    certs = []
    n = len(s.premises)
    for k in range(n + 1):
        for subset in itertools.combinations(range(n), k):
            conj = conjoin([s.premises[i] for i in subset])
            found = find_credence(
                (conj, s.conclusion),
                lambda ms: ms[0].p > ms[1].p,
                names=names, mode=mode, cfg=cfg, budget=budget, seed=seed, families=families,
            )
            if found is None:
                return None
            cr, (pc, pb) = found
            certs.append(SubsetCertificate(subset, conj, cr, pc, pb))
    return ProbabilisticCountermodel(s, certs)


# ---------------------------------------------------------------------------
# law of total probability and the election example


def _cp_or_none(c: Formula, given: Formula, cr: Credence) -> Fraction | None:
    try:
        return conditional_probability(c, given, cr)
    except ZeroProbability:
        return None


def _weighted(cp: Fraction | None, weight: Fraction) -> Fraction:
    # an undefined conditional probability only ever appears with weight 0
    if cp is None:
        assert weight == 0
        return Fraction(0)
    return cp * weight


def total_probability(b: Formula, a: Formula, cr: Credence) -> tuple[Fraction, Fraction]:
    """Both sides of ``p(b) = p(b|a) p(a) + p(b|~a) (1 - p(a))``."""
    _require_classical(cr, a, b)
    pa = probability(a, cr)
    rhs = _weighted(_cp_or_none(b, a, cr), pa) + _weighted(_cp_or_none(b, Not(a), cr), 1 - pa)
    return probability(b, cr), rhs


def nested_total_probability(
    a: Formula, b: Formula, c: Formula, cr: Credence
) -> tuple[Fraction, Fraction]:
    """Both sides of ``p(c|b) = p(c|a&b) p(a|b) + p(c|~a&b) (1 - p(a|b))``.

    Raises:
        ZeroProbability: if ``p(b) = 0``.
    """
    pab = conditional_probability(a, b, cr)
    rhs = _weighted(_cp_or_none(c, And(a, b), cr), pab) + _weighted(
        _cp_or_none(c, And(Not(a), b), cr), 1 - pab
    )
    return conditional_probability(c, b, cr), rhs


MCGEE_MAJOR = "(r | n) -> (~r -> n)"
MCGEE_MINOR = "r | n"
MCGEE_CONCLUSION = "~r -> n"


@dataclass
class McGeeReport:
    """Three-world election credence: Reagan (r), Carter, Anderson (n)."""

    weights: tuple[int, int, int]
    credence: Credence
    p_major: Fraction
    p_minor: Fraction
    p_conclusion: Fraction
    p_imported: Fraction
    total_probability: tuple[Fraction, Fraction]
    nested_total_probability: tuple[Fraction, Fraction]

    @property
    def decompositions_hold(self) -> bool:
        return (
            self.total_probability[0] == self.total_probability[1]
            and self.nested_total_probability[0] == self.nested_total_probability[1]
        )

    def to_dict(self) -> dict:
        return {
            "weights": {"reagan": self.weights[0], "carter": self.weights[1], "anderson": self.weights[2]},
            "credence": self.credence.to_dict(),
            "premises": [
                {"formula": MCGEE_MAJOR, "probability": str(self.p_major)},
                {"formula": MCGEE_MINOR, "probability": str(self.p_minor)},
            ],
            "conclusion": {"formula": MCGEE_CONCLUSION, "probability": str(self.p_conclusion)},
            "imported_conditional_probability": str(self.p_imported),
            "total_probability": [str(x) for x in self.total_probability],
            "nested_total_probability": [str(x) for x in self.nested_total_probability],
            "decompositions_hold": self.decompositions_hold,
        }


def mcgee_demo(weights: tuple[int, int, int] = (85, 14, 1)) -> McGeeReport:
    """Probabilities in the election argument for the given outcome weights
    (Reagan, Carter, Anderson), normalized to sum 1.

    Raises:
        CredenceError: if a weight is negative or all are zero.
    """
    reagan, carter, anderson = weights
    cr = Credence.of(
        ("n", "r"),
        Mode.BIVALENT,
        {"n=0,r=1": reagan, "n=0,r=0": carter, "n=1,r=0": anderson},
        normalize=True,
    )
    republican, not_reagan, anderson_wins = parse("r | n"), parse("~r"), parse("n")
    return McGeeReport(
        tuple(weights),
        cr,
        probability(parse(MCGEE_MAJOR), cr),
        probability(parse(MCGEE_MINOR), cr),
        probability(parse(MCGEE_CONCLUSION), cr),
        conditional_probability(anderson_wins, And(republican, not_reagan), cr),
        total_probability(anderson_wins, republican, cr),
        nested_total_probability(republican, not_reagan, anderson_wins, cr),
    )


@dataclass
class TrivialityReport:
    credence: Credence
    p_conditional: Fraction
    p_consequent: Fraction
    compatible: bool
    preservation_checked: int
    preservation_triggered: int
    preservation_violations: list[dict]

    @property
    def witnessed(self) -> bool:
        return self.compatible and self.p_conditional != self.p_consequent

    def to_dict(self) -> dict:
        return {
            "credence": self.credence.to_dict(),
            "p_conditional": str(self.p_conditional),
            "p_consequent": str(self.p_consequent),
            "antecedent_compatible_with_consequent_and_negation": self.compatible,
            "collapse_blocked": self.witnessed,
            "preservation": {
                "credences_checked": self.preservation_checked,
                "antecedent_triggered": self.preservation_triggered,
                "violations": self.preservation_violations,
            },
        }


def triviality_witness(samples: int = 1000, seed: int = 0) -> TrivialityReport:
    """Credence where ``a`` is compatible with ``c`` and ``~c`` but
    ``p(a -> c) != p(c)``, plus a sampled check that ``p(a) > 0`` and
    ``p(c) = 0`` force ``p(a -> c) = 0`` for conditional-free ``a``, ``c``."""
    a, c = parse("a"), parse("c")
    cr = Credence.of(
        ("a", "c"),
        Mode.BIVALENT,
        {"a=1,c=1": "1/10", "a=1,c=0": "1/10", "a=0,c=1": "7/10", "a=0,c=0": "1/10"},
    )
    compatible = partition(And(a, c), cr).true_mass > 0 and partition(And(a, Not(c)), cr).true_mass > 0
    rng = random.Random(seed)
    names = ("a", "b", "c")
    # sentences over three atoms; small supports make p(C) = 0 common
    pool = [parse(t) for t in ("a", "b", "c", "a & b", "a | c", "~b", "b & ~c", "a & ~a", "~(a | b)")]
    triggered, violations = 0, []
    for _ in range(samples):
        cred = random_credence(names, Mode.BIVALENT, rng, denominator_bound=4)
        x, y = rng.choice(pool), rng.choice(pool)
        if probability(x, cred) > 0 and probability(y, cred) == 0:
            triggered += 1
            value = probability(Cond(x, y), cred)
            if value != 0:
                violations.append({"credence": cred.to_dict(), "a": str(x), "c": str(y), "p": str(value)})
    return TrivialityReport(
        cr, probability(Cond(a, c), cr), probability(c, cr), compatible, samples, triggered, violations
    )
