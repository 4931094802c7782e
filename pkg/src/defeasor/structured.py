"""Structured argumentation: rule bases, argument construction, defeat.

Arguments are derivation trees built from facts by strict and defeasible
rule applications.  Conflict arises two ways: rebutting (complementary
conclusions, only against a defeasible rule application) and undercutting
(a rule whose head denies the applicability of a named defeasible rule).
Rebuts are filtered by declared rule preferences using the weakest link
over the last defeasible rules; undercuts go through regardless of
preferences.  Compilation produces an abstract :class:`~defeasor.af.Framework`
whose closure propagates any defeat on a subargument to the arguments
built on top of it.

Conclusion-level queries, floating-conclusion detection and zombie
detection operate on any framework that carries conclusion labels, so
they apply equally to compiled rule bases and to hand-written frameworks.
"""

from __future__ import annotations

import enum
import itertools
import re
from collections import defaultdict
from dataclasses import dataclass

from .af import (
    Framework,
    SemanticsKind,
    Status,
    all_statuses,
    extensions,
    grounded_extension,
)
from .errors import (
    CyclicRuleBaseError,
    InputError,
    ParseError,
    PriorityCycleError,
)
from .literals import Literal, is_identifier, parse_literal

DEFAULT_HEIGHT_CAP = 32


class RuleKind(enum.Enum):
    STRICT = "strict"
    DEFEASIBLE = "defeasible"


@dataclass(frozen=True)
class UndercutTarget:
    """Head form denying the applicability of a defeasible rule."""

    rule: str

    def __str__(self) -> str:
        return f"!{self.rule}"


RuleHead = Literal | UndercutTarget


@dataclass(frozen=True)
class Rule:
    name: str
    body: tuple[Literal, ...]
    head: RuleHead
    kind: RuleKind

    def __str__(self) -> str:
        arrow = "->" if self.kind is RuleKind.STRICT else "=>"
        body = ", ".join(str(l) for l in self.body)
        return f"{self.kind.value} {self.name}: {body} {arrow} {self.head}."


@dataclass(frozen=True)
class RuleBase:
    """Facts, rules, declared preferences and queries.

    ``prefers`` holds (stronger, weaker) pairs over defeasible rule names
    as declared; the transitive closure is taken at construction and a
    cycle is rejected.
    """

    facts: frozenset[Literal]
    rules: tuple[Rule, ...]
    prefers: frozenset[tuple[str, str]] = frozenset()
    queries: tuple[Literal, ...] = ()

    def __post_init__(self):
        rules = tuple(sorted(self.rules, key=lambda r: r.name))
        by_name: dict[str, Rule] = {}
        for rule in rules:
            if rule.name in by_name:
                raise InputError(f"duplicate rule name: {rule.name!r}")
            if not rule.body:
                raise InputError(f"rule {rule.name!r} has an empty body")
            by_name[rule.name] = rule
        for rule in rules:
            if isinstance(rule.head, UndercutTarget):
                target = by_name.get(rule.head.rule)
                if target is None or target.kind is not RuleKind.DEFEASIBLE:
                    raise InputError(
                        f"rule {rule.name!r} undercuts "
                        f"{rule.head.rule!r}, which is not a defeasible rule"
                    )
        for stronger, weaker in self.prefers:
            for name in (stronger, weaker):
                rule = by_name.get(name)
                if rule is None or rule.kind is not RuleKind.DEFEASIBLE:
                    raise InputError(
                        f"preference over {name!r}, which is not a "
                        "defeasible rule"
                    )
        closure = _transitive_closure(self.prefers)
        for name, other in closure:
            if name == other:
                raise PriorityCycleError(
                    f"preference cycle through {name!r}"
                )
        object.__setattr__(self, "facts", frozenset(self.facts))
        object.__setattr__(self, "rules", rules)
        object.__setattr__(self, "prefers", frozenset(self.prefers))
        object.__setattr__(self, "queries", tuple(sorted(set(self.queries))))
        object.__setattr__(self, "_by_name", by_name)
        object.__setattr__(self, "_stronger", closure)

    def rule(self, name: str) -> Rule:
        return self._by_name[name]

    def preferred_over(self, stronger: str, weaker: str) -> bool:
        return (stronger, weaker) in self._stronger


def _transitive_closure(
    pairs: frozenset[tuple[str, str]]
) -> frozenset[tuple[str, str]]:
    closure = set(pairs)
    changed = True
    while changed:
        changed = False
        for a, b in list(closure):
            for c, d in list(closure):
                if b == c and (a, d) not in closure:
                    closure.add((a, d))
                    changed = True
    return frozenset(closure)


@dataclass(frozen=True)
class Argument:
    """A derivation tree.  ``id`` is the canonical textual encoding of the
    tree (facts print as their literal, applications as rule(sub,...)),
    ``top_rule`` is None for fact arguments, and ``last_defeasible`` holds
    the defeasible rules closest to the conclusion."""

    id: str
    conclusion: RuleHead
    top_rule: str | None
    subarguments: tuple["Argument", ...]
    height: int
    last_defeasible: frozenset[str]

    def is_fact(self) -> bool:
        return self.top_rule is None


def _fact_argument(lit: Literal) -> Argument:
    return Argument(
        id=str(lit),
        conclusion=lit,
        top_rule=None,
        subarguments=(),
        height=0,
        last_defeasible=frozenset(),
    )


def _apply_rule(rule: Rule, subs: tuple[Argument, ...]) -> Argument:
    if rule.kind is RuleKind.DEFEASIBLE:
        last = frozenset({rule.name})
    else:
        last = frozenset().union(*(s.last_defeasible for s in subs))
    return Argument(
        id=f"{rule.name}({','.join(s.id for s in subs)})",
        conclusion=rule.head,
        top_rule=rule.name,
        subarguments=subs,
        height=1 + max(s.height for s in subs),
        last_defeasible=last,
    )


def construct_arguments(
    rb: RuleBase, height_cap: int = DEFAULT_HEIGHT_CAP
) -> list[Argument]:
    """Least set of arguments closed under rule application.

    Every fact yields a height-0 argument; a rule whose body literals all
    have arguments yields one argument per combination of subarguments.
    Exceeding ``height_cap`` raises :class:`CyclicRuleBaseError`, which
    guards rule bases whose rules feed their own bodies.
    """
    by_id: dict[str, Argument] = {}
    by_literal: dict[Literal, list[Argument]] = defaultdict(list)

    def add(arg: Argument) -> bool:
        if arg.id in by_id:
            return False
        if arg.height > height_cap:
            raise CyclicRuleBaseError(
                f"argument height exceeds cap {height_cap}; "
                "the rule base is probably cyclic"
            )
        by_id[arg.id] = arg
        if isinstance(arg.conclusion, Literal):
            by_literal[arg.conclusion].append(arg)
        return True

    for fact in sorted(rb.facts):
        add(_fact_argument(fact))

    changed = True
    while changed:
        changed = False
        for rule in rb.rules:
            pools = [list(by_literal.get(lit, ())) for lit in rule.body]
            if any(not pool for pool in pools):
                continue
            for combo in itertools.product(*pools):
                if add(_apply_rule(rule, combo)):
                    changed = True

    return sorted(by_id.values(), key=lambda a: (a.height, a.id))


def _strictly_weaker(attacker: Argument, target: Argument, rb: RuleBase) -> bool:
    # Weakest link, elitist reading: the attacker is strictly weaker when
    # some last defeasible rule of it sits below every last defeasible
    # rule of the target.  On the single-step comparisons the corpus
    # exercises this coincides with plain rule comparison.
    if not attacker.last_defeasible or not target.last_defeasible:
        return False
    return any(
        all(rb.preferred_over(t, a) for t in target.last_defeasible)
        for a in attacker.last_defeasible
    )


def compute_defeats(args: list[Argument], rb: RuleBase) -> Framework:
    """Compile constructed arguments into an abstract framework.

    Rebut: complementary conclusions against a defeasible top rule, a
    defeat unless the attacker is strictly weaker under the preferences.
    Undercut: conclusion ``!r`` against any application of ``r``, always a
    defeat.  The framework's construction then propagates defeats from
    subarguments upward.
    """
    defeats: set[tuple[str, str]] = set()
    for x in args:
        for y in args:
            if y.top_rule is None:
                continue
            top = rb.rule(y.top_rule)
            if isinstance(x.conclusion, UndercutTarget):
                if x.conclusion.rule == top.name:
                    defeats.add((x.id, y.id))
            elif (
                top.kind is RuleKind.DEFEASIBLE
                and isinstance(y.conclusion, Literal)
                and x.conclusion == y.conclusion.complement()
                and not _strictly_weaker(x, y, rb)
            ):
                defeats.add((x.id, y.id))

    return Framework(
        args=frozenset(a.id for a in args),
        defeats=frozenset(defeats),
        subargs=frozenset(
            (sub.id, a.id) for a in args for sub in a.subarguments
        ),
        conclusions={
            a.id: a.conclusion
            for a in args
            if isinstance(a.conclusion, Literal)
        },
    )


def compile_rulebase(
    rb: RuleBase, height_cap: int = DEFAULT_HEIGHT_CAP
) -> Framework:
    return compute_defeats(construct_arguments(rb, height_cap), rb)


# ---------------------------------------------------------------------------
# Conclusion-level queries


def conclusion_status(
    f: Framework, lit: Literal, kind: SemanticsKind
) -> Status:
    """Standing of a conclusion rather than of a single argument.

    Under grounded semantics a conclusion is justified when some grounded
    argument concludes it.  Under the multi-extension kinds it is
    justified when every extension contains *some* argument concluding it,
    which deliberately admits floating conclusions.  A literal concluded
    by no argument is overruled; callers that need to tell "rejected"
    from "never derived" should check support separately.
    """
    support = sorted(a for a, c in f.conclusions.items() if c == lit)
    if kind is SemanticsKind.GROUNDED:
        statuses = all_statuses(f, kind)
        if any(statuses[a] is Status.JUSTIFIED for a in support):
            return Status.JUSTIFIED
        if any(statuses[a] is Status.DEFENSIBLE for a in support):
            return Status.DEFENSIBLE
        return Status.OVERRULED
    exts = extensions(f, kind)
    if not exts:
        # No stable extension: mirror the all-defensible argument rule.
        return Status.DEFENSIBLE if support else Status.OVERRULED
    covered = sum(1 for e in exts if any(a in e for a in support))
    if covered == len(exts):
        return Status.JUSTIFIED
    if covered:
        return Status.DEFENSIBLE
    return Status.OVERRULED


def detect_floating_conclusions(
    f: Framework, kind: SemanticsKind
) -> list[Literal]:
    """Literals concluded in every extension but by no single argument
    that is in every extension."""
    if kind not in (SemanticsKind.PREFERRED, SemanticsKind.STABLE):
        raise InputError(
            "floating conclusions are defined for preferred and stable "
            f"semantics, not {kind.value}"
        )
    exts = extensions(f, kind)
    if not exts:
        return []
    floating = []
    for lit in sorted(set(f.conclusions.values())):
        support = [a for a, c in f.conclusions.items() if c == lit]
        if not all(any(a in e for a in support) for e in exts):
            continue
        if any(all(a in e for e in exts) for a in support):
            continue
        floating.append(lit)
    return floating


def _removal_set(f: Framework, name: str) -> set[str]:
    parents: dict[str, set[str]] = defaultdict(set)
    for child, parent in f.subargs:
        parents[child].add(parent)
    removed = {name}
    frontier = [name]
    while frontier:
        node = frontier.pop()
        for parent in parents[node]:
            if parent not in removed:
                removed.add(parent)
                frontier.append(parent)
    return removed


def detect_zombies(
    f: Framework, kind: SemanticsKind
) -> list[tuple[str, str]]:
    """Pairs (z, v) where z is defensible yet removing it (with every
    argument built on it) changes the status of v."""
    base = all_statuses(f, kind)
    pairs: list[tuple[str, str]] = []
    for z in sorted(f.args):
        if base[z] is not Status.DEFENSIBLE:
            continue
        removed = _removal_set(f, z)
        kept = f.args - removed
        reduced = Framework(
            args=kept,
            defeats=frozenset(
                (a, b) for a, b in f.defeats if a in kept and b in kept
            ),
            subargs=frozenset(
                (c, p) for c, p in f.subargs if c in kept and p in kept
            ),
            conclusions={a: c for a, c in f.conclusions.items() if a in kept},
        )
        after = all_statuses(reduced, kind)
        for v in sorted(kept):
            if after[v] is not base[v]:
                pairs.append((z, v))
    return pairs


# ---------------------------------------------------------------------------
# Text format
#
# One statement per line, `#` starts a comment:
#   fact L.
#   strict NAME: L1, L2 -> L.
#   defeasible NAME: L1 => L.       (head may be !RULE to undercut RULE)
#   prefer N1 > N2.
#   query L.

_FACT = re.compile(r"fact\s+(.+)\Z")
_RULE = re.compile(
    r"(strict|defeasible)\s+([A-Za-z_][A-Za-z0-9_]*)\s*:\s*(.+?)\s*"
    r"(->|=>)\s*(.+)\Z"
)
_PREFER = re.compile(
    r"prefer\s+([A-Za-z_][A-Za-z0-9_]*)\s*>\s*([A-Za-z_][A-Za-z0-9_]*)\Z"
)
_QUERY = re.compile(r"query\s+(.+)\Z")


def _statements(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not line.endswith("."):
            raise ParseError(lineno, f"statement does not end with '.': {raw.strip()!r}")
        yield lineno, line[:-1].strip()


def parse_rulebase(text: str) -> RuleBase:
    facts: set[Literal] = set()
    rules: list[Rule] = []
    prefers: set[tuple[str, str]] = set()
    queries: list[Literal] = []

    for lineno, stmt in _statements(text):
        if m := _FACT.match(stmt):
            facts.add(_literal_at(m.group(1), lineno))
        elif m := _RULE.match(stmt):
            kind_word, name, body_text, arrow, head_text = m.groups()
            kind = RuleKind.STRICT if kind_word == "strict" else RuleKind.DEFEASIBLE
            expected = "->" if kind is RuleKind.STRICT else "=>"
            if arrow != expected:
                raise ParseError(
                    lineno, f"{kind_word} rules use {expected!r}, got {arrow!r}"
                )
            body = tuple(
                _literal_at(part, lineno) for part in body_text.split(",")
            )
            head_text = head_text.strip()
            head: RuleHead
            if head_text.startswith("!"):
                if kind is RuleKind.STRICT:
                    raise ParseError(
                        lineno, "only defeasible rules may undercut"
                    )
                target = head_text[1:].strip()
                if not is_identifier(target):
                    raise ParseError(lineno, f"bad rule name: {target!r}")
                head = UndercutTarget(target)
            else:
                head = _literal_at(head_text, lineno)
            rules.append(Rule(name, body, head, kind))
        elif m := _PREFER.match(stmt):
            prefers.add((m.group(1), m.group(2)))
        elif m := _QUERY.match(stmt):
            queries.append(_literal_at(m.group(1), lineno))
        else:
            raise ParseError(lineno, f"unknown statement: {stmt!r}")

    return RuleBase(
        facts=frozenset(facts),
        rules=tuple(rules),
        prefers=frozenset(prefers),
        queries=tuple(queries),
    )


def _literal_at(text: str, lineno: int) -> Literal:
    try:
        return parse_literal(text)
    except InputError as exc:
        raise ParseError(lineno, str(exc)) from exc


def rulebase_to_text(rb: RuleBase) -> str:
    """Canonical serialization: facts, strict rules, defeasible rules,
    preferences, queries, each block sorted."""
    lines = [f"fact {lit}." for lit in sorted(rb.facts)]
    for kind in (RuleKind.STRICT, RuleKind.DEFEASIBLE):
        lines += [str(r) for r in rb.rules if r.kind is kind]
    lines += [f"prefer {a} > {b}." for a, b in sorted(rb.prefers)]
    lines += [f"query {lit}." for lit in rb.queries]
    return "\n".join(lines) + ("\n" if lines else "")
