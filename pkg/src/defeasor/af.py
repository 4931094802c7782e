"""Abstract argumentation frameworks and their extension-based semantics.

A framework is a finite set of named arguments with a binary defeat
relation, optionally annotated with a subargument relation and per-argument
conclusion literals.  The grounded extension is the least fixpoint of the
defense operator; the complete, preferred and stable families are obtained
by backtracking enumeration of three-valued labellings.  Inputs are
desk-scale (a few dozen arguments at most), so exact enumeration is the
design, not a shortcut.

Construction normalizes the defeat relation: a defeat on a proper
subargument counts as a defeat on every argument built on top of it, so
all semantics can run on a plain defeat graph.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import InputError, ParseError
from .literals import Literal, parse_literal


class SemanticsKind(enum.Enum):
    """Which family of extensions a query is evaluated under."""

    GROUNDED = "grounded"
    COMPLETE = "complete"
    PREFERRED = "preferred"
    STABLE = "stable"


class Status(enum.Enum):
    """Dialectical standing of an argument: skeptically accepted,
    credulously accepted only, or rejected."""

    JUSTIFIED = "justified"
    DEFENSIBLE = "defensible"
    OVERRULED = "overruled"


class Label(enum.Enum):
    IN = "in"
    OUT = "out"
    UNDEC = "undec"


#: A total assignment of labels to argument names.
Labelling = dict[str, Label]

#: A set of argument names.
ArgSet = frozenset[str]

MULTI_EXTENSION_KINDS = (
    SemanticsKind.COMPLETE,
    SemanticsKind.PREFERRED,
    SemanticsKind.STABLE,
)


@dataclass(frozen=True)
class Framework:
    """Defeat graph over named arguments.

    ``subargs`` holds (child, parent) pairs and must be acyclic and
    irreflexive.  ``conclusions`` is a partial map from argument name to
    the literal it establishes.  After construction ``defeats`` is closed
    under subargument propagation.
    """

    args: frozenset[str]
    defeats: frozenset[tuple[str, str]]
    subargs: frozenset[tuple[str, str]] = frozenset()
    conclusions: Mapping[str, Literal] = field(default_factory=dict)

    def __post_init__(self):
        args = frozenset(self.args)
        defeats = frozenset(self.defeats)
        subargs = frozenset(self.subargs)
        conclusions = dict(self.conclusions)

        for pair in defeats | subargs:
            for name in pair:
                if name not in args:
                    raise InputError(f"unknown argument: {name!r}")
        for name in conclusions:
            if name not in args:
                raise InputError(f"unknown argument: {name!r}")

        parents = _transitive_parents(args, subargs)
        closed = set(defeats)
        for attacker, target in defeats:
            closed.update((attacker, up) for up in parents[target])

        object.__setattr__(self, "args", args)
        object.__setattr__(self, "defeats", frozenset(closed))
        object.__setattr__(self, "subargs", subargs)
        object.__setattr__(self, "conclusions", conclusions)

        defeaters: dict[str, set[str]] = {a: set() for a in args}
        targets: dict[str, set[str]] = {a: set() for a in args}
        for attacker, target in self.defeats:
            defeaters[target].add(attacker)
            targets[attacker].add(target)
        object.__setattr__(
            self, "_defeaters", {a: frozenset(v) for a, v in defeaters.items()}
        )
        object.__setattr__(
            self, "_targets", {a: frozenset(v) for a, v in targets.items()}
        )

    def defeaters_of(self, name: str) -> frozenset[str]:
        return self._defeaters[name]

    def targets_of(self, name: str) -> frozenset[str]:
        return self._targets[name]


def _transitive_parents(
    args: frozenset[str], subargs: frozenset[tuple[str, str]]
) -> dict[str, frozenset[str]]:
    """All proper superarguments per argument; rejects cyclic subargs."""
    direct: dict[str, set[str]] = {a: set() for a in args}
    for child, parent in subargs:
        if child == parent:
            raise InputError(f"subargument relation is reflexive at {child!r}")
        direct[child].add(parent)

    result: dict[str, frozenset[str]] = {}

    def walk(node: str, trail: tuple[str, ...]) -> frozenset[str]:
        if node in result:
            return result[node]
        if node in trail:
            raise InputError("subargument relation is cyclic")
        acc: set[str] = set()
        for parent in direct[node]:
            acc.add(parent)
            acc |= walk(parent, trail + (node,))
        result[node] = frozenset(acc)
        return result[node]

    for a in args:
        walk(a, ())
    return result


# ---------------------------------------------------------------------------
# Semantics


def characteristic_function(f: Framework, s: Iterable[str]) -> ArgSet:
    """Arguments acceptable with respect to ``s``: every defeater is
    defeated by some member of ``s``."""
    members = frozenset(s)
    unknown = members - f.args
    if unknown:
        raise InputError(f"unknown arguments: {sorted(unknown)}")
    attacked = {t for m in members for t in f.targets_of(m)}
    return frozenset(a for a in f.args if f.defeaters_of(a) <= attacked)


def grounded_extension(f: Framework) -> ArgSet:
    """Least fixpoint of the characteristic function, from the empty set."""
    current: ArgSet = frozenset()
    while True:
        nxt = characteristic_function(f, current)
        if nxt == current:
            return current
        current = nxt


def is_complete_labelling(f: Framework, labelling: Labelling) -> bool:
    """A labelling is complete when In/Out are exactly the legal ones:
    In iff every defeater is Out, Out iff some defeater is In."""
    if set(labelling) != set(f.args):
        return False
    for a in f.args:
        ds = [labelling[d] for d in f.defeaters_of(a)]
        legally_in = all(d is Label.OUT for d in ds)
        legally_out = any(d is Label.IN for d in ds)
        if (labelling[a] is Label.IN) != legally_in:
            return False
        if (labelling[a] is Label.OUT) != legally_out:
            return False
    return True


def complete_labellings(f: Framework) -> list[Labelling]:
    """All complete labellings, in lexicographic in < out < undec order
    over the sorted argument names."""
    order = sorted(f.args)
    position = {a: i for i, a in enumerate(order)}
    results: list[Labelling] = []
    labels: Labelling = {}

    def feasible(a: str) -> bool:
        # Checks only the clauses of ``a`` that are already decided; an
        # unassigned defeater keeps every option open.
        lab = labels[a]
        got = [labels[d] for d in f.defeaters_of(a) if d in labels]
        pending = len(f.defeaters_of(a)) - len(got)
        if lab is Label.IN:
            return all(g is Label.OUT for g in got)
        if lab is Label.OUT:
            return pending > 0 or any(g is Label.IN for g in got)
        if any(g is Label.IN for g in got):
            return False
        return pending > 0 or any(g is not Label.OUT for g in got)

    def extend(i: int) -> None:
        if i == len(order):
            results.append(dict(labels))
            return
        a = order[i]
        for lab in (Label.IN, Label.OUT, Label.UNDEC):
            labels[a] = lab
            ok = feasible(a) and all(
                feasible(t) for t in f.targets_of(a) if position[t] <= i
            )
            if ok:
                extend(i + 1)
        del labels[a]

    extend(0)
    return results


def _in_set(labelling: Labelling) -> ArgSet:
    return frozenset(a for a, lab in labelling.items() if lab is Label.IN)


def _sorted_extensions(exts: Iterable[ArgSet]) -> list[ArgSet]:
    return sorted(set(exts), key=lambda e: tuple(sorted(e)))


def preferred_extensions(f: Framework) -> list[ArgSet]:
    """In-sets of complete labellings that are subset-maximal.  Never
    empty: the empty set may be the only preferred extension."""
    insets = [_in_set(l) for l in complete_labellings(f)]
    maximal = [s for s in insets if not any(s < other for other in insets)]
    return _sorted_extensions(maximal)


def stable_extensions(f: Framework) -> list[ArgSet]:
    """In-sets of complete labellings with no undecided argument.  May be
    empty (odd defeat cycles admit no stable extension)."""
    exts = [
        _in_set(l)
        for l in complete_labellings(f)
        if not any(lab is Label.UNDEC for lab in l.values())
    ]
    return _sorted_extensions(exts)


def extensions(f: Framework, kind: SemanticsKind) -> list[ArgSet]:
    """The extension family for ``kind``, deterministically ordered."""
    if kind is SemanticsKind.GROUNDED:
        return [grounded_extension(f)]
    if kind is SemanticsKind.COMPLETE:
        return _sorted_extensions(_in_set(l) for l in complete_labellings(f))
    if kind is SemanticsKind.PREFERRED:
        return preferred_extensions(f)
    return stable_extensions(f)


def all_statuses(f: Framework, kind: SemanticsKind) -> dict[str, Status]:
    """Status of every argument under ``kind``.

    Grounded: justified if in the grounded extension, overruled if
    defeated by it, defensible otherwise.  Multi-extension kinds:
    justified if in every extension, overruled if in none, defensible
    in between.  Stable semantics with no extension reports everything
    defensible; callers surfacing reports should flag that separately.
    """
    if kind is SemanticsKind.GROUNDED:
        g = grounded_extension(f)
        attacked = {t for m in g for t in f.targets_of(m)}
        out = {}
        for a in f.args:
            if a in g:
                out[a] = Status.JUSTIFIED
            elif a in attacked:
                out[a] = Status.OVERRULED
            else:
                out[a] = Status.DEFENSIBLE
        return out
    exts = extensions(f, kind)
    if not exts:
        return {a: Status.DEFENSIBLE for a in f.args}
    out = {}
    for a in f.args:
        hits = sum(1 for e in exts if a in e)
        if hits == len(exts):
            out[a] = Status.JUSTIFIED
        elif hits:
            out[a] = Status.DEFENSIBLE
        else:
            out[a] = Status.OVERRULED
    return out


def argument_status(f: Framework, name: str, kind: SemanticsKind) -> Status:
    if name not in f.args:
        raise InputError(f"unknown argument: {name!r}")
    return all_statuses(f, kind)[name]


# ---------------------------------------------------------------------------
# Text format
#
# One statement per line, `#` starts a comment:
#   arg(NAME).   att(A,B).   sub(CHILD,PARENT).   conc(NAME, LITERAL).
#
# NAME is a plain identifier, a `~`-prefixed literal (fact arguments), or a
# nested application form RULE(NAME,...) as produced when compiling a rule
# base, so compiled frameworks round-trip through this format.

_STATEMENT = re.compile(r"(arg|att|sub|conc)\((.*)\)\Z")
_IDENT_AT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _is_arg_name(text: str) -> bool:
    def node(i: int) -> int:
        if i < len(text) and text[i] == "~":
            m = _IDENT_AT.match(text, i + 1)
            if not m:
                raise ValueError
            return m.end()
        m = _IDENT_AT.match(text, i)
        if not m:
            raise ValueError
        i = m.end()
        if i < len(text) and text[i] == "(":
            i = node(i + 1)
            while i < len(text) and text[i] == ",":
                i = node(i + 1)
            if i >= len(text) or text[i] != ")":
                raise ValueError
            return i + 1
        return i

    try:
        return bool(text) and node(0) == len(text)
    except ValueError:
        return False


def _split_top_level(text: str) -> list[str]:
    parts, depth, current = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return [p.strip() for p in parts]


def _statements(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not line.endswith("."):
            raise ParseError(lineno, f"statement does not end with '.': {raw.strip()!r}")
        yield lineno, line[:-1].strip()


def parse_framework(text: str) -> Framework:
    args: set[str] = set()
    defeats: list[tuple[int, str, str]] = []
    subargs: list[tuple[int, str, str]] = []
    conclusions: dict[str, Literal] = {}
    conclusion_lines: dict[str, int] = {}

    for lineno, stmt in _statements(text):
        m = _STATEMENT.match(stmt)
        if not m:
            raise ParseError(lineno, f"unknown statement: {stmt!r}")
        kind, payload = m.group(1), m.group(2)
        parts = _split_top_level(payload)
        for part in parts if kind != "conc" else parts[:1]:
            if not _is_arg_name(part):
                raise ParseError(lineno, f"bad argument name: {part!r}")
        if kind == "arg":
            if len(parts) != 1:
                raise ParseError(lineno, "arg takes one name")
            args.add(parts[0])
        elif kind in ("att", "sub"):
            if len(parts) != 2:
                raise ParseError(lineno, f"{kind} takes two names")
            (defeats if kind == "att" else subargs).append(
                (lineno, parts[0], parts[1])
            )
        else:
            if len(parts) != 2:
                raise ParseError(lineno, "conc takes a name and a literal")
            try:
                lit = parse_literal(parts[1])
            except InputError as exc:
                raise ParseError(lineno, str(exc)) from exc
            name = parts[0]
            if name in conclusions and conclusions[name] != lit:
                raise ParseError(
                    lineno, f"conflicting conclusion for {name!r}"
                )
            conclusions[name] = lit
            conclusion_lines[name] = lineno

    for lineno, a, b in defeats + subargs:
        for name in (a, b):
            if name not in args:
                raise ParseError(lineno, f"undeclared argument: {name!r}")
    for name, lineno in conclusion_lines.items():
        if name not in args:
            raise ParseError(lineno, f"undeclared argument: {name!r}")

    return Framework(
        args=frozenset(args),
        defeats=frozenset((a, b) for _, a, b in defeats),
        subargs=frozenset((a, b) for _, a, b in subargs),
        conclusions=conclusions,
    )


def framework_to_text(f: Framework) -> str:
    """Canonical serialization: sorted statements, one per line."""
    lines = [f"arg({a})." for a in sorted(f.args)]
    lines += [f"att({a},{b})." for a, b in sorted(f.defeats)]
    lines += [f"sub({c},{p})." for c, p in sorted(f.subargs)]
    lines += [
        f"conc({a}, {f.conclusions[a]})." for a in sorted(f.conclusions)
    ]
    return "\n".join(lines) + ("\n" if lines else "")


_DOT_FILL = {
    Status.JUSTIFIED: "palegreen",
    Status.DEFENSIBLE: "khaki",
    Status.OVERRULED: "lightcoral",
}


def framework_to_dot(
    f: Framework, statuses: Mapping[str, Status] | None = None
) -> str:
    """Graphviz rendering; solid edges are defeats, dashed edges point
    from subargument to superargument.  Nodes are filled by status when
    one is supplied."""
    lines = ["digraph framework {", "  rankdir=LR;"]
    for a in sorted(f.args):
        attrs = ""
        if statuses is not None and a in statuses:
            attrs = f' [style=filled, fillcolor={_DOT_FILL[statuses[a]]}]'
        lines.append(f'  "{a}"{attrs};')
    for a, b in sorted(f.defeats):
        lines.append(f'  "{a}" -> "{b}";')
    for c, p in sorted(f.subargs):
        lines.append(f'  "{c}" -> "{p}" [style=dashed, color=gray50];')
    lines.append("}")
    return "\n".join(lines) + "\n"
