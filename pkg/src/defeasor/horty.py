"""Interleaved, deeply skeptical evaluation with permanent discarding.

Arguments are built level by level and judged as soon as they appear.  At
each height, arguments whose subarguments already died are never built;
then every live argument strictly defeated by a live argument is discarded
at once; then every remaining pair of live arguments that defeat each
other is cut off together.  Discards are permanent: a dead argument exerts
no defeat later, so nothing is ever reinstated and no floating conclusion
survives.

Within a height the strict phase lands before the tie phase.  An argument
strictly defeated by something that itself dies in the same height's tie
phase therefore still dies.  The ordering is a committed choice of this
reconstruction; the recorded discard reasons make it auditable.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass

from .literals import Literal
from .structured import (
    DEFAULT_HEIGHT_CAP,
    Argument,
    RuleBase,
    compute_defeats,
    construct_arguments,
)


class DiscardReason(enum.Enum):
    STRICTLY_DEFEATED = "strictly_defeated"
    MUTUAL_TIE = "mutual_tie"
    DEAD_SUBARGUMENT = "dead_subargument"


_PHASE = {
    DiscardReason.STRICTLY_DEFEATED: "strict",
    DiscardReason.MUTUAL_TIE: "tie",
    DiscardReason.DEAD_SUBARGUMENT: "construct",
}


@dataclass(frozen=True)
class Discard:
    argument: Argument
    reason: DiscardReason
    height: int

    @property
    def phase(self) -> str:
        return _PHASE[self.reason]


@dataclass(frozen=True)
class HortyResult:
    survivors: tuple[Argument, ...]
    discarded: tuple[Discard, ...]
    conclusions: frozenset[Literal]


def horty_evaluate(
    rb: RuleBase, height_cap: int = DEFAULT_HEIGHT_CAP
) -> HortyResult:
    """Evaluate a rule base under the interleaved discipline.

    Every constructible argument ends up either a survivor or a discard;
    conclusions are the literals concluded by survivors.
    """
    args = construct_arguments(rb, height_cap)
    defeats = compute_defeats(args, rb).defeats

    by_height: dict[int, list[Argument]] = defaultdict(list)
    for a in args:
        by_height[a.height].append(a)

    live: dict[str, Argument] = {}
    discards: list[Discard] = []

    def cut(ids: set[str], reason: DiscardReason, height: int) -> None:
        for name in sorted(ids):
            discards.append(Discard(live.pop(name), reason, height))

    for height in range(max(by_height, default=-1) + 1):
        for a in by_height.get(height, ()):
            if all(s.id in live for s in a.subarguments):
                live[a.id] = a
            else:
                discards.append(Discard(a, DiscardReason.DEAD_SUBARGUMENT, height))

        strict_kills = {
            y
            for y in live
            for x in live
            if (x, y) in defeats and (y, x) not in defeats
        }
        cut(strict_kills, DiscardReason.STRICTLY_DEFEATED, height)

        tie_kills = {
            y
            for y in live
            for x in live
            if (x, y) in defeats and (y, x) in defeats
        }
        cut(tie_kills, DiscardReason.MUTUAL_TIE, height)

    survivors = tuple(sorted(live.values(), key=lambda a: (a.height, a.id)))
    return HortyResult(
        survivors=survivors,
        discarded=tuple(discards),
        conclusions=frozenset(
            a.conclusion for a in survivors if isinstance(a.conclusion, Literal)
        ),
    )


def horty_conclusion_holds(
    rb: RuleBase, lit: Literal, height_cap: int = DEFAULT_HEIGHT_CAP
) -> bool:
    return lit in horty_evaluate(rb, height_cap).conclusions


def format_trace(result: HortyResult) -> str:
    """One line per discard: height, phase, argument, reason."""
    lines = [
        f"[h{d.height}/{d.phase}] discard {d.argument.id}: {d.reason.value}"
        for d in result.discarded
    ]
    lines += [f"survives {a.id}: {a.conclusion}" for a in result.survivors]
    return "\n".join(lines) + ("\n" if lines else "")


def result_to_json(result: HortyResult) -> dict:
    return {
        "survivors": [a.id for a in result.survivors],
        "discarded": [
            {
                "argument": d.argument.id,
                "reason": d.reason.value,
                "phase": d.phase,
                "height": d.height,
            }
            for d in result.discarded
        ],
        "conclusions": sorted(str(lit) for lit in result.conclusions),
    }
