"""Propositional literals, shared by the rule language and the model checker."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import InputError

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True, order=True)
class Literal:
    """An atom or its negation. Ordering sorts by atom, positive first."""

    atom: str
    negated: bool = False

    def complement(self) -> "Literal":
        return Literal(self.atom, not self.negated)

    def __str__(self) -> str:
        return f"~{self.atom}" if self.negated else self.atom


def is_identifier(text: str) -> bool:
    return bool(_IDENT.match(text))


def parse_literal(text: str) -> Literal:
    """Parse ``name`` or ``~name`` into a Literal."""
    text = text.strip()
    negated = text.startswith("~")
    atom = text[1:].strip() if negated else text
    if not is_identifier(atom):
        raise InputError(f"not a literal: {text!r}")
    return Literal(atom, negated)
