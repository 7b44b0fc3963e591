"""JSON formats for semigroups, congruences, automata and matrices."""

from __future__ import annotations

import json
from pathlib import Path

from .automata import Dfa, MarkedProductSpec
from .congruence import Congruence
from .errors import SemigroupError
from .semigroup import FiniteSemigroup, from_cayley_table, from_transformations


class InputError(SemigroupError):
    """Malformed input file."""


def read_json(path: str | Path):
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def semigroup_from_json(data) -> FiniteSemigroup:
    try:
        kind = data.get("kind", "table")
        if kind == "table":
            return from_cayley_table(int(data["order"]), data["table"], data.get("identity"))
        if kind == "transformations":
            return from_transformations(int(data["degree"]), data["generators"], monoid=bool(data.get("monoid", False)))
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"malformed semigroup description: {exc!r}") from exc
    raise InputError(f"unknown semigroup kind {kind!r}")


def semigroup_to_json(S: FiniteSemigroup) -> dict:
    out = {"kind": "table", "order": S.order, "table": S.table.tolist()}
    if S.identity is not None:
        out["identity"] = S.identity
    return out


def load_semigroup(path) -> FiniteSemigroup:
    return semigroup_from_json(read_json(path))


def load_dfa(path) -> Dfa:
    data = read_json(path)
    try:
        return Dfa.from_json(data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"{path}: malformed automaton: {exc!r}") from exc


def load_marked_product(path) -> MarkedProductSpec:
    data = read_json(path)
    try:
        return MarkedProductSpec.from_json(data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"{path}: malformed marked product: {exc!r}") from exc


def congruence_to_json(c: Congruence) -> dict:
    return c.to_json()


def matrix_to_json(M, F) -> list:
    """Rows of ``"num/den"`` strings over Q, of integers over a finite field."""
    return [[F.to_json(x) for x in row] for row in M]
