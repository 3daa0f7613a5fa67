"""Multisets with real (possibly negative) multiplicities.

An :class:`Mset` maps elements to multiplicities. Elements are identified by
their canonical text form, so ``1`` and ``"1"`` name the same element; this is
also the form used for ordering and JSON keys. Entries with multiplicity
exactly zero are never stored, which makes the empty mset double as the
all-zero universe mset.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from collections.abc import Iterable, Mapping
from typing import Callable, Union

from .errors import MultikitError

Element = Union[str, int]

COMBINE_OPS = ("union", "intersection", "sum", "diff_signed", "diff_truncated", "product")

_BINARY: dict[str, Callable[[float, float], float]] = {
    "union": max,
    "intersection": min,
    "sum": lambda a, b: a + b,
    "diff_signed": lambda a, b: a - b,
    "diff_truncated": lambda a, b: max(a - b, 0),
    "product": lambda a, b: a * b,
}


def element_key(x: Element) -> str:
    """Canonical text form of an element."""
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise MultikitError(f"elements must be text or integers, got {x!r}")
    return str(x)


class Mset(Mapping):
    """Immutable finite mapping from elements to real multiplicities.

    Behaves as a read-only ``Mapping[str, float]``: iteration yields element
    keys in canonical (lexicographic) order, and looking up an absent
    element with :meth:`m` returns 0.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[Element, float] | Iterable[tuple[Element, float]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        acc: dict[str, float] = {}
        for k, v in items:
            if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
                raise MultikitError(f"multiplicity of {k!r} must be a finite real, got {v!r}")
            key = element_key(k)
            acc[key] = acc.get(key, 0) + v
        self._entries = {k: acc[k] for k in sorted(acc) if acc[k] != 0}

    @classmethod
    def _canonical(cls, entries: dict[str, float]) -> "Mset":
        # entries already have sorted text keys and finite nonzero values
        obj = cls.__new__(cls)
        obj._entries = entries
        return obj

    def __getitem__(self, key: Element) -> float:
        return self._entries[element_key(key)]

    def __iter__(self):
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, key) -> bool:
        try:
            return element_key(key) in self._entries
        except MultikitError:
            return False

    def __eq__(self, other) -> bool:
        if isinstance(other, Mset):
            return self._entries == other._entries
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self._entries.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{k!r}: {v!r}" for k, v in self._entries.items())
        return f"Mset({{{body}}})"

    def m(self, x: Element) -> float:
        return self._entries.get(element_key(x), 0)

    # operator sugar, same semantics as the module functions
    def __or__(self, other):
        return combine("union", self, other)

    def __and__(self, other):
        return combine("intersection", self, other)

    def __add__(self, other):
        return combine("sum", self, other)

    def __sub__(self, other):
        return combine("diff_signed", self, other)

    def __mul__(self, other):
        return combine("product", self, other)

    def __truediv__(self, other):
        return quotient(self, other)

    def __neg__(self):
        return complement(self)


def from_elements(items: Iterable[Element]) -> Mset:
    """Count occurrences: ``[a, a, b]`` becomes ``{a: 2, b: 1}``."""
    return Mset(Counter(element_key(x) for x in items))


def multiplicity(a: Mset, x: Element) -> float:
    return a.m(x)


def support(a: Mset, mode: str = "positive") -> set[str]:
    """Elements with m(x) > 0 (``mode="positive"``) or m(x) != 0 (``"nonzero"``)."""
    if mode == "positive":
        return {k for k, v in a.items() if v > 0}
    if mode == "nonzero":
        return set(a)
    raise MultikitError(f"unknown support mode {mode!r}")


def cardinality(a: Mset, absolute: bool = False) -> float:
    if absolute:
        return sum(abs(v) for v in a.values())
    return sum(a.values())


def is_subset(a: Mset, b: Mset) -> bool:
    """True iff m_a(x) <= m_b(x) for every x, absent elements reading as 0."""
    return all(a.m(x) <= b.m(x) for x in set(a) | set(b))


def combine(op: str, a: Mset, b: Mset) -> Mset:
    """Elementwise combination over the union of both key sets.

    ``op`` is one of ``union`` (max), ``intersection`` (min), ``sum``,
    ``diff_signed`` (a - b), ``diff_truncated`` (max(a - b, 0)) or
    ``product``.
    """
    try:
        fn = _BINARY[op]
    except KeyError:
        raise MultikitError(f"unknown mset operation {op!r}") from None
    ea, eb = a._entries, b._entries
    out = {}
    for k in sorted(ea.keys() | eb.keys()):
        v = fn(ea.get(k, 0), eb.get(k, 0))
        if v != 0:
            if not math.isfinite(v):
                raise MultikitError(f"{op} overflowed at element {k!r}")
            out[k] = v
    return Mset._canonical(out)


def union(a: Mset, b: Mset) -> Mset:
    return combine("union", a, b)


def intersection(a: Mset, b: Mset) -> Mset:
    return combine("intersection", a, b)


def quotient(a: Mset, b: Mset) -> Mset:
    """Elementwise a / b. Elements where m_b(x) == 0 are left out of the result."""
    return Mset({k: a.m(k) / v for k, v in b.items()})


def complement(a: Mset) -> Mset:
    """Sign change of every multiplicity."""
    return Mset({k: -v for k, v in a.items()})


def scale(a: Mset, c: float) -> Mset:
    if not math.isfinite(c):
        raise MultikitError("scale factor must be finite")
    return Mset({k: c * v for k, v in a.items()})


def approx_equal(a: Mset, b: Mset, atol: float = 1e-12) -> bool:
    return all(abs(a.m(k) - b.m(k)) <= atol for k in set(a) | set(b))


# -- JSON ------------------------------------------------------------------

def format_number(v: float) -> str:
    """Shortest text that round-trips; integral values are written without a fraction."""
    v = float(v)
    if v.is_integer() and abs(v) < 2**53:
        return str(int(v))
    return repr(v)


def to_json(a: Mset) -> str:
    body = ", ".join(f"{json.dumps(k)}: {format_number(v)}" for k, v in a.items())
    return '{"entries": {' + body + "}}"


def from_json(text: str) -> Mset:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MultikitError(f"invalid mset JSON: {exc}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("entries"), dict):
        raise MultikitError('mset JSON must be an object with an "entries" object')
    return Mset(doc["entries"])
