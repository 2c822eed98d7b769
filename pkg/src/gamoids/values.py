"""Immutable value plumbing shared by every layer.

Every mathematical object in this package is compared structurally, used
as a dict key, and sorted into deterministic orders for reproducible
reports.  Each value type therefore derives equality, hashing, and a
total order from a canonical key: a nested tuple of primitives whose
first element is a type tag.
"""

from __future__ import annotations

from typing import Any, Iterator, Mapping


def keyof(x: Any):
    """Canonical sort/equality key for a primitive or Value."""
    if isinstance(x, Value):
        return x.key()
    if isinstance(x, bool):
        return ("bool", 1 if x else 0)
    if isinstance(x, int):
        return ("int", x)
    if isinstance(x, str):
        return ("str", x)
    if x is None:
        return ("none",)
    if isinstance(x, tuple):
        return ("tuple",) + tuple(keyof(e) for e in x)
    if isinstance(x, frozenset):
        return ("fset",) + tuple(sorted(keyof(e) for e in x))
    raise TypeError(f"no canonical key for {type(x).__name__}")


class Value:
    """Base class for immutable structural values.

    Subclasses implement ``_key()`` returning a nested tuple of
    primitives; the first element must be a distinct type tag.  The key
    is computed once and cached.
    """

    __slots__ = ("_k", "_h")

    def key(self):
        k = getattr(self, "_k", None)
        if k is None:
            k = self._key()
            self._k = k
        return k

    def _key(self):
        raise NotImplementedError

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Value):
            return NotImplemented
        return self.key() == other.key()

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __lt__(self, other):
        return self.key() < keyof(other)

    def __hash__(self):
        h = getattr(self, "_h", None)
        if h is None:
            h = hash(self.key())
            self._h = h
        return h


def sort_values(values):
    """Deterministically sorted list of values (by canonical key)."""
    return sorted(values, key=keyof)


class fdict(Value, Mapping):
    """Immutable mapping with key-ordered items; itself a Value.

    Keys and values may be Values or primitives accepted by ``keyof``.
    """

    __slots__ = ("_items", "_map")

    def __init__(self, data=()):
        if isinstance(data, Mapping):
            pairs = list(data.items())
        else:
            pairs = list(data)
        pairs.sort(key=lambda kv: keyof(kv[0]))
        self._items = tuple(pairs)
        self._map = {}
        for k, v in pairs:
            if k in self._map:
                raise ValueError(f"duplicate key {k!r}")
            self._map[k] = v

    def _key(self):
        return ("fdict",) + tuple(
            (keyof(k), keyof(v)) for k, v in self._items
        )

    def __getitem__(self, k):
        return self._map[k]

    def __iter__(self) -> Iterator:
        return (k for k, _ in self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __contains__(self, k) -> bool:
        return k in self._map

    def get(self, k, default=None):
        return self._map.get(k, default)

    def items(self):
        return self._items

    def values(self):
        return tuple(v for _, v in self._items)

    def keys(self):
        return tuple(k for k, _ in self._items)

    def __repr__(self):
        inner = ", ".join(f"{k!r}: {v!r}" for k, v in self._items)
        return "fdict({" + inner + "})"
