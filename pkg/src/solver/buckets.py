"""Search bookkeeping shared by the DPLL engines: indexed sets and stack frames."""

from __future__ import annotations

from typing import Iterator

import numpy as np


class IndexedSet:
    __slots__ = ("_items", "_pos")

    def __init__(self, capacity: int) -> None:
        self._items: list[int] = []
        self._pos: list[int] = [-1] * capacity

    def add(self, item: int) -> None:
        self._pos[item] = len(self._items)
        self._items.append(item)

    def remove(self, item: int) -> None:
        idx = self._pos[item]
        last = self._items.pop()
        if last != item:
            self._items[idx] = last
            self._pos[last] = idx
        self._pos[item] = -1

    def pick(self, rng: np.random.Generator) -> int:
        return self._items[int(rng.integers(len(self._items)))]

    def __contains__(self, item: int) -> bool:
        return self._pos[item] >= 0

    def __len__(self) -> int:
        return len(self._items)

    def __iter__(self) -> Iterator[int]:
        return iter(self._items)


class SearchFrame:
    """One open node on the explicit search stack.

    ``mark`` is the trail length to undo to before each child is tried.
    """

    __slots__ = ("height", "children", "next", "mark")

    def __init__(self, height: int, children: tuple[tuple[int, int], ...], mark: int) -> None:
        self.height = height
        self.children = children
        self.next = 0
        self.mark = mark

    @property
    def done(self) -> bool:
        return self.next == len(self.children)

    def take(self) -> tuple[int, int]:
        child = self.children[self.next]
        self.next += 1
        return child
