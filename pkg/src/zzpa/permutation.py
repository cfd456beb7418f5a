"""Finite permutations on a contiguous label range {start, ..., start+len-1}."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]
    start: int = 1

    def __post_init__(self):
        labels = range(self.start, self.start + len(self.images))
        if sorted(self.images) != list(labels):
            raise ValueError(f"not a bijection of {self.start}..{labels.stop - 1}: {self.images}")

    @classmethod
    def from_images(cls, images: Sequence[int], start: int = 1) -> "Permutation":
        return cls(tuple(images), start)

    @property
    def labels(self) -> range:
        return range(self.start, self.start + len(self.images))

    def __call__(self, i: int) -> int:
        return self.images[i - self.start]

    def __len__(self) -> int:
        return len(self.images)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i in self.labels:
            inv[self(i) - self.start] = i
        return Permutation(tuple(inv), self.start)

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other."""
        if other.start != self.start or len(other) != len(self):
            raise ValueError("domains differ")
        return Permutation(tuple(self(other(i)) for i in self.labels), self.start)

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles, each written from its largest label, largest first."""
        seen: set[int] = set()
        out = []
        for i in reversed(self.labels):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self(i)
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def is_cyclic(self) -> bool:
        return len(self.cycles()) == 1

    def __str__(self) -> str:
        return "".join("(" + ",".join(map(str, c)) + ")" for c in self.cycles())
