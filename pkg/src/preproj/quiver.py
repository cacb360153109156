"""Doubled quivers for the two families we handle.

Family "T": linear quiver on vertices 1..n with an extra loop at vertex n.
Family "A": plain linear quiver on vertices 1..m.  The double adds a
reverse arrow a* for every arrow a of the base quiver; the loop is its own
reverse.  Arrows are stored in walk order: an arrow goes source -> target,
and a path is a word of arrows where each target meets the next source.
"""

import json
from dataclasses import dataclass


@dataclass(frozen=True)
class Arrow:
    idx: int
    name: str
    source: int
    target: int


class DoubleQuiver:
    def __init__(self, kind, size):
        if kind not in ("T", "A"):
            raise ValueError(f"unknown quiver kind {kind!r}")
        if size < 1 or (kind == "A" and size < 2):
            raise ValueError(f"size {size} out of range for kind {kind}")
        self.kind = kind
        self.size = size
        self.nvert = size
        self.vertices = range(1, size + 1)
        # Coxeter number: 2n+1 for T_n, m+1 for A_m.
        self.h = 2 * size + 1 if kind == "T" else size + 1
        self.loop_vertex = size if kind == "T" else None
        arrows = []
        nbase = size - 1
        for i in range(1, size):
            arrows.append(Arrow(len(arrows), f"a{i}", i, i + 1))
        for i in range(1, size):
            arrows.append(Arrow(len(arrows), f"a{i}*", i + 1, i))
        if kind == "T":
            arrows.append(Arrow(len(arrows), "b", size, size))
        self.arrows = tuple(arrows)
        star = list(range(len(arrows)))
        for i in range(nbase):
            star[i] = nbase + i
            star[nbase + i] = i
        self.star = tuple(star)
        # Sign used in the preprojective relation: +1 on base arrows and
        # the loop, -1 on reversed arrows.
        self.eps = tuple(
            1 if a.idx < nbase or a.name == "b" else -1 for a in arrows
        )
        self.by_name = {a.name: a for a in arrows}

    def __repr__(self):
        return f"DoubleQuiver({self.kind}_{self.size})"

    def is_loop(self, idx):
        return self.star[idx] == idx

    def adjacency(self):
        """Adjacency matrix of the underlying graph; a loop adds 1 to its
        diagonal entry."""
        n = self.nvert
        c = [[0] * n for _ in range(n)]
        for a in self.arrows:
            if self.is_loop(a.idx):
                c[a.source - 1][a.source - 1] += 1
            elif a.name.endswith("*"):
                continue
            else:
                c[a.source - 1][a.target - 1] += 1
                c[a.target - 1][a.source - 1] += 1
        return c

    def flip(self):
        """The diagram involution: identity for kind T, i -> m+1-i for kind A."""
        if self.kind == "T":
            return {i: i for i in self.vertices}
        return {i: self.size + 1 - i for i in self.vertices}

    def to_dict(self):
        return {
            "kind": self.kind,
            "size": self.size,
            "h": self.h,
            "loop_vertex": self.loop_vertex,
            "arrows": [
                {"name": a.name, "source": a.source, "target": a.target}
                for a in self.arrows
            ],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d):
        q = cls(d["kind"], d["size"])
        if q.to_dict() != d:
            raise ValueError("quiver data does not describe a T/A double quiver")
        return q

    @classmethod
    def from_json(cls, s):
        return cls.from_dict(json.loads(s))


def type_t(n):
    return DoubleQuiver("T", n)


def type_a(m):
    return DoubleQuiver("A", m)
