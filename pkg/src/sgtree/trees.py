"""Rooted plane trees as depth-first outdegree words.

Conventions: the root r has degree 1 and is implicit; the word lists the
outdegrees of the remaining vertices in depth-first order, starting with
r's unique child s.  A word of length N describes a tree with N edges
(counting the r-s edge) and N+1 vertices.  Validity is the Lukasiewicz
condition: every proper prefix sum of (outdeg - 1) stays >= 0 and the full
sum is -1.  The empty word is allowed as the degenerate radius-0 ball
consisting of r alone.

The local topology is compared through left balls: the radius-R left ball
keeps, top-down from s, only vertices at distance <= R from r, and at most
the R-1 leftmost children of any kept vertex (so kept vertices have degree
<= R in the result).  Two stars of different sizes therefore share the
same small left balls, which is what lets a sequence of finite trees
converge to the infinite star.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional


@dataclass(frozen=True)
class PlaneTree:
    word: tuple[int, ...]

    def __post_init__(self) -> None:
        word = tuple(self.word)
        object.__setattr__(self, "word", word)
        if not word:
            return  # degenerate: just the root r
        s = 0
        for i, d in enumerate(word):
            if d < 0:
                raise ValueError(f"negative outdegree at position {i}")
            s += d - 1
            if s < 0 and i < len(word) - 1:
                raise ValueError("invalid outdegree word: prefix closes early")
        if s != -1:
            raise ValueError("invalid outdegree word: total must be length - 1")

    @property
    def n_edges(self) -> int:
        return len(self.word)

    @property
    def sigma_s(self) -> int:
        """Degree of s, the unique neighbour of the root."""
        if not self.word:
            raise ValueError("degenerate tree has no vertex s")
        return self.word[0] + 1

    def __str__(self) -> str:
        return " ".join(str(d) for d in self.word)

    @staticmethod
    def from_text(text: str) -> "PlaneTree":
        stripped = text.split()
        return PlaneTree(tuple(int(tok) for tok in stripped))


def star_tree(n_edges: int) -> PlaneTree:
    """s with n_edges - 1 leaf children."""
    if n_edges < 1:
        raise ValueError("need at least one edge")
    return PlaneTree((n_edges - 1,) + (0,) * (n_edges - 1))


def path_tree(n_edges: int) -> PlaneTree:
    """The path r-s-...-leaf with the given number of edges."""
    if n_edges < 1:
        raise ValueError("need at least one edge")
    return PlaneTree((1,) * (n_edges - 1) + (0,))


def star_left_ball(radius: int) -> PlaneTree:
    """Left ball of the infinite star: s plus radius-1 leaf children."""
    if radius < 1:
        raise ValueError("radius must be >= 1")
    return PlaneTree((radius - 1,) + (0,) * (radius - 1))


@dataclass(frozen=True)
class DegreeProfile:
    """Counts of vertices by degree, including the implicit root in X_1."""

    counts: dict[int, int]
    max_degree: int
    sigma_s: int

    def count(self, degree: int) -> int:
        return self.counts.get(degree, 0)


def degree_profile(t: PlaneTree) -> DegreeProfile:
    """Degree counts X_i.  Satisfies sum X_i = N+1 and sum i*X_i = 2N."""
    counts: Counter[int] = Counter()
    counts[1] += 1  # the root r
    for d in t.word:
        counts[d + 1] += 1
    return DegreeProfile(
        counts=dict(counts),
        max_degree=max(counts),
        sigma_s=t.sigma_s,
    )


def branch_sizes_word(word: tuple[int, ...]) -> list[int]:
    """Vertex counts of the subtrees hanging below s, left to right."""
    if not word:
        return []
    sizes: list[int] = []
    pos = 1
    for _ in range(word[0]):
        need, i = 1, pos
        while need:
            need += word[i] - 1
            i += 1
        sizes.append(i - pos)
        pos = i
    return sizes


def branch_sizes(t: PlaneTree) -> list[int]:
    """Sizes of the sigma(s)-1 branches at s; they sum to N-1."""
    return branch_sizes_word(t.word)


def _children_lists(word: tuple[int, ...]) -> list[list[int]]:
    """children[v] in left-to-right order, vertices indexed by word position."""
    children: list[list[int]] = [[] for _ in word]
    stack: list[list[int]] = []  # [vertex, remaining child slots]
    for v, d in enumerate(word):
        if stack:
            stack[-1][1] -= 1
            children[stack[-1][0]].append(v)
            while stack and stack[-1][1] == 0:
                stack.pop()
        if d > 0:
            stack.append([v, d])
    return children


def _pruned_word(
    word: tuple[int, ...], radius: int, child_cap: Optional[int]
) -> tuple[int, ...]:
    """Depth-first word of the subtree kept by the ball/left-ball rules.

    Vertices deeper than radius (s is at depth 1) are dropped; when
    child_cap is set, each kept vertex also keeps at most that many of its
    leftmost children.
    """
    if radius <= 0 or not word:
        return ()
    children = _children_lists(word)
    out: list[int] = []
    stack: list[tuple[int, int]] = [(0, 1)]  # (vertex, depth), preorder
    while stack:
        v, depth = stack.pop()
        if depth >= radius:
            kept = 0
        elif child_cap is None:
            kept = word[v]
        else:
            kept = min(word[v], child_cap)
        out.append(kept)
        for c in reversed(children[v][:kept]):
            stack.append((c, depth + 1))
    return tuple(out)


def ball(t: PlaneTree, radius: int) -> PlaneTree:
    """Subtree induced by vertices at distance <= radius from r."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    return PlaneTree(_pruned_word(t.word, radius, None))


def left_ball(t: PlaneTree, radius: int) -> PlaneTree:
    """Radius-R left ball: depth-capped at R, at most R-1 children kept.

    Idempotent at fixed radius, and equal to t whenever all degrees and the
    height already fit inside the radius.
    """
    if radius < 1:
        raise ValueError("radius must be >= 1")
    return PlaneTree(_pruned_word(t.word, radius, radius - 1))


def tree_distance(t1: PlaneTree, t2: PlaneTree) -> Fraction:
    """Local-topology distance: 1/R at the first radius R where the left
    balls disagree, 0 for equal trees.

    Equivalently inf of 1/(R+1) over the radii where the left balls agree;
    radius 1 always agrees (both collapse to the single edge r-s), so
    distinct trees have distance <= 1/2.
    """
    if t1.word == t2.word:
        return Fraction(0)
    radius = 1
    while True:
        if _pruned_word(t1.word, radius, radius - 1) != _pruned_word(
            t2.word, radius, radius - 1
        ):
            return Fraction(1, radius)
        radius += 1


def is_left_subtree(t1: PlaneTree, t2: PlaneTree) -> bool:
    """True when t1's vertex set embeds in t2's at identical positions.

    Both trees are closed under ancestors and left siblings by
    construction, so containment reduces to outdeg(v in t1) <= outdeg(v in
    t2) along matching positions, checked without recursion.
    """
    if not t1.word:
        return True
    if not t2.word:
        return False
    c1 = _children_lists(t1.word)
    c2 = _children_lists(t2.word)
    stack = [(0, 0)]
    while stack:
        v1, v2 = stack.pop()
        if t1.word[v1] > t2.word[v2]:
            return False
        stack.extend(zip(c1[v1], c2[v2]))
    return True


def write_trees(trees: Iterable[PlaneTree], path: str) -> None:
    """One outdegree word per line."""
    with open(path, "w", encoding="ascii") as fh:
        for t in trees:
            fh.write(str(t) + "\n")


def read_trees(path: str) -> list[PlaneTree]:
    with open(path, "r", encoding="ascii") as fh:
        return [PlaneTree.from_text(line) for line in fh if line.strip()]
