"""Partitions, bipartitions, standard bitableaux and their combinatorics.

Nodes are addressed as ``(l, r, c)``: component ``l`` in {1, 2}, row ``r``
and column ``c``, all 1-based. The content of a node is ``k_l + c - r``.

>>> dim_std(((2, 1), (1,)))
8
>>> len(enumerate_bipartitions(3))
10
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial

from .errors import HypothesisViolated, IndexOutOfRange, ShapeMismatch, SizeMismatch
from .scalars import Scalar, ScalarMode

__all__ = [
    "Partition",
    "Bipartition",
    "StdBiTableau",
    "SemiStdTableau",
    "Dominance",
    "partitions",
    "enumerate_bipartitions",
    "enumerate_std",
    "dim_partition",
    "dim_std",
    "content",
    "axial_distance",
    "dominates",
    "dominance",
    "semisimple",
    "BratteliFilter",
    "BratteliGraph",
    "bratteli",
    "enumerate_sstab",
    "irr_fused",
    "phi_bijection",
    "psi_bijection",
    "format_bipartition",
    "parse_bipartition",
]

Partition = tuple[int, ...]
Bipartition = tuple[Partition, Partition]


@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """Partitions of ``n`` in reverse lexicographic order, ``(n)`` first."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_bipartitions(n: int) -> tuple[Bipartition, ...]:
    """All bipartitions of ``n``, most dominant first."""
    return tuple((a, b) for s in range(n, -1, -1) for a in partitions(s) for b in partitions(n - s))


def size(p: Partition) -> int:
    return sum(p)


def dim_partition(p: Partition) -> int:
    """Number of standard Young tableaux, by the hook length formula."""
    n = sum(p)
    if n == 0:
        return 1
    conj = [sum(1 for r in p if r > c) for c in range(p[0])] if p else []
    hooks = 1
    for r, row in enumerate(p):
        for c in range(row):
            hooks *= (row - c - 1) + (conj[c] - r - 1) + 1
    return factorial(n) // hooks


def dim_std(lam: Bipartition) -> int:
    a, b = lam
    return comb(size(a) + size(b), size(a)) * dim_partition(a) * dim_partition(b)


@dataclass(frozen=True)
class StdBiTableau:
    """A filling of a bipartition by 1..n; ``rows[l]`` lists the rows of
    component ``l + 1``."""

    rows: tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]

    @property
    def shape(self) -> Bipartition:
        return tuple(tuple(len(r) for r in comp) for comp in self.rows)  # type: ignore[return-value]

    @property
    def n(self) -> int:
        return sum(len(r) for comp in self.rows for r in comp)

    def node(self, i: int) -> tuple[int, int, int]:
        return self._nodes()[i]

    def _nodes(self) -> dict[int, tuple[int, int, int]]:
        nodes = self.__dict__.get("_node_cache")
        if nodes is None:
            nodes = {}
            for l, comp in enumerate(self.rows, start=1):
                for r, row in enumerate(comp, start=1):
                    for c, v in enumerate(row, start=1):
                        nodes[v] = (l, r, c)
            object.__setattr__(self, "_node_cache", nodes)
        return nodes

    def is_standard(self) -> bool:
        entries = sorted(v for comp in self.rows for row in comp for v in row)
        if entries != list(range(1, len(entries) + 1)):
            return False
        for comp in self.rows:
            for r, row in enumerate(comp):
                if any(a >= b for a, b in zip(row, row[1:])):
                    return False
                if r and (len(row) > len(comp[r - 1]) or any(comp[r - 1][c] >= row[c] for c in range(len(row)))):
                    return False
        return True

    def restrict(self, m: int) -> "StdBiTableau":
        """Keep the entries ``1..m``."""
        return StdBiTableau(
            tuple(
                tuple(t for t in (tuple(v for v in row if v <= m) for row in comp) if t) for comp in self.rows
            )  # type: ignore[arg-type]
        )

    def swap(self, r: int) -> "StdBiTableau | None":
        """Exchange ``r`` and ``r+1``; ``None`` if the result is not standard."""

        def f(v):
            return r + 1 if v == r else r if v == r + 1 else v

        t = StdBiTableau(tuple(tuple(tuple(f(v) for v in row) for row in comp) for comp in self.rows))  # type: ignore[arg-type]
        return t if t.is_standard() else None

    def contents(self, mode: ScalarMode) -> tuple[Scalar, ...]:
        return tuple(content(self, i, mode) for i in range(1, self.n + 1))

    def __str__(self) -> str:
        comps = ["/".join(",".join(map(str, row)) for row in comp) or "-" for comp in self.rows]
        return f"({comps[0]} | {comps[1]})"


def _from_chain(chain: list[tuple[int, int]], shape: Bipartition) -> StdBiTableau:
    rows = [[[] for _ in comp] for comp in shape]
    for v, (l, r) in enumerate(chain, start=1):
        rows[l][r].append(v)
    return StdBiTableau(tuple(tuple(tuple(row) for row in comp) for comp in rows))  # type: ignore[arg-type]


def _removable(shape: Bipartition) -> list[tuple[int, int]]:
    out = []
    for l, comp in enumerate(shape):
        for r, length in enumerate(comp):
            if length and (r + 1 == len(comp) or comp[r + 1] < length):
                out.append((l, r))
    return out


def _remove(shape: Bipartition, l: int, r: int) -> Bipartition:
    comp = list(shape[l])
    comp[r] -= 1
    if comp[r] == 0:
        comp.pop()
    new = list(shape)
    new[l] = tuple(comp)
    return tuple(new)  # type: ignore[return-value]


def addable(shape: Bipartition) -> list[tuple[int, int, int]]:
    """Addable nodes ``(l, r, c)`` of a bipartition, 1-based."""
    out = []
    for l, comp in enumerate(shape, start=1):
        for r in range(len(comp) + 1):
            length = comp[r] if r < len(comp) else 0
            if r == 0 or comp[r - 1] > length:
                out.append((l, r + 1, length + 1))
    return out


@lru_cache(maxsize=None)
def _chains(shape: Bipartition) -> tuple[tuple[tuple[int, int], ...], ...]:
    if sum(map(sum, shape)) == 0:
        return ((),)
    out = []
    for l, r in _removable(shape):
        for ch in _chains(_remove(shape, l, r)):
            out.append(ch + ((l, r),))
    return tuple(out)


def enumerate_std(shape: Bipartition) -> list[StdBiTableau]:
    """Standard bitableaux of ``shape``, ordered by their restriction chains.

    >>> [str(t) for t in enumerate_std(((1,), (1,)))]
    ['(2 | 1)', '(1 | 2)']
    """
    shape = (tuple(shape[0]), tuple(shape[1]))
    tabs = [_from_chain(list(ch), shape) for ch in _chains(shape)]
    tabs.sort(key=lambda t: tuple(t.restrict(m).shape for m in range(1, t.n + 1)))
    return tabs


def content(t: StdBiTableau, i: int, mode: ScalarMode) -> Scalar:
    if not 1 <= i <= t.n:
        raise IndexOutOfRange(f"entry {i} not in a tableau of size {t.n}")
    l, r, c = t.node(i)
    return mode.kappa(l) + (c - r)


def axial_distance(t: StdBiTableau, i: int, mode: ScalarMode) -> Scalar:
    if not 1 <= i <= t.n - 1:
        raise IndexOutOfRange(f"axial distance {i} undefined for size {t.n}")
    return content(t, i, mode) - content(t, i + 1, mode)


def dominates(a: Bipartition, b: Bipartition) -> bool:
    """``a`` dominates ``b`` (both of the same size)."""

    def sums(lam):
        out, base = [], 0
        for comp in lam:
            acc = base
            for i in range(max(len(a[0]), len(a[1]), len(b[0]), len(b[1])) + 1):
                acc += comp[i] if i < len(comp) else 0
                out.append(acc)
            base += sum(comp)
        return out

    return all(x >= y for x, y in zip(sums(a), sums(b)))


class Dominance(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def dominance(s: StdBiTableau, t: StdBiTableau) -> Dominance:
    """Compare two tableaux through all their restrictions."""
    if s.n != t.n:
        raise ShapeMismatch(f"sizes {s.n} and {t.n} differ")
    if s == t:
        return Dominance.EQUAL
    ge = all(dominates(s.restrict(m).shape, t.restrict(m).shape) for m in range(1, s.n + 1))
    le = all(dominates(t.restrict(m).shape, s.restrict(m).shape) for m in range(1, s.n + 1))
    if ge and le:
        return Dominance.EQUAL
    if ge:
        return Dominance.GREATER
    if le:
        return Dominance.LESS
    return Dominance.INCOMPARABLE


def semisimple(n: int, mode: ScalarMode) -> bool:
    if mode.is_generic:
        return True
    d = mode.k1 - mode.k2
    return not (d.q == 1 and abs(int(d.p)) <= n - 1)


# Bratteli diagrams -----------------------------------------------------------


@dataclass(frozen=True)
class BratteliFilter:
    """``full``, ``avoiding`` (second component has at most one row) or
    ``cap`` (additionally the first row of the first component is at most k)."""

    kind: str = "full"
    k: int | None = None

    def __call__(self, lam: Bipartition) -> bool:
        first, second = lam
        if self.kind == "full":
            return True
        if len(second) >= 2:
            return False
        if self.kind == "avoiding":
            return True
        return not first or first[0] < self.k + 1


@dataclass
class BratteliGraph:
    levels: list[list[Bipartition]]
    edges: list[tuple[int, Bipartition, Bipartition]]

    def level_dims(self) -> list[int]:
        return [sum(dim_std(lam) ** 2 for lam in level) for level in self.levels]

    def to_dot(self) -> str:
        def nid(level, lam):
            return f'"{level}:{format_bipartition(lam)}"'

        lines = ["digraph bratteli {", "  rankdir=TB;", "  node [shape=box, fontsize=10];"]
        for level, lams in enumerate(self.levels):
            lines.append(f"  subgraph level_{level} {{")
            lines.append("    rank=same;")
            for lam in lams:
                lines.append(f'    {nid(level, lam)} [label="{format_bipartition(lam)}\\nd={dim_std(lam)}"];')
            lines.append("  }")
        for level, lam, mu in self.edges:
            lines.append(f"  {nid(level, lam)} -> {nid(level + 1, mu)};")
        dims = ", ".join(str(d) for d in self.level_dims())
        lines.append(f'  label="level dims: {dims}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def bratteli(levels: int, filter: BratteliFilter = BratteliFilter()) -> BratteliGraph:
    """Branching graph for ranks ``0..levels``; an edge adds one box.

    >>> bratteli(3, BratteliFilter("avoiding")).level_dims()
    [1, 2, 7, 34]
    """
    nodes = [[lam for lam in enumerate_bipartitions(m) if filter(lam)] for m in range(levels + 1)]
    edges = []
    for m in range(levels):
        below = set(nodes[m])
        for mu in nodes[m + 1]:
            for l, r in _removable(mu):
                lam = _remove(mu, l, r)
                if lam in below:
                    edges.append((m, lam, mu))
    order = {lam: i for m in range(levels + 1) for i, lam in enumerate(enumerate_bipartitions(m))}
    edges.sort(key=lambda e: (e[0], order[e[1]], order[e[2]]))
    return BratteliGraph(nodes, edges)


# semistandard tableaux and the bijection with bitableaux ---------------------


@dataclass(frozen=True)
class SemiStdTableau:
    rows: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> Partition:
        return tuple(len(r) for r in self.rows)

    def is_semistandard(self) -> bool:
        for r, row in enumerate(self.rows):
            if any(a > b for a, b in zip(row, row[1:])):
                return False
            if r and (len(row) > len(self.rows[r - 1]) or any(self.rows[r - 1][c] >= row[c] for c in range(len(row)))):
                return False
        return True

    def weight(self) -> tuple[int, ...]:
        entries = [v for row in self.rows for v in row]
        top = max(entries, default=0)
        return tuple(entries.count(v) for v in range(1, top + 1))

    def __str__(self) -> str:
        return "/".join(",".join(map(str, r)) for r in self.rows)


def enumerate_sstab(lam: Partition, k: int, n: int | None = None) -> list[SemiStdTableau]:
    """Semistandard tableaux of shape ``lam`` and weight ``(k, 1, ..., 1)``.

    >>> len(enumerate_sstab((4, 1), 3))
    2
    """
    lam = tuple(lam)
    total = sum(lam)
    if n is None:
        n = total - k
    if total != k + n or n < 0:
        raise SizeMismatch(f"shape of size {total} cannot carry weight k={k}, n={n}")
    if not lam or lam[0] < k:
        return []
    # The ones fill the first k boxes of the first row; the entries 2..n+1
    # then form a standard filling of the skew shape lam / (k).
    out = []
    filled = list(lam)

    def place_inner(rows, v):
        if v == 1:
            out.append(SemiStdTableau(tuple(tuple(r) for r in rows)))
            return
        for r in range(len(lam)):
            c = filled[r] - 1
            if c < 0 or (r == 0 and c < k):
                continue
            if r + 1 < len(lam) and filled[r + 1] > c:
                continue
            rows[r][c] = v
            filled[r] -= 1
            place_inner(rows, v - 1)
            filled[r] += 1
            rows[r][c] = 0

    rows = [[0] * part for part in lam]
    for c in range(k):
        rows[0][c] = 1
    place_inner(rows, n + 1)
    out.sort(key=lambda T: T.rows)
    return out


def irr_fused(k: int, n: int) -> list[Partition]:
    """Partitions of ``k + n`` whose first row has at least ``k`` boxes."""
    return [lam for lam in partitions(k + n) if lam[0] >= k]


def phi_bijection(T: SemiStdTableau, k: int, check_hypothesis: bool = True) -> StdBiTableau:
    """Lower entries by one; rows below the first give the first component,
    the first row beyond its first ``k`` boxes gives the second.

    The inverse is only guaranteed when ``n <= k``; set ``check_hypothesis``
    to ``False`` to apply the forward construction anyway.
    """
    n = sum(T.shape) - k
    if check_hypothesis and n > k:
        raise HypothesisViolated(f"the bijection needs n <= k (n={n}, k={k})")
    if list(T.rows[0][:k]) != [1] * k:
        raise SizeMismatch("first row must start with k ones")
    first = tuple(tuple(v - 1 for v in row) for row in T.rows[1:])
    second = (tuple(v - 1 for v in T.rows[0][k:]),) if len(T.rows[0]) > k else ()
    return StdBiTableau((first, second))


def psi_bijection(t: StdBiTableau, k: int) -> SemiStdTableau:
    """Inverse of :func:`phi_bijection` on bitableaux whose second
    component has at most one row."""
    n = t.n
    if n > k:
        raise HypothesisViolated(f"the bijection needs n <= k (n={n}, k={k})")
    first, second = t.rows
    if len(second) > 1:
        raise ShapeMismatch("second component must have at most one row")
    top = (1,) * k + tuple(v + 1 for v in (second[0] if second else ()))
    T = SemiStdTableau((top,) + tuple(tuple(v + 1 for v in row) for row in first))
    if not T.is_semistandard():
        raise HypothesisViolated("result is not semistandard")
    return T


def format_partition(p: Partition) -> str:
    return "[" + ",".join(map(str, p)) + "]"


def format_bipartition(lam: Bipartition) -> str:
    return f"({format_partition(lam[0])},{format_partition(lam[1])})"


def parse_bipartition(text: str) -> Bipartition:
    import json

    text = text.strip()
    inner = text[1:-1] if text.startswith("(") else text
    data = json.loads("[" + inner + "]")
    return (tuple(data[0]), tuple(data[1]))
