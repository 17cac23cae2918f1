"""The fused permutations algebra ``H_{k,n}`` and its models.

A fused permutation has ``n + 1`` points on top and on bottom; the first
point of each row is an ellipse carrying ``k`` strand ends. It is stored as
the multiset ``s1`` of bottom points reached from the top ellipse, plus the
bottom point ``targets[a - 2]`` reached from each top point ``a >= 2``.

Multiplying ``d * e`` puts ``d`` above ``e``. Strands that meet at the merged
middle ellipse are reconnected in all ``k!`` ways and the result is averaged.

>>> d = FusedPerm(2, 1, (1, 2), (1,))
>>> print(DiagramElement.basis(d) * DiagramElement.basis(d))
1/2*[{1,1} ; 2 -> 2] + 1/2*[{1,2} ; 2 -> 1]
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping

import flint

from .errors import IndexOutOfRange, ModeMismatch, ShapeMismatch, SizeMismatch
from .hecke import HeckeElement, embed
from .idempotents import CornerLabel, corner_idempotent
from .linalg import Subspace
from .quotients import relation_A, relation_cap
from .report import Report
from .scalars import Rational, ScalarMode, rational
from .signed_words import X1, AVOIDING, avoiding_cap, enumerate_words, spelling, spelling_text, to_blocks

__all__ = [
    "FusedPerm",
    "DiagramElement",
    "SymElement",
    "enumerate_fused",
    "fused_count",
    "multiply_diagrams",
    "generators",
    "symmetrizer",
    "glue",
    "unglue",
    "sandwich_image",
    "sandwich_product_check",
    "phi",
    "phi_mode",
    "verify_phi_relations",
    "kernel_check",
    "generation_check",
]


@dataclass(frozen=True, order=True)
class FusedPerm:
    k: int
    n: int
    s1: tuple[int, ...]
    targets: tuple[int, ...]

    def __post_init__(self):
        s1 = tuple(sorted(self.s1))
        object.__setattr__(self, "s1", s1)
        object.__setattr__(self, "targets", tuple(self.targets))
        if len(s1) != self.k or len(self.targets) != self.n:
            raise ShapeMismatch(f"bad fused permutation sizes for k={self.k}, n={self.n}")
        values = Counter(s1 + self.targets)
        expected = Counter({1: self.k, **{v: 1 for v in range(2, self.n + 2)}})
        if values != expected:
            raise ValueError(f"not a fused permutation: {s1} ; {self.targets}")

    @classmethod
    def identity(cls, k: int, n: int) -> "FusedPerm":
        return cls(k, n, (1,) * k, tuple(range(2, n + 2)))

    @property
    def through(self) -> int:
        """Number of strands from the top ellipse to ordinary bottom points."""
        return sum(1 for v in self.s1 if v != 1)

    def __str__(self) -> str:
        body = ", ".join(f"{a} -> {t}" for a, t in enumerate(self.targets, start=2))
        return "{" + ",".join(map(str, self.s1)) + "}" + (f" ; {body}" if body else "")

    def ascii(self) -> str:
        """Two-row sketch listing, for each top point, the bottom point it reaches."""
        top = ["E"] + [str(a) for a in range(2, self.n + 2)]
        bottom = ["{" + ",".join("E" if v == 1 else str(v) for v in self.s1) + "}"]
        bottom += ["E" if t == 1 else str(t) for t in self.targets]
        width = max(len(x) for x in top + bottom) + 1
        return "".join(x.ljust(width) for x in top).rstrip() + "\n" + "".join(x.ljust(width) for x in bottom).rstrip()


@lru_cache(maxsize=None)
def enumerate_fused(k: int, n: int) -> tuple[FusedPerm, ...]:
    """All fused permutations, sorted.

    >>> len(enumerate_fused(2, 2))
    7
    """
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    points = range(2, n + 2)
    out = []
    for i in range(min(k, n) + 1):
        for reached in itertools.combinations(points, i):
            for to_ellipse in itertools.combinations(points, i):
                rest_top = [a for a in points if a not in to_ellipse]
                rest_bottom = [b for b in points if b not in reached]
                for image in itertools.permutations(rest_bottom):
                    targets = dict(zip(rest_top, image))
                    targets.update({a: 1 for a in to_ellipse})
                    out.append(FusedPerm(k, n, (1,) * (k - i) + reached, tuple(targets[a] for a in points)))
    return tuple(sorted(out))


def fused_count(k: int, n: int) -> int:
    return sum(comb(n, i) ** 2 * factorial(n - i) for i in range(min(k, n) + 1))


@lru_cache(maxsize=None)
def _arrangements(values: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], Rational], ...]:
    """Distinct orderings of a multiset with their share of all ``k!`` orderings."""
    k = len(values)
    counts = Counter(itertools.permutations(values))
    total = factorial(k)
    return tuple((arr, flint.fmpq(c, total)) for arr, c in sorted(counts.items()))


@lru_cache(maxsize=None)
def _mul_basis(d: FusedPerm, e: FusedPerm) -> tuple[tuple[FusedPerm, Rational], ...]:
    k, n = d.k, d.n
    acc: dict = {}
    # strand ends arriving at the middle ellipse, in a fixed slot order
    for arr, w in _arrangements(e.s1):
        it = iter(arr)
        s1 = [e.targets[v - 2] if v != 1 else next(it) for v in d.s1]
        targets = [e.targets[t - 2] if t != 1 else next(it) for t in d.targets]
        f = FusedPerm(k, n, tuple(s1), tuple(targets))
        acc[f] = acc.get(f, 0) + w
    return tuple((f, c) for f, c in sorted(acc.items()) if c)


class DiagramElement:
    """Rational linear combination of fused permutations with fixed ``k, n``."""

    __slots__ = ("k", "n", "terms")

    def __init__(self, k: int, n: int, terms: Mapping[FusedPerm, object] | None = None):
        self.k, self.n = k, n
        clean = {}
        for f, c in (terms or {}).items():
            if (f.k, f.n) != (k, n):
                raise ShapeMismatch(f"diagram of shape {(f.k, f.n)} in an element of shape {(k, n)}")
            c = rational(c)
            if c:
                clean[f] = clean.get(f, 0) + c
        self.terms = {f: c for f, c in clean.items() if c}

    @classmethod
    def basis(cls, f: FusedPerm) -> "DiagramElement":
        return cls(f.k, f.n, {f: 1})

    @classmethod
    def one(cls, k: int, n: int) -> "DiagramElement":
        return cls.basis(FusedPerm.identity(k, n))

    @classmethod
    def zero(cls, k: int, n: int) -> "DiagramElement":
        return cls(k, n)

    def _check(self, other: "DiagramElement") -> None:
        if (self.k, self.n) != (other.k, other.n):
            raise ShapeMismatch(f"{(self.k, self.n)} vs {(other.k, other.n)}")

    def __add__(self, other):
        if not isinstance(other, DiagramElement):
            other = DiagramElement.one(self.k, self.n).scale(other)
        self._check(other)
        acc = dict(self.terms)
        for f, c in other.terms.items():
            v = acc.get(f, 0) + c
            if v:
                acc[f] = v
            else:
                acc.pop(f, None)
        out = DiagramElement(self.k, self.n)
        out.terms = acc
        return out

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, DiagramElement):
            other = DiagramElement.one(self.k, self.n).scale(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "DiagramElement":
        c = rational(c)
        out = DiagramElement(self.k, self.n)
        out.terms = {f: v * c for f, v in self.terms.items()} if c else {}
        return out

    def __mul__(self, other):
        if isinstance(other, DiagramElement):
            return multiply_diagrams(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, DiagramElement):
            return NotImplemented
        return (self.k, self.n) == (other.k, other.n) and self.terms == other.terms

    def __hash__(self):
        return hash((self.k, self.n, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, f: FusedPerm) -> Rational:
        return self.terms.get(f, flint.fmpq(0))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*[{f}]" for f, c in sorted(self.terms.items()))

    def __repr__(self) -> str:
        return f"DiagramElement(k={self.k}, n={self.n}, {self})"

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "terms": [
                {"s1": list(f.s1), "targets": list(f.targets), "coeff": str(c)} for f, c in sorted(self.terms.items())
            ],
        }


def multiply_diagrams(a: DiagramElement, b: DiagramElement) -> DiagramElement:
    a._check(b)
    acc: dict = {}
    for f, c in a.terms.items():
        for g, d in b.terms.items():
            cd = c * d
            for h, w in _mul_basis(f, g):
                v = acc.get(h, 0) + cd * w
                if v:
                    acc[h] = v
                else:
                    acc.pop(h, None)
    out = DiagramElement(a.k, a.n)
    out.terms = acc
    return out


@dataclass(frozen=True)
class Generators:
    k: int
    n: int

    def one(self) -> DiagramElement:
        return DiagramElement.one(self.k, self.n)

    def sigma(self, i: int) -> DiagramElement:
        """Swap of the ordinary points ``i + 1`` and ``i + 2``."""
        if not 1 <= i <= self.n - 1:
            raise IndexOutOfRange(f"sigma_{i} needs 1 <= i <= n-1 (n={self.n})")
        targets = list(range(2, self.n + 2))
        targets[i - 1], targets[i] = targets[i], targets[i - 1]
        return DiagramElement.basis(FusedPerm(self.k, self.n, (1,) * self.k, tuple(targets)))

    def sigma0(self) -> DiagramElement:
        return self.h(1)

    def t(self) -> DiagramElement:
        return self.one() + self.sigma0().scale(self.k)

    def h(self, i: int) -> DiagramElement:
        """The top ellipse sends ``i`` strands to points ``2..i+1`` and those
        top points go back to the bottom ellipse."""
        if not 0 <= i <= min(self.k, self.n):
            raise IndexOutOfRange(f"h_{i} needs 0 <= i <= min(k, n)")
        points = range(2, self.n + 2)
        s1 = (1,) * (self.k - i) + tuple(range(2, i + 2))
        targets = tuple(1 if a <= i + 1 else a for a in points)
        return DiagramElement.basis(FusedPerm(self.k, self.n, s1, targets))


def generators(k: int, n: int) -> Generators:
    return Generators(k, n)


# the symmetric group model ---------------------------------------------------


class SymElement:
    """Rational combination of permutations of ``1..m`` (tuples of images).

    The product is composition with the right factor applied first, which
    matches stacking the left diagram above the right one.
    """

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.m = m
        self.terms = {tuple(p): rational(c) for p, c in (terms or {}).items() if c}

    def __mul__(self, other: "SymElement") -> "SymElement":
        if self.m != other.m:
            raise SizeMismatch(f"{self.m} vs {other.m}")
        acc: dict = {}
        for p, c in self.terms.items():
            for q, d in other.terms.items():
                r = tuple(p[i - 1] for i in q)
                v = acc.get(r, 0) + c * d
                if v:
                    acc[r] = v
                else:
                    acc.pop(r, None)
        out = SymElement(self.m)
        out.terms = acc
        return out

    def __eq__(self, other):
        return isinstance(other, SymElement) and self.m == other.m and self.terms == other.terms

    @classmethod
    def perm(cls, p) -> "SymElement":
        return cls(len(p), {tuple(p): 1})


def symmetrizer(k: int, m: int) -> SymElement:
    """Average of all permutations of the first ``k`` letters, inside ``S_m``."""
    if m < k:
        raise SizeMismatch(f"cannot place S_{k} inside S_{m}")
    w = flint.fmpq(1, factorial(k))
    rest = tuple(range(k + 1, m + 1))
    return SymElement(m, {p + rest: w for p in itertools.permutations(range(1, k + 1))})


def glue(w: tuple[int, ...], k: int) -> FusedPerm:
    """Merge the first ``k`` points of each row into an ellipse.

    Bottom point ``i`` of ``w`` is joined to top point ``w(i)``.
    """
    m = len(w)
    n = m - k
    inv = [0] * (m + 1)
    for i, v in enumerate(w, start=1):
        inv[v] = i

    def fuse(i):
        return 1 if i <= k else i - k + 1

    s1 = tuple(fuse(inv[t]) for t in range(1, k + 1))
    targets = tuple(fuse(inv[k + a]) for a in range(1, n + 1))
    return FusedPerm(k, n, s1, targets)


def unglue(f: FusedPerm) -> tuple[int, ...]:
    """A permutation whose gluing is ``f``."""
    k, n = f.k, f.n
    free = iter(range(1, k + 1))
    bottom_of_top = {}
    for t, v in zip(range(1, k + 1), f.s1):
        bottom_of_top[t] = next(free) if v == 1 else k + v - 1
    for a, v in enumerate(f.targets, start=2):
        bottom_of_top[k + a - 1] = next(free) if v == 1 else k + v - 1
    w = [0] * (k + n)
    for top, bottom in bottom_of_top.items():
        w[bottom - 1] = top
    return tuple(w)


def sandwich_image(x: SymElement, k: int) -> DiagramElement:
    """Push a combination of permutations through the gluing map."""
    n = x.m - k
    acc: dict = {}
    for p, c in x.terms.items():
        f = glue(p, k)
        acc[f] = acc.get(f, 0) + c
    return DiagramElement(k, n, acc)


def sandwich_product_check(k: int, n: int, pairs: Iterable[tuple[FusedPerm, FusedPerm]] | None = None) -> Report:
    """Compare diagram multiplication with ``P a P * P b P`` in the group
    algebra of ``S_{k+n}``, for all pairs (or the given ones)."""
    rep = Report(f"sandwich oracle k={k} n={n}")
    m = k + n
    P = symmetrizer(k, m)
    basis = enumerate_fused(k, n)
    lifted = {f: P * SymElement.perm(unglue(f)) * P for f in basis}
    for f in basis:
        rep.add(f"glue(unglue({f})) = {f}", glue(unglue(f), k) == f)
        rep.add(f"P w P is supported on one double coset ({f})", set(glue(p, k) for p in lifted[f].terms) == {f})
    todo = pairs if pairs is not None else itertools.product(basis, basis)
    bad = 0
    total = 0
    for a, b in todo:
        total += 1
        lhs = multiply_diagrams(DiagramElement.basis(a), DiagramElement.basis(b))
        rhs = sandwich_image(lifted[a] * lifted[b], k)
        if lhs != rhs:
            bad += 1
            rep.add(f"[{a}] * [{b}]", False, f"diagram {lhs} vs group {rhs}")
    rep.add(f"{total} products agree", bad == 0)
    return rep


# the morphism from the Hecke algebra -----------------------------------------


def phi_mode(k: int) -> ScalarMode:
    return ScalarMode.specialized(0, k + 1)


def phi(e: HeckeElement, k: int) -> DiagramElement:
    """Image under ``s_i -> sigma_i``, ``x_1 -> t = 1 + k sigma_0``."""
    if e.mode != phi_mode(k):
        raise ModeMismatch(f"the morphism needs k1=0, k2={k + 1}, got {e.mode}")
    n = e.n
    gens = generators(k, n)
    images = {g: (gens.t() if g == X1 else gens.sigma(g)) for g in range(0 if n >= 1 else 1, n)}
    trie: dict = {}
    for w, c in e.terms.items():
        node = trie
        for g in spelling(to_blocks(w)):
            node = node.setdefault(g, {})
        node[None] = c
    acc = DiagramElement.zero(k, n)

    def walk(node, cur):
        nonlocal acc
        for g, child in node.items():
            if g is None:
                acc = acc + cur.scale(child)
            else:
                walk(child, multiply_diagrams(cur, images[g]))

    walk(trie, DiagramElement.one(k, n))
    return acc


def verify_phi_relations(k: int, n: int) -> Report:
    """Images of the defining relations hold among ``t`` and the ``sigma_i``."""
    rep = Report(f"relations in H_(k={k},n={n})")
    g = generators(k, n)
    one, t, s0 = g.one(), g.t(), g.sigma0()
    rep.add("t^2 = (k+1) t", t * t == t.scale(k + 1))
    rep.add("(sigma0 - 1)(sigma0 + 1/k) = 0", ((s0 - 1) * (s0 + flint.fmpq(1, k))).is_zero())
    rep.add("sigma0^2 = (1/k) 1 + ((k-1)/k) sigma0", s0 * s0 == one.scale(flint.fmpq(1, k)) + s0.scale(flint.fmpq(k - 1, k)))
    if n >= 2:
        s1 = g.sigma(1)
        rep.add("(t s1)^2 = t (s1 t - s1 + 1)", (t * s1) * (t * s1) == t * (s1 * t - s1 + 1))
        rep.add("(s1 t)^2 = (t s1 - s1 + 1) t", (s1 * t) * (s1 * t) == (t * s1 - s1 + 1) * t)
        rep.add("t (s1 t s1 + s1) = (s1 t s1 + s1) t", t * (s1 * t * s1 + s1) == (s1 * t * s1 + s1) * t)
        if k == 1:
            rep.add("k=1: s0 s1 s0 = s1 s0 s1", s0 * s1 * s0 == s1 * s0 * s1)
    for i in range(1, n):
        si = g.sigma(i)
        rep.add(f"sigma{i}^2 = 1", si * si == one)
        if i >= 2:
            rep.add(f"sigma0 sigma{i} = sigma{i} sigma0", s0 * si == si * s0)
            rep.add(f"t sigma{i} = sigma{i} t", t * si == si * t)
        if i + 1 <= n - 1:
            sj = g.sigma(i + 1)
            rep.add(f"braid sigma{i}, sigma{i + 1}", si * sj * si == sj * si * sj)
        for j in range(i + 2, n):
            rep.add(f"sigma{i} sigma{j} = sigma{j} sigma{i}", si * g.sigma(j) == g.sigma(j) * si)
    if k >= 2 and n >= 2:
        s1 = g.sigma(1)
        h2 = (s0 * s1 * s0).scale(flint.fmpq(k, k - 1)) - (s1 * s0 * s1).scale(flint.fmpq(1, k - 1))
        rep.add("h2 = k/(k-1) s0 s1 s0 - 1/(k-1) s1 s0 s1", h2 == g.h(2))
    return rep


def _flat(e: DiagramElement) -> dict:
    return dict(e.terms)


def kernel_check(k: int, n: int) -> Report:
    """The two relations die under the morphism, and the capped avoiding
    words map to linearly independent diagrams spanning ``H_{k,n}``."""
    mode = phi_mode(k)
    rep = Report(f"kernel of the morphism, k={k} n={n}")
    if n >= 2:
        f2 = corner_idempotent(CornerLabel(-1, 2, 2), mode)
        rep.add("phi(F_2^(-1,k2)) = 0", phi(embed(f2, n), k).is_zero())
        rep.add("phi(unnormalized rank 2 relation) = 0", phi(relation_A(n, mode), k).is_zero())
    if n >= k + 1:
        rep.add(f"phi(unnormalized F_{k + 1}^(1,k1)) = 0", phi(relation_cap(n, k, mode), k).is_zero())
    words = list(enumerate_words(n, avoiding_cap(k)))
    space = Subspace()
    for w in words:
        space.insert(_flat(phi(HeckeElement.basis(w, mode), k)))
    expected = fused_count(k, n)
    rep.add("capped avoiding words", len(words) == expected, f"{len(words)} words, formula {expected}")
    rep.add("image rank of capped avoiding words", space.rank == expected, f"rank {space.rank}")
    extra = [w for w in enumerate_words(n, AVOIDING) if not avoiding_cap(k)(w)]
    for w in extra:
        img = _flat(phi(HeckeElement.basis(w, mode), k))
        rep.add(f"image of {spelling_text(to_blocks(w))} lies in the span", space.contains(img))
    return rep


def generation_check(k: int, n: int) -> Report:
    """The sigma_i and h_i generate: the span of all their products is everything."""
    g = generators(k, n)
    gens = [g.sigma(i) for i in range(1, n)] + [g.h(i) for i in range(1, min(k, n) + 1)]
    space = Subspace()
    queue = [dict(g.one().terms)]
    space.insert(queue[0])
    while queue:
        v = queue.pop()
        cur = DiagramElement(k, n, v)
        for x in gens:
            row = space.insert(_flat(cur * x))
            if row is not None:
                queue.append(dict(row))
    rep = Report(f"generation by sigma and h, k={k} n={n}")
    rep.add("span of products", space.rank == len(enumerate_fused(k, n)), f"rank {space.rank}")
    return rep
