"""Primitive idempotents ``F_t`` indexed by standard bitableaux, and the four
corner idempotents attached to one-row and one-column bipartitions.

``F_t`` is built either as a product of Lagrange factors in the commuting
elements ``x_1, ..., x_n`` over all contents of size ``n``, or recursively
from its restriction using only the addable contents at each step.

The corner idempotent ``F_n^(alpha, k_b)`` has an explicit expansion on the
whole basis: the coefficient of ``s_w`` is
``alpha^len(w) * prod_i (i - alpha*k_{b+1})^(1 - m_i(w))`` up to a global
normalizing factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from .errors import NotSemisimple
from .hecke import HeckeElement, embed, jucys_murphy, mul
from .report import Report
from .scalars import GENERIC, Scalar, ScalarMode
from .signed_words import coxeter_length, enumerate_words, m_bits
from .tableaux import (
    Bipartition,
    StdBiTableau,
    addable,
    content,
    enumerate_bipartitions,
    enumerate_std,
    semisimple,
)

__all__ = [
    "CornerLabel",
    "contents_set",
    "f_tableau",
    "complete_family",
    "corner_idempotent",
    "corner_recurrence_step",
    "corner_by_recursion",
    "verify_corner",
    "verify_corners",
    "verify_complete_family",
]


@dataclass(frozen=True)
class CornerLabel:
    """``alpha`` in {1, -1} is the eigenvalue of every ``s_i``; ``k_b`` is the
    eigenvalue of ``x_1``. Parameter indices are read modulo 2."""

    alpha: int
    b: int
    n: int

    def __post_init__(self):
        if self.alpha not in (1, -1) or self.b not in (1, 2) or self.n < 0:
            raise ValueError(f"bad corner label {self}")

    @property
    def shape(self) -> Bipartition:
        row = (self.n,) if self.n else ()
        col = (1,) * self.n
        part = row if self.alpha == 1 else col
        return (part, ()) if self.b == 1 else ((), part)

    @property
    def tableau(self) -> StdBiTableau:
        return enumerate_std(self.shape)[0]

    def __str__(self) -> str:
        return f"F_{self.n}^({'+1' if self.alpha == 1 else '-1'},k{self.b})"


def _require_semisimple(n: int, mode: ScalarMode) -> None:
    if not semisimple(n, mode):
        raise NotSemisimple(f"rank {n} is not semisimple at {mode}")


def contents_set(n: int, mode: ScalarMode = GENERIC) -> list[Scalar]:
    """Distinct contents occurring in standard bitableaux of size ``n``,
    listed by component and then by shifted content."""
    _require_semisimple(n, mode)
    labelled = set()
    for lam in enumerate_bipartitions(n):
        for t in enumerate_std(lam):
            for i in range(1, n + 1):
                l, r, c = t.node(i)
                labelled.add((l, c - r))
    values: list[Scalar] = []
    for l, d in sorted(labelled):
        v = mode.kappa(l) + d
        if v not in values:
            values.append(v)
    return values


def _lagrange(e: HeckeElement, xk: HeckeElement, target: Scalar, roots, mode: ScalarMode) -> HeckeElement:
    for c in roots:
        if c == target:
            continue
        denom = target - c
        if not denom:
            raise NotSemisimple("coinciding contents")
        e = mul(e, xk - c).scale(mode.div(1, denom))
    return e


def f_tableau(t: StdBiTableau, mode: ScalarMode = GENERIC, route: str = "product") -> HeckeElement:
    """The idempotent ``F_t`` in rank ``t.n``.

    ``route="product"`` multiplies the factors ``(x_k - c)/(c_k(t) - c)`` over
    every content ``c`` of size ``n``; ``route="recursive"`` extends
    ``F_{t restricted to n-1}`` using the addable contents only.
    """
    n = t.n
    _require_semisimple(n, mode)
    if route == "product":
        roots = contents_set(n, mode)
        e = HeckeElement.one(n, mode)
        for k in range(1, n + 1):
            e = _lagrange(e, jucys_murphy(n, k, mode), content(t, k, mode), roots, mode)
        return e
    if route == "recursive":
        return _f_recursive(t, mode)
    raise ValueError(f"unknown route {route!r}")


@lru_cache(maxsize=None)
def _f_recursive(t: StdBiTableau, mode: ScalarMode) -> HeckeElement:
    n = t.n
    if n == 0:
        return HeckeElement.one(0, mode)
    prev = t.restrict(n - 1)
    base = embed(_f_recursive(prev, mode), n)
    roots = [mode.kappa(l) + (c - r) for l, r, c in addable(prev.shape)]
    return _lagrange(base, jucys_murphy(n, n, mode), content(t, n, mode), roots, mode)


def complete_family(n: int, mode: ScalarMode = GENERIC, route: str = "recursive") -> dict[StdBiTableau, HeckeElement]:
    return {t: f_tableau(t, mode, route) for lam in enumerate_bipartitions(n) for t in enumerate_std(lam)}


def _corner_coefficient(w, label: CornerLabel, mode: ScalarMode) -> Scalar:
    a = label.alpha
    kappa_next = mode.kappa(label.b + 1)
    c = mode.coerce(a ** coxeter_length(w))
    for i, bit in enumerate(m_bits(w, label.n)):
        if not bit:
            c = c * (i - a * kappa_next)
    return c


def _normalizer(label: CornerLabel, mode: ScalarMode) -> Scalar:
    a = label.alpha
    diff = mode.kappa(label.b) - mode.kappa(label.b + 1)
    d = mode.coerce(factorial(label.n))
    for i in range(label.n):
        d = d * (i + a * diff)
    if not d:
        raise NotSemisimple(f"{label} has no normalization at {mode}")
    return mode.div(1, d)


def corner_idempotent(label: CornerLabel, mode: ScalarMode = GENERIC, normalized: bool = True) -> HeckeElement:
    """Closed-form expansion of a corner idempotent over all ``2^n n!`` words.

    With ``normalized=False`` the global factor is omitted, which keeps the
    element defined at every specialization.
    """
    n = label.n
    terms = {w: _corner_coefficient(w, label, mode) for w in enumerate_words(n)}
    e = HeckeElement(n, terms, mode)
    if normalized:
        _require_semisimple(n, mode)
        e = e.scale(_normalizer(label, mode))
    return e


def corner_recurrence_step(f_n: HeckeElement, label: CornerLabel, mode: ScalarMode | None = None) -> HeckeElement:
    """Pass from the rank ``n`` corner idempotent to rank ``n + 1``.

    ``label`` describes the input (rank ``n``). The right factor is
    ``sum_j alpha^(n+j+1) [n,-j] + (n - alpha k_{b+1}) sum_j alpha^(n-j+1) [n,j]``
    with ``[n, n+1] = 1``.
    """
    mode = f_n.mode if mode is None else mode
    n, a = label.n, label.alpha
    kappa_next = mode.kappa(label.b + 1)
    m = n + 1
    left = HeckeElement.zero(m, mode)
    for j in range(n + 1):
        left = left + HeckeElement.from_blocks([(n, -j)], m, mode).scale(a ** (n + j + 1))
    right = HeckeElement.one(m, mode)
    for j in range(1, n + 1):
        right = right + HeckeElement.from_blocks([(n, j)], m, mode).scale(a ** (n - j + 1))
    factor = left + right.scale(n - a * kappa_next)
    denom = (n + 1) * (a * (mode.kappa(label.b) - kappa_next) + n)
    if not denom:
        raise NotSemisimple(f"recurrence from {label} is undefined at {mode}")
    base = embed(f_n, m) if f_n.n == n else f_n
    return mul(base, factor).scale(mode.div(1, denom))


def corner_by_recursion(label: CornerLabel, mode: ScalarMode = GENERIC) -> HeckeElement:
    e = HeckeElement.one(0, mode)
    for k in range(label.n):
        e = corner_recurrence_step(e, CornerLabel(label.alpha, label.b, k), mode)
    return e


def verify_corner(f: HeckeElement, label: CornerLabel) -> Report:
    """Idempotence and the eigen-relations ``s_i F = F s_i = alpha F``,
    ``x_1 F = F x_1 = k_b F``."""
    mode, n = f.mode, f.n
    rep = Report(f"corner {label} at {mode}")
    rep.add("idempotent", mul(f, f) == f)
    for i in range(1, n):
        s = HeckeElement.generator(n, i, mode)
        target = f.scale(label.alpha)
        rep.add(f"s{i}*F = alpha*F", mul(s, f) == target)
        rep.add(f"F*s{i} = alpha*F", mul(f, s) == target)
    if n >= 1:
        x = HeckeElement.generator(n, 0, mode)
        target = f.scale(mode.kappa(label.b))
        rep.add("x1*F = k_b*F", mul(x, f) == target)
        rep.add("F*x1 = k_b*F", mul(f, x) == target)
    return rep


def verify_corners(n: int, mode: ScalarMode = GENERIC) -> Report:
    """All four corners at rank ``n``: the three constructions agree, each
    passes :func:`verify_corner`, and distinct corners are orthogonal."""
    rep = Report(f"corner idempotents n={n} at {mode}")
    labels = [CornerLabel(a, b, n) for b in (1, 2) for a in (1, -1)]
    built = {}
    for lab in labels:
        closed = corner_idempotent(lab, mode)
        rec = corner_by_recursion(lab, mode)
        prod = f_tableau(lab.tableau, mode, "product")
        rep.add(f"{lab}: closed form = recursion", closed == rec)
        rep.add(f"{lab}: closed form = content product", closed == prod)
        rep.extend(verify_corner(closed, lab), f"{lab}: ")
        built[lab] = closed
    if n >= 2:
        for a in labels:
            for b in labels:
                if a != b:
                    rep.add(f"{a} * {b} = 0", mul(built[a], built[b]).is_zero())
    return rep


def verify_complete_family(n: int, mode: ScalarMode = GENERIC, route: str = "recursive") -> Report:
    """``sum F_t = 1``, ``F_s F_t = delta_st F_t`` and ``x_k F_t = c_k(t) F_t``."""
    rep = Report(f"complete family n={n} at {mode}")
    fam = complete_family(n, mode, route)
    total = HeckeElement.zero(n, mode)
    for f in fam.values():
        total = total + f
    rep.add("sum of all F_t is 1", total == HeckeElement.one(n, mode), f"{len(fam)} tableaux")
    items = list(fam.items())
    bad = [(str(s), str(t)) for s, fs in items for t, ft in items if mul(fs, ft) != (ft if s == t else HeckeElement.zero(n, mode))]
    rep.add("F_s F_t = delta F_t", not bad, "; ".join(f"{a}*{b}" for a, b in bad[:3]))
    for t, f in items:
        ok = all(mul(jucys_murphy(n, k, mode), f) == f.scale(content(t, k, mode)) for k in range(1, n + 1))
        rep.add(f"x_k F_{t} = c_k F_{t}", ok)
    return rep
