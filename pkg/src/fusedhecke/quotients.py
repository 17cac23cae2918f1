"""Quotients of the Hecke algebra by two-sided ideals, by exact linear algebra.

The ideal generated by a list of elements is the smallest subspace that
contains them and is stable under left and right multiplication by the
algebra generators. It is grown by closure: every new echelon row is
multiplied by each generator on both sides and the products are reduced in
turn. A :class:`ReductionTable` then rewrites every pivot word in terms of the
remaining (free) words.

Two families of quotients are built in:

* ``A_n``: the ideal of the unnormalized corner element with ``alpha = -1``
  and ``x_1`` eigenvalue ``k2`` in rank 2, designated words the avoiding ones;
* ``A_n^(k)``: additionally the unnormalized corner element with ``alpha = 1``
  and eigenvalue ``k1`` in rank ``k + 1``, designated words the avoiding ones
  with at most ``k`` bars.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from pathlib import Path

from .errors import CoefficientMismatch, ModeMismatch, RankMismatch
from .hecke import HeckeElement, _rmul_terms, all_basis_words, embed, mul
from .idempotents import CornerLabel, corner_idempotent
from .report import Report
from .linalg import Subspace
from .scalars import GENERIC, Scalar, ScalarMode, format_scalar, parse_scalar
from .signed_words import (
    AVOIDING,
    SignedWord,
    WordFilter,
    avoiding_cap,
    avoiding_count,
    bar_count,
    column_key,
    format_word,
    from_blocks,
    parse_word,
)

__all__ = [
    "QuotientSpec",
    "ReductionTable",
    "BasisReport",
    "ideal_span",
    "build_reduction_table",
    "reduce",
    "relation_A",
    "relation_cap",
    "spec_A",
    "spec_A_cap",
    "delta_word",
    "lambda_coeffs",
    "quotient_dim",
    "verify_quotient_dims",
    "verify_lambda",
]

CACHE_VERSION = 1


@lru_cache(maxsize=None)
def _left_gen_table(n: int, g: int, mode: ScalarMode) -> dict:
    """``g * s_w`` for every word ``w``."""
    gen = HeckeElement.generator(n, g, mode)
    return {w: mul(gen, HeckeElement.basis(w, mode)).terms for w in all_basis_words(n)}


def _left_mul_terms(terms: dict, g: int, n: int, mode: ScalarMode) -> dict:
    table = _left_gen_table(n, g, mode)
    acc: dict = {}
    for w, c in terms.items():
        for w2, c2 in table[w].items():
            v = acc.get(w2)
            v = c * c2 if v is None else v + c * c2
            if v:
                acc[w2] = v
            else:
                acc.pop(w2, None)
    return acc


def _priority(n: int, designated: WordFilter | None) -> dict:
    """Pivot order: non-designated words first, larger words first within
    each group."""
    words = all_basis_words(n)
    order = sorted(
        words,
        key=lambda w: (designated is not None and designated(w), tuple(-x for x in _flat_key(w))),
    )
    return {w: i for i, w in enumerate(order)}


def _flat_key(w: SignedWord) -> tuple:
    b, length, lex = column_key(w)
    return (b, length) + tuple(x for pair in lex for x in (pair[0], int(pair[1])))


def _monic(e: HeckeElement, priority: dict) -> dict:
    """Scale a generator so that its leading coefficient is 1; keeps
    polynomial coefficients polynomial when that coefficient is a unit."""
    if not e.terms:
        return {}
    lead = min(e.terms, key=priority.__getitem__)
    c = e.terms[lead]
    return {w: v / c for w, v in e.terms.items()}


def ideal_span(n: int, gens: list[HeckeElement], mode: ScalarMode | None = None, designated: WordFilter | None = None) -> Subspace:
    """Echelon basis of the two-sided ideal generated by ``gens``."""
    if mode is None:
        mode = gens[0].mode if gens else GENERIC
    priority = _priority(n, designated)
    space = Subspace(priority)
    queue = []
    for g in gens:
        if g.n != n:
            raise RankMismatch(f"generator of rank {g.n} in a rank {n} ideal")
        if g.mode != mode:
            raise ModeMismatch(f"{g.mode} vs {mode}")
        row = space.insert(_monic(g, priority))
        if row is not None:
            queue.append(dict(row))
    letters = list(range(0, n)) if n >= 1 else []
    while queue:
        v = queue.pop()
        for g in letters:
            for prod in (_rmul_terms(v, g, mode), _left_mul_terms(v, g, n, mode)):
                row = space.insert(prod)
                if row is not None:
                    queue.append(dict(row))
    return space


@dataclass(frozen=True)
class QuotientSpec:
    n: int
    mode: ScalarMode
    relations: tuple[HeckeElement, ...]
    designated: WordFilter
    name: str = ""

    def key(self) -> str:
        payload = json.dumps(
            {
                "n": self.n,
                "mode": self.mode.to_json(),
                "designated": str(self.designated),
                "relations": [r.to_json() for r in self.relations],
            },
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:24]


@dataclass
class BasisReport:
    """How the designated words sit inside the quotient.

    ``status`` is ``basis``, ``dependent`` (some designated words are
    pivots, i.e. linearly dependent modulo the ideal), ``not-spanning`` (some
    other word survives as a free coordinate) or ``dependent,not-spanning``.
    """

    status: str
    designated_count: int
    dimension: int
    dependent_words: list[SignedWord] = field(default_factory=list)
    witness: dict = field(default_factory=dict)
    extra_free_words: list[SignedWord] = field(default_factory=list)

    @property
    def is_basis(self) -> bool:
        return self.status == "basis"


@dataclass
class ReductionTable:
    n: int
    mode: ScalarMode
    basis_words: list[SignedWord]
    rewrite: dict[SignedWord, dict[SignedWord, Scalar]]

    @property
    def rank(self) -> int:
        return len(self.basis_words)

    def to_json(self) -> dict:
        return {
            "version": CACHE_VERSION,
            "n": self.n,
            "mode": self.mode.to_json(),
            "basis": [format_word(w) for w in self.basis_words],
            "rewrite": {
                format_word(w): [[format_word(u), format_scalar(c)] for u, c in sorted(comb.items(), key=lambda t: column_key(t[0]))]
                for w, comb in sorted(self.rewrite.items(), key=lambda t: column_key(t[0]))
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "ReductionTable":
        mode = ScalarMode.from_json(data["mode"])
        return cls(
            int(data["n"]),
            mode,
            [parse_word(w) for w in data["basis"]],
            {parse_word(w): {parse_word(u): parse_scalar(c, mode) for u, c in comb} for w, comb in data["rewrite"].items()},
        )


def _cache_path(spec: QuotientSpec) -> Path | None:
    root = os.environ.get("HECKE_CACHE_DIR")
    if not root:
        return None
    return Path(root) / f"table-n{spec.n}-{spec.key()}.json"


def _basis_report(spec: QuotientSpec, space: Subspace, free: list[SignedWord]) -> BasisReport:
    words = all_basis_words(spec.n)
    designated = [w for w in words if spec.designated(w)]
    dependent = [w for w in designated if w in space.rows]
    extra = [w for w in free if not spec.designated(w)]
    status = []
    if dependent:
        status.append("dependent")
    if extra:
        status.append("not-spanning")
    witness = {}
    if dependent:
        w = sorted(dependent, key=space.priority.__getitem__)[0]
        witness = dict(space.rows[w])
    return BasisReport(",".join(status) or "basis", len(designated), len(free), dependent, witness, extra)


def build_reduction_table(spec: QuotientSpec, use_cache: bool = True) -> tuple[ReductionTable, BasisReport]:
    path = _cache_path(spec) if use_cache else None
    if path is not None and path.exists():
        data = json.loads(path.read_text())
        if data.get("version") == CACHE_VERSION:
            table = ReductionTable.from_json(data["table"])
            rep = data["report"]
            report = BasisReport(
                rep["status"],
                rep["designated_count"],
                rep["dimension"],
                [parse_word(w) for w in rep["dependent_words"]],
                {},
                [parse_word(w) for w in rep["extra_free_words"]],
            )
            return table, report
    space = ideal_span(spec.n, list(spec.relations), spec.mode, spec.designated)
    words = all_basis_words(spec.n)
    free = [w for w in words if w not in space.rows]
    rewrite = {w: {u: -c for u, c in row.items() if u != w} for w, row in space.rows.items()}
    table = ReductionTable(spec.n, spec.mode, free, rewrite)
    report = _basis_report(spec, space, free)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        payload = {
            "version": CACHE_VERSION,
            "table": table.to_json(),
            "report": {
                "status": report.status,
                "designated_count": report.designated_count,
                "dimension": report.dimension,
                "dependent_words": [format_word(w) for w in report.dependent_words],
                "extra_free_words": [format_word(w) for w in report.extra_free_words],
            },
        }
        path.write_text(json.dumps(payload, indent=1, sort_keys=True))
    return table, report


def reduce(e: HeckeElement, table: ReductionTable) -> HeckeElement:
    """Representative of ``e`` supported on the table's basis words."""
    if e.n != table.n:
        raise RankMismatch(f"rank {e.n} vs table rank {table.n}")
    if e.mode != table.mode:
        raise ModeMismatch(f"{e.mode} vs {table.mode}")
    acc: dict = {}
    for w, c in e.terms.items():
        comb = table.rewrite.get(w)
        items = ((w, c),) if comb is None else ((u, c * v) for u, v in comb.items())
        for u, x in items:
            y = acc.get(u)
            y = x if y is None else y + x
            if y:
                acc[u] = y
            else:
                acc.pop(u, None)
    return HeckeElement._trusted(e.n, acc, e.mode)


# the two families of quotients -----------------------------------------------


def relation_A(n: int, mode: ScalarMode = GENERIC) -> HeckeElement:
    """Unnormalized rank 2 corner element (alpha = -1, x_1 -> k2), embedded.

    Its expansion is ``(x1 s1)^2 - x1 s1 x1 + ...`` with polynomial
    coefficients, so it defines the ideal at every specialization."""
    return embed(corner_idempotent(CornerLabel(-1, 2, 2), mode, normalized=False), n)


def relation_cap(n: int, k: int, mode: ScalarMode = GENERIC) -> HeckeElement:
    """Unnormalized rank ``k + 1`` corner element (alpha = 1, x_1 -> k1)."""
    return embed(corner_idempotent(CornerLabel(1, 1, k + 1), mode, normalized=False), n)


def spec_A(n: int, mode: ScalarMode = GENERIC) -> QuotientSpec:
    rels = (relation_A(n, mode),) if n >= 2 else ()
    return QuotientSpec(n, mode, rels, AVOIDING, f"A_{n}")


def spec_A_cap(n: int, k: int, mode: ScalarMode = GENERIC) -> QuotientSpec:
    rels = list(spec_A(n, mode).relations)
    if k + 1 <= n:
        rels.append(relation_cap(n, k, mode))
    return QuotientSpec(n, mode, tuple(rels), avoiding_cap(k), f"A_{n}^({k})")


def quotient_dim(spec: QuotientSpec) -> int:
    return build_reduction_table(spec)[0].rank


def delta_word(k: int) -> SignedWord:
    """The word with blocks ``(0,0), (1,0), ..., (k,0)``: all of ``k+1 ... 1``
    barred, in decreasing order."""
    return from_blocks([(i, 0) for i in range(k + 1)], k + 1)


def lambda_coeffs(k: int, mode: ScalarMode = GENERIC) -> dict[SignedWord, Scalar]:
    """Coefficients expressing ``Delta_k`` over the other avoiding words.

    The unnormalized rank ``k + 1`` corner element is reduced in ``A_{k+1}``;
    its ``Delta_k`` coefficient must equal ``(k+1)!``. The returned map is
    ``-(coefficient)/(k+1)!`` for every other word of the reduction.
    """
    n = k + 1
    table, _ = build_reduction_table(spec_A(n, mode))
    r = reduce(corner_idempotent(CornerLabel(1, 1, n), mode, normalized=False), table)
    d = delta_word(k)
    lead = r.coeff(d)
    if lead != factorial(n):
        raise CoefficientMismatch(f"Delta_{k} has coefficient {format_scalar(lead)}, expected {factorial(n)}")
    return {w: -c / factorial(n) for w, c in r.sorted_terms() if w != d}


def bar_support_ok(coeffs: dict[SignedWord, Scalar], k: int) -> bool:
    return all(bar_count(w) <= k for w in coeffs)


def verify_quotient_dims(n: int, mode: ScalarMode = GENERIC, k: int | None = None, expected: int | None = None) -> Report:
    """Dimension of ``A_n`` (or ``A_n^(k)``) and the status of the designated
    avoiding words.

    Without ``k`` the avoiding words must be a basis. With ``k`` they must be
    a basis at ``k1=0, k2=k+1``; elsewhere only ``expected`` is checked.
    """
    spec = spec_A(n, mode) if k is None else spec_A_cap(n, k, mode)
    table, basis = build_reduction_table(spec)
    rep = Report(f"quotient {spec.name} at {mode}")
    rep.add(f"dim {spec.name} computed", True, str(table.rank))
    if expected is not None:
        rep.add(f"dim {spec.name} = {expected}", table.rank == expected, str(table.rank))
    must_be_basis = k is None or mode == ScalarMode.specialized(0, k + 1)
    if must_be_basis:
        rep.add("designated avoiding words form a basis", basis.is_basis, basis.status)
        rep.add("dimension matches the closed formula", table.rank == avoiding_count(n, k), str(avoiding_count(n, k)))
    else:
        rep.add("designated avoiding words", True, basis.status)
    return rep


def verify_lambda(k: int, mode: ScalarMode = GENERIC) -> Report:
    rep = Report(f"Delta_{k} coefficients at {mode}")
    try:
        coeffs = lambda_coeffs(k, mode)
    except CoefficientMismatch as exc:
        rep.add(f"Delta_{k} coefficient is {factorial(k + 1)}", False, str(exc))
        return rep
    rep.add(f"Delta_{k} coefficient is {factorial(k + 1)}", True)
    rep.add(f"every other word has at most {k} bars", bar_support_ok(coeffs, k), f"{len(coeffs)} terms")
    return rep
