"""Seminormal matrix representations on standard bitableaux.

The vector ``v_t`` is the ``t``-th basis vector, in the order of
:func:`~fusedhecke.tableaux.enumerate_std`. Matrices are lists of rows and act
on column vectors, so column ``t`` of a generator matrix is the image of ``v_t``.

>>> from fusedhecke.scalars import ScalarMode
>>> rep = build_rep(((1,), (1,)), ScalarMode.parse("k1=0,k2=3"))
>>> [[str(x) for x in row] for row in rep.gen_matrices[1]]
[['-1/3', '1'], ['8/9', '1/3']]
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from .errors import NotSemisimple, RankMismatch, ShapeMismatch
from .hecke import HeckeElement, all_basis_words, embed
from .idempotents import CornerLabel, corner_idempotent
from .linalg import Subspace
from .report import Report
from .scalars import GENERIC, Scalar, ScalarMode, format_scalar
from .signed_words import X1, spelling, to_blocks
from .tableaux import (
    Bipartition,
    Dominance,
    StdBiTableau,
    axial_distance,
    content,
    dim_std,
    dominance,
    enumerate_bipartitions,
    enumerate_std,
    semisimple,
)

__all__ = [
    "Matrix",
    "SeminormalRep",
    "build_rep",
    "verify_rep_relations",
    "evaluate",
    "wedderburn_check",
    "quotient_consistency",
    "mat_mul",
    "identity",
]

Matrix = list  # list of rows of scalars


def identity(size: int, mode: ScalarMode) -> Matrix:
    return [[mode.one if i == j else mode.zero for j in range(size)] for i in range(size)]


def zeros(size: int, mode: ScalarMode) -> Matrix:
    return [[mode.zero] * size for _ in range(size)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    size = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * size
        for j, x in enumerate(row):
            if x:
                for c, y in enumerate(b[j]):
                    if y:
                        acc[c] = acc[c] + x * y
        out.append(acc)
    return out


def mat_add(a: Matrix, b: Matrix, scale=1) -> Matrix:
    return [[x + scale * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Matrix, c) -> Matrix:
    return [[c * x for x in row] for row in a]


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def is_zero_matrix(a: Matrix) -> bool:
    return not any(x for row in a for x in row)


@dataclass
class SeminormalRep:
    shape: Bipartition
    mode: ScalarMode
    basis: list[StdBiTableau]
    gen_matrices: dict[int, Matrix]
    jm_matrices: dict[int, Matrix]

    @property
    def n(self) -> int:
        return sum(sum(p) for p in self.shape)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_json(self) -> dict:
        def dump(m):
            return [[format_scalar(x) for x in row] for row in m]

        return {
            "shape": [list(p) for p in self.shape],
            "mode": self.mode.to_json(),
            "basis": [str(t) for t in self.basis],
            "generators": {("x1" if g == X1 else f"s{g}"): dump(m) for g, m in sorted(self.gen_matrices.items())},
        }


def _alpha(t: StdBiTableau, r: int, mode: ScalarMode) -> Scalar:
    u = t.swap(r)
    if u is None:
        return mode.zero
    order = dominance(t, u)
    if order is Dominance.GREATER:
        return mode.one
    if order is Dominance.LESS:
        a, b = axial_distance(t, r, mode), axial_distance(u, r, mode)
        return mode.div((1 + a) * (1 + b), a * b)
    raise ShapeMismatch(f"{t} and {u} are not comparable")


@lru_cache(maxsize=None)
def build_rep(shape: Bipartition, mode: ScalarMode = GENERIC) -> SeminormalRep:
    """Matrices of ``x_1`` and every ``s_r`` on the space spanned by ``Std(shape)``."""
    basis = list(enumerate_std(shape))
    n = basis[0].n
    if not semisimple(n, mode):
        raise NotSemisimple(f"rank {n} is not semisimple at {mode}")
    index = {t: i for i, t in enumerate(basis)}
    size = len(basis)
    gens: dict[int, Matrix] = {}
    jm: dict[int, Matrix] = {}
    for r in range(1, n + 1):
        m = zeros(size, mode)
        for t, j in index.items():
            m[j][j] = content(t, r, mode)
        jm[r] = m
    if n >= 1:
        gens[X1] = jm[1]
    for r in range(1, n):
        m = zeros(size, mode)
        for t, j in index.items():
            rho = axial_distance(t, r, mode)
            if not rho:
                raise NotSemisimple(f"axial distance vanishes for {t} at {mode}")
            m[j][j] = mode.div(-1, rho)
            u = t.swap(r)
            if u is not None:
                m[index[u]][j] = _alpha(t, r, mode)
        gens[r] = m
    return SeminormalRep(shape, mode, basis, gens, jm)


def verify_rep_relations(rep: SeminormalRep) -> Report:
    """The defining relations hold as matrix identities."""
    mode, n = rep.mode, rep.n
    rep_out = Report(f"relations on {rep.shape} at {mode}")
    one = identity(rep.dim, mode)
    if n >= 1:
        x = rep.gen_matrices[X1]
        q = mat_mul(mat_add(x, one, -mode.kappa1), mat_add(x, one, -mode.kappa2))
        rep_out.add("(x1 - k1)(x1 - k2) = 0", is_zero_matrix(q))
    for r in range(1, n):
        s = rep.gen_matrices[r]
        rep_out.add(f"s{r}^2 = 1", mat_eq(mat_mul(s, s), one))
        if r + 1 < n:
            t = rep.gen_matrices[r + 1]
            rep_out.add(f"braid s{r} s{r + 1}", mat_eq(mat_mul(mat_mul(s, t), s), mat_mul(mat_mul(t, s), t)))
        for q in range(r + 2, n):
            t = rep.gen_matrices[q]
            rep_out.add(f"s{r} s{q} = s{q} s{r}", mat_eq(mat_mul(s, t), mat_mul(t, s)))
        if r >= 2:
            x = rep.gen_matrices[X1]
            rep_out.add(f"x1 s{r} = s{r} x1", mat_eq(mat_mul(x, s), mat_mul(s, x)))
    if n >= 2:
        x, s = rep.gen_matrices[X1], rep.gen_matrices[1]
        sxs = mat_mul(mat_mul(s, x), s)
        lhs = mat_mul(x, mat_add(sxs, s))
        rhs = mat_mul(mat_add(sxs, s), x)
        rep_out.add("x1 (s1 x1 s1 + s1) = (s1 x1 s1 + s1) x1", mat_eq(lhs, rhs))
    for r in range(1, n):
        s = rep.gen_matrices[r]
        built = mat_add(mat_mul(mat_mul(s, rep.jm_matrices[r]), s), s)
        rep_out.add(f"x{r + 1} = s{r} x{r} s{r} + s{r}", mat_eq(built, rep.jm_matrices[r + 1]))
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            xa, xb = rep.jm_matrices[a], rep.jm_matrices[b]
            rep_out.add(f"x{a} x{b} = x{b} x{a}", mat_eq(mat_mul(xa, xb), mat_mul(xb, xa)))
    return rep_out


def evaluate(e: HeckeElement, rep: SeminormalRep) -> Matrix:
    """Image of ``e`` as a matrix; a homomorphism of algebras."""
    if e.n != rep.n:
        raise RankMismatch(f"element of rank {e.n} on a representation of rank {rep.n}")
    rep.mode.check(e.mode)
    cache: dict[tuple, Matrix] = {(): identity(rep.dim, rep.mode)}

    def word_matrix(letters: tuple) -> Matrix:
        m = cache.get(letters)
        if m is None:
            m = mat_mul(word_matrix(letters[:-1]), rep.gen_matrices[letters[-1]])
            cache[letters] = m
        return m

    out = zeros(rep.dim, rep.mode)
    for w, c in e.terms.items():
        out = mat_add(out, word_matrix(tuple(spelling(to_blocks(w)))), c)
    return out


def _flatten(mats: dict) -> dict:
    return {(lam, i, j): x for lam, m in mats.items() for i, row in enumerate(m) for j, x in enumerate(row) if x}


def wedderburn_check(n: int, mode: ScalarMode = GENERIC) -> Report:
    """The sum of squared dimensions is ``2^n n!`` and evaluating every basis
    word in all representations at once gives linearly independent data."""
    if not semisimple(n, mode):
        raise NotSemisimple(f"rank {n} is not semisimple at {mode}")
    rep = Report(f"Artin-Wedderburn n={n} at {mode}")
    shapes = enumerate_bipartitions(n)
    total = sum(dim_std(lam) ** 2 for lam in shapes)
    rep.add("sum of squared dimensions", total == 2**n * factorial(n), f"{total}")
    reps = {lam: build_rep(lam, mode) for lam in shapes}
    space = Subspace()
    words = all_basis_words(n)
    for w in words:
        e = HeckeElement.basis(w, mode)
        space.insert(_flatten({lam: evaluate(e, r) for lam, r in reps.items()}))
    rep.add("joint evaluation is injective", space.rank == len(words), f"rank {space.rank} of {len(words)}")
    return rep


def quotient_consistency(n: int, mode: ScalarMode = GENERIC, ks: tuple[int, ...] = (1, 2)) -> Report:
    """The quotient relations vanish exactly on the representations the
    quotients keep, and corner idempotents act with rank at most one."""
    rep = Report(f"quotient consistency n={n} at {mode}")
    shapes = enumerate_bipartitions(n)
    reps = {lam: build_rep(lam, mode) for lam in shapes}
    if n >= 2:
        f2 = embed(corner_idempotent(CornerLabel(-1, 2, 2), mode), n)
        for lam, r in reps.items():
            keep = len(lam[1]) < 2
            rep.add(f"F_2^(-1,k2) on {lam}", is_zero_matrix(evaluate(f2, r)) == keep)
    for k in ks:
        if n < k + 1:
            continue
        f = embed(corner_idempotent(CornerLabel(1, 1, k + 1), mode), n)
        for lam, r in reps.items():
            keep = not lam[0] or lam[0][0] < k + 1
            rep.add(f"F_{k + 1}^(1,k1) on {lam}", is_zero_matrix(evaluate(f, r)) == keep)
    for a in (1, -1):
        for b in (1, 2):
            lab = CornerLabel(a, b, n)
            f = corner_idempotent(lab, mode)
            for lam, r in reps.items():
                m = evaluate(f, r)
                ok = mat_eq(mat_mul(m, m), m) and _rank(m) <= 1
                rep.add(f"{lab} on {lam} is an idempotent of rank <= 1", ok)
    return rep


def _rank(m: Matrix) -> int:
    s = Subspace()
    for row in m:
        s.insert({j: x for j, x in enumerate(row) if x})
    return s.rank
