"""Elements of the level-two degenerate cyclotomic affine Hecke algebra.

The algebra of rank ``n`` is generated by ``x_1, s_1, ..., s_{n-1}`` subject to
``(x_1 - k1)(x_1 - k2) = 0``, the Coxeter relations among the ``s_i``, and
``x_1 (s_1 x_1 s_1 + s_1) = (s_1 x_1 s_1 + s_1) x_1``. It has the basis
``s_w`` indexed by signed permutations ``w``, spelled by their block normal
form (see :mod:`fusedhecke.signed_words`).

Generators are coded as integers: ``0`` is ``x_1`` and ``i >= 1`` is ``s_i``.

>>> x1 = HeckeElement.generator(1, X1)
>>> print(x1 * x1)
(-k1*k2)*1 + (k1 + k2)*x1
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping

from .errors import IndexOutOfRange, ModeMismatch, RankMismatch
from .report import Report
from .scalars import GENERIC, Scalar, ScalarMode, format_scalar, parse_scalar, scalar_sum
from .signed_words import (
    SignedWord,
    X1,
    column_key,
    enumerate_words,
    format_word,
    from_blocks,
    identity_word,
    parse_word,
    spelling,
    spelling_text,
    to_blocks,
)

__all__ = [
    "X1",
    "S",
    "HeckeElement",
    "right_mul_gen",
    "mul",
    "jucys_murphy",
    "embed",
    "pi_symmetric",
    "check_generator",
    "closure_words",
    "verify_relations",
    "all_basis_words",
]


def S(i: int) -> int:
    """Code of the generator ``s_i``."""
    if i < 1:
        raise IndexOutOfRange(f"s_{i} does not exist")
    return i


def check_generator(n: int, g: int) -> None:
    if g == X1:
        if n < 1:
            raise IndexOutOfRange("x_1 needs rank at least 1")
    elif not 1 <= g <= n - 1:
        raise IndexOutOfRange(f"s_{g} is not a generator in rank {n}")


# block-level right multiplication ------------------------------------------


def _add_into(acc: dict, key, c) -> None:
    v = acc.get(key)
    v = c if v is None else v + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _prefix_times(prefix, r: int, letters: Iterable[int], mode: ScalarMode) -> dict:
    cur = {prefix: mode.one}
    for g in letters:
        nxt: dict = {}
        for blocks, c in cur.items():
            for b2, c2 in _rmul_blocks(blocks, r, g, mode):
                _add_into(nxt, b2, c * c2)
        cur = nxt
    return cur


def _attach(d: Mapping, last, sign=1) -> dict:
    if last is None:
        return {p: (c if sign == 1 else -c) for p, c in d.items()}
    return {p + (last,): (c if sign == 1 else -c) for p, c in d.items()}


@lru_cache(maxsize=None)
def _rmul_blocks(blocks: tuple, r: int, g: int, mode: ScalarMode) -> tuple:
    """``s_blocks * g`` in rank ``r`` as a tuple of ``(blocks, coeff)``.

    The word splits as ``prefix * [r-1, j]`` with the prefix in rank ``r-1``.
    Each case either rewrites the last block or moves a generator into the
    prefix and recurses there.
    """
    k1, k2 = mode.kappa1, mode.kappa2
    if r == 1:
        if blocks:
            return ((((0, 0),), k1 + k2), ((), -(k1 * k2)))
        return ((((0, 0),), mode.one),)
    top = r - 1
    if blocks and blocks[-1][0] == top:
        prefix, j = blocks[:-1], blocks[-1][1]
    else:
        prefix, j = blocks, None

    def moved(letters, last):
        return _attach(_prefix_times(prefix, top, letters, mode), last)

    if j is None:
        if g == top:
            out = {prefix + ((top, top),): mode.one}
        else:
            out = moved((g,), None)
        return tuple(out.items())

    last = (top, j)
    if g == X1:
        if j == 0:
            out = {prefix + ((top, 0),): k1 + k2, prefix + ((top, 1),): -(k1 * k2)}
        elif j < 0:
            # s_1 x_1 s_1 x_1 = x_1 s_1 x_1 s_1 + x_1 s_1 - s_1 x_1
            jj = -j
            out = moved((X1,), last)
            for key, c in moved((X1,) + tuple(range(1, jj)), (top, 1)).items():
                _add_into(out, key, c)
            for key, c in moved(tuple(range(1, jj)), (top, 0)).items():
                _add_into(out, key, -c)
        elif j == 1:
            out = {prefix + ((top, 0),): mode.one}
        else:
            out = moved((X1,), last)
        return tuple(out.items())

    p = g
    if j <= 0:
        jj = -j
        if p > jj + 1:
            out = moved((p - 1,), last)
        elif p == jj + 1:
            out = {prefix + ((top, -(jj + 1)),): mode.one}
        elif p == jj:
            out = {prefix + ((top, -(jj - 1)),): mode.one}
        else:
            out = moved((p,), last)
    else:
        if p > j:
            out = moved((p - 1,), last)
        elif p == j:
            out = {prefix + (((top, j + 1),) if j < top else ()): mode.one}
        elif p == j - 1:
            out = {prefix + ((top, j - 1),): mode.one}
        else:
            out = moved((p,), last)
    return tuple(out.items())


@lru_cache(maxsize=None)
def _word_of(blocks: tuple, n: int) -> SignedWord:
    return from_blocks(blocks, n)


@lru_cache(maxsize=None)
def _rmul_word(w: SignedWord, g: int, mode: ScalarMode) -> tuple:
    n = len(w)
    return tuple((_word_of(b, n), c) for b, c in _rmul_blocks(to_blocks(w), n, g, mode))


# elements -------------------------------------------------------------------


class HeckeElement:
    """A finite linear combination of basis words of one rank and mode."""

    __slots__ = ("n", "mode", "terms")

    def __init__(self, n: int, terms: Mapping[SignedWord, Scalar] | None = None, mode: ScalarMode = GENERIC):
        self.n = n
        self.mode = mode
        clean = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            if len(w) != n:
                raise RankMismatch(f"word {w} does not have rank {n}")
            c = mode.coerce(c)
            if c:
                clean[w] = c
        self.terms = clean

    @classmethod
    def _trusted(cls, n: int, terms: dict, mode: ScalarMode) -> "HeckeElement":
        obj = cls.__new__(cls)
        obj.n, obj.mode, obj.terms = n, mode, terms
        return obj

    # constructors
    @classmethod
    def zero(cls, n: int, mode: ScalarMode = GENERIC) -> "HeckeElement":
        return cls._trusted(n, {}, mode)

    @classmethod
    def one(cls, n: int, mode: ScalarMode = GENERIC) -> "HeckeElement":
        return cls._trusted(n, {identity_word(n): mode.one}, mode)

    @classmethod
    def basis(cls, w: SignedWord, mode: ScalarMode = GENERIC) -> "HeckeElement":
        w = tuple(w)
        return cls._trusted(len(w), {w: mode.one}, mode)

    @classmethod
    def from_blocks(cls, blocks, n: int, mode: ScalarMode = GENERIC) -> "HeckeElement":
        return cls.basis(from_blocks(blocks, n), mode)

    @classmethod
    def generator(cls, n: int, g: int, mode: ScalarMode = GENERIC) -> "HeckeElement":
        check_generator(n, g)
        return right_mul_gen(cls.one(n, mode), g)

    @classmethod
    def product(cls, n: int, letters: Iterable[int], mode: ScalarMode = GENERIC) -> "HeckeElement":
        e = cls.one(n, mode)
        for g in letters:
            e = right_mul_gen(e, g)
        return e

    @classmethod
    def parse_spelling(cls, n: int, text: str, mode: ScalarMode = GENERIC) -> "HeckeElement":
        """Product of generators written like ``x1s1x1s2``; ``1`` is the unit."""
        text = text.replace(" ", "")
        letters, i = [], 0
        if text == "1":
            return cls.one(n, mode)
        while i < len(text):
            if text[i] not in "xs":
                raise ValueError(f"bad generator string {text!r}")
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            idx = int(text[i + 1 : j])
            if text[i] == "x":
                if idx != 1:
                    raise ValueError("only x1 is a generator; use jucys_murphy for x_r")
                letters.append(X1)
            else:
                letters.append(S(idx))
            i = j
        for g in letters:
            check_generator(n, g)
        return cls.product(n, letters, mode)

    # arithmetic
    def _check(self, other: "HeckeElement") -> None:
        if self.mode != other.mode:
            raise ModeMismatch(f"{self.mode} vs {other.mode}")
        if self.n != other.n:
            raise RankMismatch(f"rank {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, HeckeElement):
            other = HeckeElement.one(self.n, self.mode).scale(other)
        self._check(other)
        acc = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(acc, w, c)
        return HeckeElement._trusted(self.n, acc, self.mode)

    __radd__ = __add__

    def __neg__(self):
        return HeckeElement._trusted(self.n, {w: -c for w, c in self.terms.items()}, self.mode)

    def __sub__(self, other):
        if not isinstance(other, HeckeElement):
            other = HeckeElement.one(self.n, self.mode).scale(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "HeckeElement":
        c = self.mode.coerce(c)
        if not c:
            return HeckeElement.zero(self.n, self.mode)
        return HeckeElement._trusted(self.n, {w: v * c for w, v in self.terms.items()}, self.mode)

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        return self.scale(self.mode.div(1, c))

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.n == other.n and self.mode == other.mode and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.mode, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coeff(self, w) -> Scalar:
        if isinstance(w, str):
            w = next(iter(HeckeElement.parse_spelling(self.n, w, self.mode).terms))
        return self.terms.get(tuple(w), self.mode.zero)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: column_key(t[0]))

    def specialize(self, mode: ScalarMode) -> "HeckeElement":
        """Re-read the coefficients in a specialized mode."""
        return HeckeElement(self.n, {w: mode.coerce(c) for w, c in self.terms.items()}, mode)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            parts.append(f"({format_scalar(c)})*{spelling_text(to_blocks(w))}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"HeckeElement(n={self.n}, mode={self.mode}, {self})"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode.to_json(),
            "terms": [{"word": format_word(w), "coeff": format_scalar(c)} for w, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "HeckeElement":
        mode = ScalarMode.from_json(data["mode"])
        terms = {}
        for t in data["terms"]:
            w = parse_word(t["word"])
            terms[w] = terms.get(w, mode.zero) + parse_scalar(t["coeff"], mode)
        return cls(int(data["n"]), terms, mode)


def right_mul_gen(e: HeckeElement, g: int) -> HeckeElement:
    """``e * g`` for a generator code ``g`` (0 for ``x_1``, ``i`` for ``s_i``)."""
    check_generator(e.n, g)
    acc: dict = {}
    mode = e.mode
    for w, c in e.terms.items():
        for w2, c2 in _rmul_word(w, g, mode):
            _add_into(acc, w2, c * c2)
    return HeckeElement._trusted(e.n, acc, mode)


def _collect(parts: dict) -> dict:
    out = {}
    for w, vals in parts.items():
        v = scalar_sum(vals)
        if v:
            out[w] = v
    return out


def _rmul_terms(terms: dict, g: int, mode: ScalarMode) -> dict:
    parts: dict = {}
    for w, c in terms.items():
        for w2, c2 in _rmul_word(w, g, mode):
            parts.setdefault(w2, []).append(c * c2)
    return _collect(parts)


def mul(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    """Product ``a b``, folding generator multiplication over the spellings of
    the words of ``b``; shared spelling prefixes are multiplied once."""
    a._check(b)
    mode = a.mode
    trie: dict = {}
    for w, c in b.terms.items():
        node = trie
        for g in spelling(to_blocks(w)):
            node = node.setdefault(g, {})
        node[None] = c
    parts: dict = {}

    def walk(node: dict, cur: dict) -> None:
        for g, child in node.items():
            if g is None:
                for w, v in cur.items():
                    parts.setdefault(w, []).append(v * child)
            else:
                walk(child, _rmul_terms(cur, g, mode))

    walk(trie, a.terms)
    return HeckeElement._trusted(a.n, _collect(parts), mode)


def jucys_murphy(n: int, r: int, mode: ScalarMode = GENERIC) -> HeckeElement:
    """The element ``x_r`` built from ``x_{r+1} = s_r x_r s_r + s_r``."""
    if not 1 <= r <= n:
        raise IndexOutOfRange(f"x_{r} not defined in rank {n}")
    return _jm(n, r, mode)


@lru_cache(maxsize=None)
def _jm(n: int, r: int, mode: ScalarMode) -> HeckeElement:
    if r == 1:
        return HeckeElement.generator(n, X1, mode)
    prev = _jm(n, r - 1, mode)
    s = HeckeElement.generator(n, r - 1, mode)
    return right_mul_gen(mul(s, prev), r - 1) + s


def embed(e: HeckeElement, n_new: int) -> HeckeElement:
    """Include rank ``e.n`` into rank ``n_new`` by adding fixed strands."""
    if n_new < e.n:
        raise RankMismatch(f"cannot embed rank {e.n} into rank {n_new}")
    pad = tuple(range(e.n + 1, n_new + 1))
    return HeckeElement._trusted(n_new, {w + pad: c for w, c in e.terms.items()}, e.mode)


def pi_symmetric(e: HeckeElement) -> HeckeElement:
    """Image under ``x_1 -> 0``: words whose normal form uses ``x_1`` vanish."""
    return HeckeElement._trusted(e.n, {w: c for w, c in e.terms.items() if all(b > 0 for b in w)}, e.mode)


def all_basis_words(n: int) -> list[SignedWord]:
    return sorted(enumerate_words(n), key=column_key)


def closure_words(n: int, mode: ScalarMode = GENERIC) -> set[SignedWord]:
    """Words reached from ``1`` by repeated right multiplication by generators."""
    seen = {identity_word(n)}
    todo = [identity_word(n)]
    gens = [X1] + list(range(1, n)) if n >= 1 else []
    while todo:
        w = todo.pop()
        for g in gens:
            for w2, _ in _rmul_word(w, g, mode):
                if w2 not in seen:
                    seen.add(w2)
                    todo.append(w2)
    return seen


def verify_relations(n: int, mode: ScalarMode = GENERIC) -> Report:
    """Check every defining relation, in both presentations, as an identity
    between elements of rank ``n``."""
    rep = Report(f"Hecke relations n={n} at {mode}")
    one = HeckeElement.one(n, mode)
    s = {i: HeckeElement.generator(n, i, mode) for i in range(1, n)}
    x = {r: jucys_murphy(n, r, mode) for r in range(1, n + 1)}
    if n >= 1:
        x1 = x[1]
        rep.add("(x1 - k1)(x1 - k2) = 0", mul(x1 - mode.kappa1, x1 - mode.kappa2).is_zero())
    for i in range(1, n):
        rep.add(f"s{i}^2 = 1", mul(s[i], s[i]) == one)
        for j in range(i + 2, n):
            rep.add(f"s{i} s{j} = s{j} s{i}", mul(s[i], s[j]) == mul(s[j], s[i]))
        if i + 1 < n:
            j = i + 1
            rep.add(f"s{i} s{j} s{i} = s{j} s{i} s{j}", mul(mul(s[i], s[j]), s[i]) == mul(mul(s[j], s[i]), s[j]))
        if i >= 2:
            rep.add(f"x1 s{i} = s{i} x1", mul(x[1], s[i]) == mul(s[i], x[1]))
    if n >= 2:
        t = mul(mul(s[1], x[1]), s[1]) + s[1]
        rep.add("x1 (s1 x1 s1 + s1) = (s1 x1 s1 + s1) x1", mul(x[1], t) == mul(t, x[1]))
    for r in range(1, n + 1):
        for l in range(1, n):
            if r >= 2 and l not in (r, r - 1):
                rep.add(f"x{r} s{l} = s{l} x{r}", mul(x[r], s[l]) == mul(s[l], x[r]))
        for q in range(r + 1, n + 1):
            rep.add(f"x{r} x{q} = x{q} x{r}", mul(x[r], x[q]) == mul(x[q], x[r]))
    for r in range(1, n):
        built = mul(mul(s[r], x[r]), s[r]) + s[r]
        rep.add(f"x{r + 1} = s{r} x{r} s{r} + s{r}", built == x[r + 1])
    a = [HeckeElement.generator(n, g, mode) for g in ([X1] + list(range(1, n)) if n else [])]
    for p in a:
        for q in a:
            for r in a:
                if not mul(mul(p, q), r) == mul(p, mul(q, r)):
                    rep.add("associativity on generators", False, f"{p} {q} {r}")
                    return rep
    rep.add("associativity on generator triples", True)
    return rep
