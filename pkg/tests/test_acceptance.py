"""End-to-end acceptance checks. Each test prints one PASS/FAIL line.

All comparisons are exact; runtime budgets are asserted where they apply.
"""

import time
from math import comb, factorial

import flint

from fusedhecke.fused import (
    DiagramElement,
    FusedPerm,
    fused_count,
    kernel_check,
    phi,
    phi_mode,
    sandwich_product_check,
    verify_phi_relations,
)
from fusedhecke.hecke import HeckeElement, closure_words, embed, verify_relations
from fusedhecke.idempotents import (
    CornerLabel,
    complete_family,
    corner_idempotent,
    verify_complete_family,
    verify_corners,
)
from fusedhecke.quotients import build_reduction_table, delta_word, reduce, relation_cap, spec_A, spec_A_cap
from fusedhecke.scalars import GENERIC, ScalarMode
from fusedhecke.seminormal import build_rep, evaluate, quotient_consistency, verify_rep_relations, wedderburn_check
from fusedhecke.signed_words import (
    AVOIDING,
    avoiding_cap,
    bar_count,
    enumerate_words,
    is_avoiding_12bar,
    spelling_text,
    to_blocks,
)
from fusedhecke.tableaux import dim_std, enumerate_bipartitions, enumerate_sstab, irr_fused, phi_bijection, psi_bijection

Q = flint.fmpq


def closed_count(n, k=None):
    top = n if k is None else min(k, n)
    return sum(comb(n, i) ** 2 * factorial(n - i) for i in range(top + 1))


def test_hecke_relations(criterion):
    start = time.perf_counter()
    rep = verify_relations(3, GENERIC)
    elapsed = time.perf_counter() - start
    ok = rep.ok and elapsed < 10
    assert criterion(1, ok, f"{len(rep.checks)} relations at n=3 generic, {elapsed:.2f}s"), rep.to_text()


def test_basis_count(criterion):
    start = time.perf_counter()
    counts = [len(closure_words(n)) for n in (1, 2, 3, 4)]
    elapsed = time.perf_counter() - start
    ok = counts == [2, 8, 48, 384] and elapsed < 30
    assert criterion(2, ok, f"closure sizes {counts}, {elapsed:.2f}s")


def hand_trivial_corner(k):
    m = ScalarMode.specialized(0, k + 1)

    def P(text):
        return HeckeElement.parse_spelling(2, text, m)

    return (
        P("1")
        + P("s1")
        - (P("s1x1") + P("s1x1s1")).scale(Q(1, k))
        - (P("x1") + P("x1s1")).scale(Q(1, k + 1))
        + (P("x1s1x1") + P("x1s1x1s1")).scale(Q(1, k * (k + 1)))
    ).scale(Q(1, 2))


def test_corner_idempotents(criterion):
    start = time.perf_counter()
    cases = [(2, GENERIC), (3, GENERIC)]
    cases += [(n, ScalarMode.specialized(0, k + 1)) for n in (2, 3, 4) for k in (n, n + 1)]
    failed = [f"n={n} {m}" for n, m in cases if not verify_corners(n, m).ok]
    coeff_ok = True
    for k in (2, 3, 4, 5):
        f = corner_idempotent(CornerLabel(1, 1, 2), ScalarMode.specialized(0, k + 1))
        coeff_ok &= f.coeff("1") == Q(1, 2)
        coeff_ok &= f.coeff("x1s1x1s1") == Q(1, 2 * k * (k + 1))
        coeff_ok &= f == hand_trivial_corner(k)
    elapsed = time.perf_counter() - start
    ok = not failed and coeff_ok and elapsed < 120
    detail = f"{len(cases)} rank/parameter cases, rank 2 expansion {'exact' if coeff_ok else 'WRONG'}, {elapsed:.1f}s"
    assert criterion(3, ok, detail), failed


def test_complete_family(criterion):
    start = time.perf_counter()
    rep = verify_complete_family(3, GENERIC)
    elapsed = time.perf_counter() - start
    ok = rep.ok and elapsed < 120
    assert criterion(4, ok, f"48 idempotents at n=3 generic, {len(rep.checks)} checks, {elapsed:.1f}s"), rep.to_text()


def test_quotient_dimensions(criterion):
    start = time.perf_counter()
    dims = [build_reduction_table(spec_A(n))[0].rank for n in (1, 2, 3, 4)]
    cap3 = build_reduction_table(spec_A_cap(3, 1))[0].rank
    cap4, report4 = build_reduction_table(spec_A_cap(4, 2, ScalarMode.parse("k1=0,k2=7/2")))
    fused4, basis4 = build_reduction_table(spec_A_cap(4, 2, ScalarMode.specialized(0, 3)))
    elapsed = time.perf_counter() - start
    ok = (
        dims == [2, 7, 34, 209] == [closed_count(n) for n in (1, 2, 3, 4)]
        and cap3 == 20
        and cap4.rank == 183
        and "dependent" in report4.status
        and fused4.rank == 192
        and basis4.is_basis
        and elapsed < 1800
    )
    detail = (
        f"A_n {dims}; A_3^(1) {cap3}; A_4^(2) at (0,7/2) {cap4.rank} ({report4.status}); "
        f"at (0,3) {fused4.rank} ({basis4.status}); {elapsed:.1f}s"
    )
    assert criterion(5, ok, detail)


def test_delta_coefficient(criterion):
    found = []
    for k in (1, 2):
        n = k + 1
        table, _ = build_reduction_table(spec_A(n))
        r = reduce(corner_idempotent(CornerLabel(1, 1, n), GENERIC, normalized=False), table)
        found.append(r.coeff(delta_word(k)))
    ok = found == [2, 6]
    assert criterion(6, ok, f"Delta_1, Delta_2 coefficients {[str(c) for c in found]}")


def test_diagram_oracle(criterion):
    pairs = [(k, n) for k in range(1, 6) for n in range(0, 6 - k)]
    failed = [(k, n) for k, n in pairs if not sandwich_product_check(k, n).ok]
    d = DiagramElement.basis(FusedPerm(2, 1, (1, 2), (1,)))
    worked = d * d == DiagramElement.one(2, 1).scale(Q(1, 2)) + d.scale(Q(1, 2))
    ok = not failed and worked
    assert criterion(7, ok, f"{len(pairs)} (k,n) pairs exhaustive, d*d = 1/2 + 1/2 d: {worked}"), failed


def test_phi_verification(criterion):
    bad = []
    for k, n in [(1, 2), (2, 2), (2, 3), (3, 3)]:
        if not verify_phi_relations(k, n).ok:
            bad.append(f"relations {k},{n}")
        f2 = corner_idempotent(CornerLabel(-1, 2, 2), phi_mode(k))
        if not phi(embed(f2, n), k).is_zero():
            bad.append(f"rank 2 corner {k},{n}")
    for k, n in [(1, 2), (1, 3), (2, 3), (2, 4)]:
        if not phi(relation_cap(n, k, phi_mode(k)), k).is_zero():
            bad.append(f"cap relation {k},{n}")
    ranks = {}
    for k, n in [(1, 3), (2, 3), (2, 4)]:
        rep = kernel_check(k, n)
        if not rep.ok:
            bad.append(f"kernel {k},{n}")
        detail = next(c.detail for c in rep.checks if c.name == "image rank of capped avoiding words")
        ranks[(k, n)] = int(detail.split()[-1])
        if ranks[(k, n)] != fused_count(k, n):
            bad.append(f"rank {k},{n}")
    ok = not bad and ranks[(2, 4)] == 192
    assert criterion(8, ok, f"image ranks {ranks}"), bad


def test_representations(criterion):
    shapes = enumerate_bipartitions(3)
    rel_ok = all(verify_rep_relations(build_rep(lam)).ok for lam in shapes)
    total = sum(dim_std(lam) ** 2 for lam in shapes)
    wed = wedderburn_check(3)
    mode = ScalarMode.parse("k1=0,k2=7/2")
    cons = quotient_consistency(3, mode)
    units_ok = True
    fam = complete_family(3, mode)
    for lam in shapes:
        r = build_rep(lam, mode)
        for t, f in fam.items():
            m = evaluate(f, r)
            i = r.basis.index(t) if t.shape == lam else None
            units_ok &= all(m[a][b] == (1 if a == b == i else 0) for a in range(r.dim) for b in range(r.dim))
    ok = rel_ok and total == 48 and wed.ok and cons.ok and units_ok
    assert criterion(9, ok, f"{len(shapes)} shapes, sum of squares {total}, matrix units {units_ok}")


EXCLUDED_N3 = {
    "s1x1s2s1x1s1",
    "s1x1s2s1x1s1s2",
    "s1x1s1s2s1x1s1s2",
    "x1s2s1x1s1",
    "x1s2s1x1s1s2",
    "x1s1s2s1x1s1s2",
    "x1s1x1s2s1x1s1",
    "x1s1x1s2s1x1s1s2",
    "x1s1x1s1",
    "x1s1x1s1s2",
    "x1s1x1s1s2s1",
    "x1s1x1s1s2s1x1",
    "x1s1x1s1s2s1x1s1",
    "x1s1x1s1s2s1x1s1s2",
}


def test_combinatorics(criterion):
    counts_ok = True
    for n in range(0, 7):
        words = list(enumerate_words(n))
        avoiding = [w for w in words if is_avoiding_12bar(w)]
        counts_ok &= len(avoiding) == sum(1 for _ in enumerate_words(n, AVOIDING)) == closed_count(n)
        for k in range(0, n + 1):
            capped = sum(1 for w in avoiding if bar_count(w) <= k)
            counts_ok &= capped == sum(1 for _ in enumerate_words(n, avoiding_cap(k))) == closed_count(n, k)
    excluded = {spelling_text(to_blocks(w)) for w in enumerate_words(3) if not is_avoiding_12bar(w)}
    bij_ok = True
    for n in range(0, 4):
        for lam in irr_fused(3, n):
            for T in enumerate_sstab(lam, 3):
                bij_ok &= psi_bijection(phi_bijection(T, 3), 3) == T
    four_one = len(enumerate_sstab((4, 1), 3))
    ok = counts_ok and excluded == EXCLUDED_N3 and bij_ok and four_one == 2
    detail = f"counts n<=6 {counts_ok}, 14 excluded words {excluded == EXCLUDED_N3}, bijection {bij_ok}, |SSTab((4,1),3)| = {four_one}"
    assert criterion(10, ok, detail)
