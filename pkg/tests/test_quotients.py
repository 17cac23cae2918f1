import json
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fusedhecke.errors import ModeMismatch, RankMismatch
from fusedhecke.hecke import HeckeElement, all_basis_words, mul
from fusedhecke.idempotents import CornerLabel, corner_idempotent
from fusedhecke.quotients import (
    ReductionTable,
    build_reduction_table,
    delta_word,
    ideal_span,
    lambda_coeffs,
    quotient_dim,
    reduce,
    relation_A,
    spec_A,
    spec_A_cap,
    verify_lambda,
    verify_quotient_dims,
)
from fusedhecke.scalars import GENERIC, RatFunc, ScalarMode
from fusedhecke.signed_words import AVOIDING, avoiding_cap, bar_count, enumerate_words, parse_word, spelling_text, to_blocks

K1, K2 = RatFunc.gens()
SPEC = ScalarMode.parse("k1=0,k2=7/2")


def special(k):
    return ScalarMode.specialized(0, k + 1)


def P(text, n=2, mode=GENERIC):
    return HeckeElement.parse_spelling(n, text, mode)


def closed_count(n):
    return sum(comb(n, i) ** 2 * factorial(n - i) for i in range(n + 1))


def test_ideal_span_ranks():
    assert ideal_span(2, [relation_A(2)]).rank == 1
    assert ideal_span(3, [relation_A(3)]).rank == 48 - 34
    assert ideal_span(2, [HeckeElement.zero(2)]).rank == 0


@pytest.mark.parametrize("mode", [GENERIC, SPEC])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_dimension_of_A(n, mode):
    table, report = build_reduction_table(spec_A(n, mode))
    assert table.rank == closed_count(n) == [2, 7, 34, 209][n - 1]
    assert report.is_basis
    assert set(table.basis_words) == set(enumerate_words(n, AVOIDING))


def test_rank_two_rewrite_of_x1s1_squared():
    table, _ = build_reduction_table(spec_A(2))
    got = reduce(P("x1s1x1s1"), table)
    expected = (
        (P("s1") - P("1")).scale(K1 * (1 + K1))
        + (P("s1x1s1") - P("s1x1")).scale(K1)
        + (P("x1") - P("x1s1")).scale(1 + K1)
        + P("x1s1x1")
    )
    assert got == expected
    m = special(2)
    table, _ = build_reduction_table(spec_A(2, m))
    assert reduce(P("x1s1x1s1", 2, m), table) == P("x1", 2, m) + P("x1s1x1", 2, m) - P("x1s1", 2, m)


def test_reduce_fixes_basis_words_and_kills_generator():
    table, _ = build_reduction_table(spec_A(3, SPEC))
    for w in table.basis_words:
        e = HeckeElement(3, {w: 1}, SPEC)
        assert reduce(e, table) == e
    assert reduce(relation_A(3, SPEC), table).is_zero()
    with pytest.raises(RankMismatch):
        reduce(P("x1", 2, SPEC), table)
    with pytest.raises(ModeMismatch):
        reduce(P("x1", 3), table)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_first_cap_quotient_is_central_binomial(n):
    assert quotient_dim(spec_A_cap(n, 1)) == comb(2 * n, n)


def test_cap_quotients_rank_three():
    table, report = build_reduction_table(spec_A_cap(3, 1))
    assert table.rank == 20
    assert not report.is_basis and report.dependent_words
    table, report = build_reduction_table(spec_A_cap(3, 1, special(1)))
    assert table.rank == 24 == closed_count(3) - 10
    assert report.is_basis


def test_cap_quotients_rank_four():
    table, report = build_reduction_table(spec_A_cap(4, 2, SPEC))
    assert table.rank == 183
    assert report.designated_count == 192
    assert "dependent" in report.status
    table, report = build_reduction_table(spec_A_cap(4, 2, special(2)))
    assert table.rank == 192 and report.is_basis
    assert set(table.basis_words) == set(enumerate_words(4, avoiding_cap(2)))


@pytest.mark.parametrize("n,k", [(2, 2), (3, 3), (2, 3)])
def test_cap_does_nothing_at_low_rank(n, k):
    m = special(k)
    a, _ = build_reduction_table(spec_A(n, m))
    b, _ = build_reduction_table(spec_A_cap(n, k, m))
    assert a.rank == b.rank and a.rewrite == b.rewrite


def test_verify_reports():
    assert verify_quotient_dims(3).ok
    assert verify_quotient_dims(4, special(2), k=2, expected=192).ok
    assert verify_quotient_dims(4, SPEC, k=2, expected=183).ok
    assert not verify_quotient_dims(3, GENERIC, expected=33).ok
    assert verify_lambda(1).ok and verify_lambda(2).ok


def test_delta_word():
    assert delta_word(0) == parse_word("-1")
    assert delta_word(1) == (-2, -1)
    for k in range(4):
        assert bar_count(delta_word(k)) == k + 1


def spelled(word):
    return spelling_text(to_blocks(word))


def test_lambda_at_k_equals_one_specialized():
    # the reduced unnormalized corner at k2 = 2 is
    # 2 + 2 s1 - 2 s1x1 - 2 s1x1s1 - 2 x1s1 + 2 x1s1x1
    got = {spelled(w): c for w, c in lambda_coeffs(1, special(1)).items()}
    assert got == {"1": -1, "s1": -1, "s1x1": 1, "s1x1s1": 1, "x1s1": 1}


@pytest.mark.parametrize("k", [1, 2])
def test_lambda_relation_holds_in_cap_quotient(k):
    n = k + 1
    coeffs = lambda_coeffs(k)
    assert all(bar_count(w) <= k for w in coeffs)
    table, _ = build_reduction_table(spec_A_cap(n, k))
    rel = HeckeElement(n, {delta_word(k): 1}) - HeckeElement(n, coeffs)
    assert reduce(rel, table).is_zero()


def test_table_json_round_trip():
    table, _ = build_reduction_table(spec_A(3, SPEC))
    again = ReductionTable.from_json(json.loads(json.dumps(table.to_json())))
    assert again.basis_words == table.basis_words
    assert again.rewrite == table.rewrite


def test_cache_round_trip(tmp_path, monkeypatch):
    monkeypatch.setenv("HECKE_CACHE_DIR", str(tmp_path))
    spec = spec_A_cap(3, 1)
    first, rep1 = build_reduction_table(spec)
    files = list(tmp_path.glob("*.json"))
    assert len(files) == 1
    second, rep2 = build_reduction_table(spec)
    assert second.rewrite == first.rewrite and second.basis_words == first.basis_words
    assert rep2.status == rep1.status and rep2.dependent_words == rep1.dependent_words


def test_ideal_is_two_sided():
    m = SPEC
    table, _ = build_reduction_table(spec_A(3, m))
    g = relation_A(3, m)
    for w in all_basis_words(3)[::5]:
        e = HeckeElement(3, {w: 1}, m)
        assert reduce(mul(e, g), table).is_zero()
        assert reduce(mul(g, e), table).is_zero()


def elements(n, mode):
    return st.dictionaries(
        st.sampled_from(all_basis_words(n)), st.integers(-3, 3).filter(bool), min_size=1, max_size=4
    ).map(lambda d: HeckeElement(n, d, mode))


@settings(max_examples=25)
@given(st.data())
def test_reduce_respects_multiplication(data):
    table, _ = build_reduction_table(spec_A_cap(3, 2, special(2)))
    a, b = data.draw(elements(3, special(2))), data.draw(elements(3, special(2)))
    assert reduce(mul(a, b), table) == reduce(mul(reduce(a, table), b), table)
    assert reduce(mul(a, b), table) == reduce(mul(a, reduce(b, table)), table)
    assert reduce(reduce(a, table), table) == reduce(a, table)


def test_unnormalized_relation_has_polynomial_coefficients():
    f = corner_idempotent(CornerLabel(-1, 2, 2), GENERIC, normalized=False)
    assert all(c.is_polynomial for _, c in f.sorted_terms())
