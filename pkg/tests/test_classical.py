import time

import pytest
from hypothesis import given
from hypothesis import strategies as st

from unibrauer import classical
from unibrauer.classical import ClassicalError, ConventionError


def shape(series, rank):
    return {c.partition: c.two_rank for c in classical.unipotent_class_data(series, rank)}


def test_class_data_examples():
    assert shape("C", 2) == {(4,): 1, (2, 2): 1, (2, 1, 1): 1, (1, 1, 1, 1): 0}
    assert set(shape("B", 1)) == {(3,), (1, 1, 1)}
    sl2 = classical.unipotent_class_data("A", 1)
    assert [c.partition for c in sl2] == [(2,), (1, 1)]
    assert [c.m_prime(3) for c in sl2] == [2, 1]
    assert [c.m_prime(2) for c in sl2] == [1, 1]


@pytest.mark.parametrize("series,rank", [("B", 2), ("B", 3), ("C", 3), ("D", 4), ("D", 5), ("A", 4)])
def test_partition_constraints(series, rank):
    for c in classical.unipotent_class_data(series, rank):
        lam = c.partition
        assert list(lam) == sorted(lam, reverse=True)
        mult = {x: lam.count(x) for x in lam}
        if series in "BD":
            assert all(k % 2 == 0 for x, k in mult.items() if x % 2 == 0)
        if series == "C":
            assert all(k % 2 == 0 for x, k in mult.items() if x % 2 == 1)
        if series == "D":
            assert bool(c.very_even) == all(x % 2 == 0 for x in lam)


def test_very_even_pairs():
    d4 = classical.unipotent_class_data("D", 4)
    very_even = [c for c in d4 if c.very_even]
    assert sorted(c.partition for c in very_even) == [(2, 2, 2, 2), (2, 2, 2, 2), (4, 4), (4, 4)]
    merged = classical.merge_very_even(d4)
    assert len(merged) == len(d4) - 2
    assert all(c.very_even == "" for c in merged)


def test_f_classes_cyclic():
    for m in (1, 2, 5, 12):
        assert classical.f_classes_cyclic(m, 1) == m
    assert classical.f_classes_cyclic(6, 5) == 2
    assert classical.f_classes_cyclic(1, 7) == 1
    with pytest.raises(ClassicalError):
        classical.f_classes_cyclic(6, 3)


@given(st.integers(1, 40), st.integers(1, 200))
def test_f_classes_cyclic_is_a_cokernel(m, t):
    import math

    if math.gcd(m, t) != 1:
        return
    assert classical.f_classes_cyclic(m, t) == math.gcd(m, t - 1)


def test_rational_counts():
    assert classical.rational_unipotent_count("C", 2, 3) == 7
    assert classical.rational_unipotent_count("C", 2, 5) == 7
    assert classical.rational_unipotent_count("A", 1, 3) == 3
    assert classical.rational_unipotent_count("A", 1, 5) == 3
    assert classical.rational_unipotent_count("B", 1, 3) == 2
    with pytest.raises(ClassicalError):
        classical.rational_unipotent_count("C", 2, 4)
    with pytest.raises(ClassicalError):
        classical.rational_unipotent_count("C", 2, 6)


@pytest.mark.parametrize("series,rank,want", [("A", 1, 3), ("A", 2, 3), ("B", 1, 2), ("C", 1, 3), ("D", 2, 5), ("B", 2, 5)])
def test_brute_force_small(series, rank, want):
    assert classical.brute_force_class_count(series, rank, 3) == want
    assert classical.rational_unipotent_count(series, rank, 3) == want


def test_brute_force_rank_zero():
    assert classical.brute_force_class_count("C", 0, 3) == 1


def test_alpha_type_a_examples():
    assert classical.alpha_type_a(2, 2, 3).total == 3
    assert classical.alpha_type_a(2, 3, 7).total == 2
    assert classical.alpha_type_a(3, 3, 7).total == 5
    with pytest.raises(ClassicalError):
        classical.alpha_type_a(2, 3, 3)


def test_alpha_two_equals_rational_count_in_type_a():
    # every F-class of A(u) is counted when l = 2 and m is a power of 2
    for q in (3, 5, 7):
        assert classical.alpha_type_a(2, 2, q).total == classical.rational_unipotent_count("A", 1, q)


def test_convention_audit():
    start = time.perf_counter()
    audit = classical.type_a_convention_audit()
    assert audit.adopted_mismatches == ()
    assert audit.literal_mismatches
    assert "q - 1" in audit.verdict and "SU_n" in audit.verdict
    assert time.perf_counter() - start < 10


def test_rows_carry_both_signs():
    audit = classical.type_a_convention_audit()
    tag = audit.literal_mismatches[0].split(":")[0]
    n, ell, q = (int(tok.split("=")[1]) for tok in tag.split()[:3])
    form = tag.split()[3]
    res = classical.alpha_type_a(n, ell, q, form)
    assert any(r.literal != r.oracle for r in res.rows)
    assert all(r.formula == r.oracle for r in res.rows)


def test_convention_error_carries_report():
    err = ConventionError(["x"])
    assert isinstance(err, ClassicalError)
