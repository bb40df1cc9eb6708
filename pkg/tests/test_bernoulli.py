from fractions import Fraction
from pathlib import Path

import pytest

from ubern.bernoulli import (
    SparsePoly,
    classical_bernoulli,
    divided_ubern,
    format_rational,
    gamma,
    parse_rational,
    poly_vp,
    read_coefficient_cache,
    specialize,
    tau,
    tau_padic,
    tau_valuation,
    write_coefficient_cache,
)
from ubern.errors import CacheError, CeilingExceeded, PreconditionError
from ubern.padic import INFINITY, PadicScalar, vp
from ubern.partitions import Partition, count_partitions, enumerate_partitions


def test_gamma_examples():
    assert gamma(Partition({1: 1})) == 2
    assert gamma(Partition({1: 2})) == 8
    assert gamma(Partition({2: 1})) == 3
    with pytest.raises(PreconditionError):
        gamma(Partition())


def test_tau_examples():
    assert tau(Partition({1: 1})) == Fraction(1, 2)
    assert tau(Partition({1: 2})) == Fraction(-1, 4)
    assert tau(Partition({2: 1})) == Fraction(1, 3)
    assert tau(Partition({2: 3})) == Fraction(280, 9)
    assert tau(Partition({5: 1})) == 4


def test_tau_valuation_agrees_with_exact():
    for n in range(1, 15):
        for u in enumerate_partitions(n):
            t = tau(u)
            for p in (2, 3, 5, 7):
                assert tau_valuation(p, u) == vp(p, t)


def test_tau_padic_examples():
    x = tau_padic(3, Partition({2: 1}), 2)
    assert (x.valuation, x.unit) == (-1, 1)
    y = tau_padic(2, Partition({1: 1}), 3)
    assert (y.valuation, y.unit) == (-1, 1)
    z = tau_padic(3, Partition({2: 3}), 2)
    assert z.valuation == -2
    assert z == PadicScalar.from_rational(3, Fraction(280, 9), 2)


def test_divided_ubern_small():
    p1 = divided_ubern(1)
    assert p1.weight_tag == 1
    assert [(u.to_pairs(), c) for u, c in p1.items()] == [([[1, 1]], Fraction(1, 2))]
    p2 = divided_ubern(2)
    assert p2.get(Partition({1: 2})) == Fraction(-1, 4)
    assert p2.get(Partition({2: 1})) == Fraction(1, 3)
    assert len(p2) == 2


def test_divided_ubern_term_counts():
    for n in range(1, 26):
        assert len(divided_ubern(n)) == count_partitions(n)


def test_divided_ubern_guards():
    with pytest.raises(PreconditionError):
        divided_ubern(0)
    with pytest.raises(CeilingExceeded):
        divided_ubern(61)
    with pytest.raises(CeilingExceeded):
        divided_ubern(6, n_ceiling=5)
    assert divided_ubern(5, n_ceiling=5).weight_tag == 5


def test_specialize_recovers_classical_values():
    vals = {i: (-1) ** i for i in range(1, 8)}
    assert 2 * specialize(divided_ubern(2), vals) == Fraction(1, 6)
    assert 4 * specialize(divided_ubern(4), vals) == Fraction(-1, 30)
    assert 6 * specialize(divided_ubern(6), vals) == Fraction(1, 42)


def test_specialize_missing_value():
    with pytest.raises(KeyError):
        specialize(divided_ubern(3), {1: 1, 2: 1})


def test_specialize_all_zero():
    zero = {i: 0 for i in range(1, 6)}
    assert specialize(divided_ubern(5), zero) == 0


def test_classical_bernoulli():
    expected = {
        0: Fraction(1),
        1: Fraction(-1, 2),
        2: Fraction(1, 6),
        3: Fraction(0),
        4: Fraction(-1, 30),
        6: Fraction(1, 42),
        8: Fraction(-1, 30),
        10: Fraction(5, 66),
        12: Fraction(-691, 2730),
    }
    for n, value in expected.items():
        assert classical_bernoulli(n) == value
    for n in range(3, 31, 2):
        assert classical_bernoulli(n) == 0


def test_oracle_equivalence_prefix():
    for n in range(1, 13):
        vals = {i: (-1) ** i for i in range(1, n + 1)}
        assert n * specialize(divided_ubern(n), vals) == classical_bernoulli(n)


def test_poly_vp_examples():
    assert poly_vp(3, SparsePoly()) == INFINITY
    assert poly_vp(3, divided_ubern(2)) == -1
    assert poly_vp(5, divided_ubern(2)) == 0


def test_clarke_p_integrality():
    for p in (3, 5, 7):
        for n in range(1, 31):
            if n % (p - 1):
                assert poly_vp(p, divided_ubern(n)) >= 0


def test_sparse_poly_algebra():
    u1, u2 = Partition({1: 2}), Partition({2: 1})
    a = SparsePoly({u1: Fraction(1, 2), u2: Fraction(1)})
    b = SparsePoly({u1: Fraction(1, 2)})
    diff = a - b
    assert len(diff) == 1 and diff.get(u2) == 1
    assert (diff + b).get(u1) == Fraction(1, 2)
    assert a.scale(2).get(u1) == 1
    assert a.add_term(u2, -1).get(u2) == 0
    shifted = a.times_monomial({2: 3})
    assert shifted.get(Partition({1: 2, 2: 3})) == Fraction(1, 2)
    assert shifted.weight_tag is None


def test_sparse_poly_weight_tag_enforced():
    with pytest.raises(ValueError):
        SparsePoly({Partition({1: 1}): Fraction(1)}, weight_tag=2)
    tagged = divided_ubern(3).times_monomial({1: 2})
    assert tagged.weight_tag == 5


def test_sparse_poly_item_order_is_canonical():
    poly = divided_ubern(6)
    keys = [u for u, _ in poly.items()]
    assert keys == list(enumerate_partitions(6))


def test_rational_serialization():
    assert format_rational(Fraction(-1, 4)) == "-1/4"
    assert format_rational(Fraction(4)) == "4/1"
    assert parse_rational("-1/4") == Fraction(-1, 4)
    assert parse_rational("7") == 7


def test_cache_round_trip(tmp_path: Path):
    poly = divided_ubern(9)
    path = tmp_path / "ubern_9.jsonl"
    write_coefficient_cache(path, poly)
    again = read_coefficient_cache(path, 9)
    assert again == poly
    assert again.weight_tag == 9
    # byte-for-byte stable
    text = path.read_text()
    write_coefficient_cache(path, again)
    assert path.read_text() == text


def test_cache_rejects_corruption(tmp_path: Path):
    poly = divided_ubern(7)
    path = tmp_path / "ubern_7.jsonl"
    write_coefficient_cache(path, poly)

    with pytest.raises(CacheError):
        read_coefficient_cache(path, 8)  # wrong n

    lines = path.read_text().splitlines()
    (tmp_path / "short.jsonl").write_text("\n".join(lines[:-1]) + "\n")
    with pytest.raises(CacheError):
        read_coefficient_cache(tmp_path / "short.jsonl", 7)

    garbled = lines[:]
    garbled[3] = "{not json"
    (tmp_path / "bad.jsonl").write_text("\n".join(garbled) + "\n")
    with pytest.raises(CacheError):
        read_coefficient_cache(tmp_path / "bad.jsonl", 7)

    wrong_weight = lines[:]
    wrong_weight[1] = '{"u":[[1,1]],"c":"1/2"}'
    (tmp_path / "weight.jsonl").write_text("\n".join(wrong_weight) + "\n")
    with pytest.raises(CacheError):
        read_coefficient_cache(tmp_path / "weight.jsonl", 7)
