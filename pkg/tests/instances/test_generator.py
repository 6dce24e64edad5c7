from __future__ import annotations

from collections import Counter
from itertools import combinations, product

import pytest
from scipy.stats import chisquare

from src.instances.generator import clauses_for_ratio, gen_gnp, gen_ksat, legal_clause_count
from src.models.instance import InstanceError


def test_legal_clause_count() -> None:
    assert legal_clause_count(4, 3) == 32
    assert legal_clause_count(10, 3) == 960


def test_same_seed_same_formula() -> None:
    assert gen_ksat(20, 40, seed=7) == gen_ksat(20, 40, seed=7)
    assert gen_ksat(20, 40, seed=7) != gen_ksat(20, 40, seed=8)


def test_clauses_are_legal_and_canonical() -> None:
    formula = gen_ksat(6, 200, k=3, seed=3)
    for clause in formula.clauses:
        assert [abs(x) for x in clause] == sorted(abs(x) for x in clause)
        assert len({abs(x) for x in clause}) == 3


def test_clause_distribution_is_uniform() -> None:
    n, k, m = 4, 3, 32 * 200
    formula = gen_ksat(n, m, k=k, seed=11)
    observed = Counter(formula.clauses)
    legal = [
        tuple(v if s else -v for v, s in zip(vs, signs))
        for vs in combinations(range(1, n + 1), k)
        for signs in product((True, False), repeat=k)
    ]
    assert set(observed) <= set(legal)
    _, p_value = chisquare([observed[c] for c in legal])
    assert p_value > 1e-4


def test_distinct_mode() -> None:
    formula = gen_ksat(4, 32, seed=5, distinct=True)
    assert len(set(formula.clauses)) == 32
    with pytest.raises(InstanceError):
        gen_ksat(4, 33, seed=5, distinct=True)


def test_generator_rejects_small_n() -> None:
    with pytest.raises(InstanceError):
        gen_ksat(2, 1, k=3)


def test_clauses_for_ratio() -> None:
    assert clauses_for_ratio(10, 2.0) == 20
    assert clauses_for_ratio(7, 0.0) == 0


def test_gnp_edges() -> None:
    graph = gen_gnp(30, 4.0, seed=2)
    assert graph == gen_gnp(30, 4.0, seed=2)
    assert all(u < v for u, v in graph.edges)
    assert gen_gnp(10, 0.0, seed=1).num_edges == 0
    assert gen_gnp(5, 5.0, seed=1).num_edges == 10


def test_gnp_rejects_degree_out_of_range() -> None:
    with pytest.raises(InstanceError):
        gen_gnp(5, 6.0)
