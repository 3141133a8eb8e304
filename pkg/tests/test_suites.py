import itertools

import pytest
from hypothesis import given, strategies as st

from curveconn import connectedness_number, genus_spectrum, validate_configuration
from curveconn.intersection import pa
from curveconn.suites import (SUITES, SuiteResult, _pairs, additivity_family,
                              additivity_family_size, prop_go_family_size,
                              reduced_family, reduced_family_size, run_suite, shrink)

from conftest import config_and_divisor


def test_family_sizes_closed_form():
    assert additivity_family_size() == sum(1 for _ in additivity_family()) == 76254
    assert reduced_family_size() == sum(1 for _ in reduced_family()) == 59809
    # n <= 4, 7 self values, 2 non-zero multiplicities per component, 3 off-diagonal values
    assert prop_go_family_size() == sum(3 ** len(_pairs(n)) * 14 ** n for n in range(1, 5))


# The exhaustive sweeps rely on two reductions; check both on random instances.

@given(config_and_divisor(n_max=4, mult_max=2))
def test_support_reduction(pair):
    cfg, d = pair
    sub = cfg.restrict(d.support)
    e = sub.divisor([d.mult[i] for i in d.support])
    assert pa(e) == pa(d)
    assert connectedness_number(e).conn == connectedness_number(d).conn
    assert genus_spectrum(e).max_pa == genus_spectrum(d).max_pa


@given(config_and_divisor(n_max=4, mult_max=2), st.integers(-3, 3), st.data())
def test_simple_rational_component_self_is_irrelevant(pair, new_self, data):
    cfg, d = pair
    simple = [i for i in range(cfg.n)
              if d.mult[i] == 1 and cfg.M[i][i] + cfg.k[i] == -2]
    if not simple:
        return
    i = data.draw(st.sampled_from(simple))
    M = [list(r) for r in cfg.M]
    k = list(cfg.k)
    M[i][i], k[i] = new_self, -2 - new_self
    other = validate_configuration({"M": M, "k": k, "snc_faithful": True})
    e = other.divisor(d.mult)
    assert pa(e) == pa(d)
    assert connectedness_number(e).conn == connectedness_number(d).conn
    assert genus_spectrum(e).max_pa == genus_spectrum(d).max_pa


@pytest.mark.parametrize("suite", SUITES)
def test_random_suites_pass(suite):
    res = run_suite(suite, seed=5, count=60)
    assert res.ok, res.witness
    assert res.checked + res.skipped == 60
    assert SuiteResult.from_dict(res.to_dict()) == res


def test_random_suite_reproducible():
    a = run_suite("split_conn", seed=9, count=40).to_dict()
    b = run_suite("split_conn", seed=9, count=40).to_dict()
    assert a == b


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")


def test_exhaustive_h1_nonneg():
    res = run_suite("h1_nonneg", exhaustive=True)
    assert res.ok and res.checked == res.stats["covered"]


def test_shrinker_minimises():
    cfg = validate_configuration({"M": [[-2, 2, 1], [2, -2, 1], [1, 1, -2]], "k": [0, 0, 0],
                                  "snc_faithful": True})

    def fails_if_double_edge(c, mults):
        big = any(c.M[i][j] >= 2 for i, j in itertools.combinations(range(c.n), 2))
        return "double edge" if big else None

    small, mults = shrink(fails_if_double_edge, cfg, [(2, 2, 2)])
    assert small.n == 2
    assert sum(mults[0]) == 1
    assert small.M[0][1] == 2
