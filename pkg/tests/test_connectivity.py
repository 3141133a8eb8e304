import math
import operator

import numpy as np
import pytest
from hypothesis import given, strategies as st

from curveconn import (BudgetExceeded, EnumerationBudget, connectedness_number,
                       enumerate_decompositions, intersect, is_m_connected,
                       split_connectivity_check)
from curveconn import _kernels
from curveconn.connectivity import (ConnectivityResult, PreconditionError,
                                    connectedness_bruteforce, decomposition_table,
                                    digits_of, index_of)
from curveconn.generators import gen_chain, gen_cycle, named_fixture

from conftest import config_and_divisor

BACKENDS = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])


def test_fixture_values():
    assert connectedness_number(named_fixture("A2")[1]).conn == 1
    assert connectedness_number(named_fixture("I3")[1]).conn == 2
    assert connectedness_number(named_fixture("DISJ2")[1]).conn == 0
    r = connectedness_number(named_fixture("I3")[1].scaled(2))
    assert r.conn == 0
    assert r.argmin.a.mult == (1, 1, 1)
    assert connectedness_number(named_fixture("A2")[1].scaled(2)).conn == -2


def test_single_reduced_component_is_infinite():
    cfg, _ = gen_chain(1)
    r = connectedness_number(cfg.divisor([1]))
    assert r.conn == math.inf and r.argmin is None
    assert r.to_dict()["conn"] == "infinity"
    assert ConnectivityResult.from_dict(cfg, r.to_dict()) == r


def test_nonreduced_single_component():
    cfg, _ = gen_chain(1)
    # 3G = G + 2G, G.2G = -4
    assert connectedness_number(cfg.divisor([3])).conn == -4


def test_mixed_radix_roundtrip():
    radices = [3, 2, 4]
    for t in range(24):
        assert index_of(digits_of(t, radices), radices) == t
    # first component is the least significant digit
    assert digits_of(1, radices) == (1, 0, 0)
    assert digits_of(3, radices) == (0, 1, 0)


@given(config_and_divisor(n_max=4, mult_max=2))
def test_decompositions_cover_each_pair_once(pair):
    _, d = pair
    seen = set()
    for dec in enumerate_decompositions(d):
        assert dec.whole == d
        key = frozenset([dec.a.mult, dec.b.mult])
        assert key not in seen
        seen.add(key)
    assert len(seen) == (math.prod(m + 1 for m in d.mult) - 1) // 2


@pytest.mark.parametrize("backend", BACKENDS)
@given(pair=config_and_divisor(n_max=4, mult_max=3))
def test_matches_bruteforce(backend, pair):
    _, d = pair
    fast = connectedness_number(d, backend=backend)
    slow = connectedness_bruteforce(d)
    assert fast.conn == slow.conn
    assert fast.candidates_examined == slow.candidates_examined
    if fast.argmin is not None:
        assert fast.argmin == slow.argmin
        assert intersect(fast.argmin.a, fast.argmin.b) == fast.conn


@given(config_and_divisor(n_max=4, mult_max=2))
def test_table_minimum(pair):
    _, d = pair
    A, vals = decomposition_table(d)
    if len(vals) == 0:
        return
    cfg = d.config
    i = int(np.argmin(vals))
    a = cfg.divisor(A[i].tolist())
    assert vals[i] == connectedness_number(d).conn == intersect(a, d - a)


def test_threaded_split_is_deterministic(monkeypatch):
    _, d = gen_cycle(5)
    d = d.scaled(3)
    serial = connectedness_number(d, workers=1)
    monkeypatch.setattr(_kernels, "PARALLEL_THRESHOLD", 16)
    for workers in (2, 3, 7):
        assert connectedness_number(d, workers=workers) == serial


@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(-1, 50)), max_size=20))
def test_reduce_first_order_independent(pairs):
    a = _kernels.reduce_first(pairs, operator.lt)
    b = _kernels.reduce_first(list(reversed(pairs)), operator.lt)
    assert a == b


@given(st.integers(1, 10_000), st.integers(1, 40))
def test_split_range_partitions(total, parts):
    ranges = _kernels.split_range(1, total, parts)
    assert ranges[0][0] == 1 and ranges[-1][1] == total
    for (_, hi), (lo, _) in zip(ranges, ranges[1:]):
        assert lo == hi + 1


def test_budget():
    _, d = gen_cycle(4)
    d = d.scaled(5)
    with pytest.raises(BudgetExceeded):
        connectedness_number(d, EnumerationBudget(100))
    assert connectedness_number(d, EnumerationBudget(700)).conn == 0


def test_overflow_guard():
    _, d = gen_cycle(3)
    with pytest.raises(_kernels.KernelOverflowError):
        connectedness_number(d.scaled(2 ** 31), EnumerationBudget(2 ** 200))


@given(config_and_divisor(n_max=3, mult_max=2), st.integers(-4, 4))
def test_m_connected_monotone(pair, m):
    _, d = pair
    if is_m_connected(d, m):
        assert is_m_connected(d, m - 1)


@given(config_and_divisor(n_max=4, mult_max=2))
def test_split_connectivity_at_conn(pair):
    _, d = pair
    m = connectedness_number(d).conn
    if m == math.inf:
        return
    assert split_connectivity_check(d, int(m)).status == "pass"


def test_split_connectivity_precondition():
    _, d = named_fixture("A2")
    with pytest.raises(PreconditionError):
        split_connectivity_check(d, 2)


def test_env_flag_selects_numpy_fallback():
    import os
    import subprocess
    import sys
    code = ("from curveconn import _kernels, connectedness_number\n"
            "from curveconn.generators import gen_cycle\n"
            "d = gen_cycle(4)[1].scaled(3)\n"
            "print(_kernels.BACKEND, connectedness_number(d).conn)")
    env = {**os.environ, "CURVECONN_DISABLE_NUMBA": "1"}
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout.split()
    assert out == ["numpy", str(connectedness_number(gen_cycle(4)[1].scaled(3)).conn)]
