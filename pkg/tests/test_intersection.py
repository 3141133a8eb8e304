from hypothesis import given, strategies as st

from curveconn import additivity_check, arithmetic_genus, intersect
from curveconn.generators import gen_cycle, named_fixture
from curveconn.intersection import pa

from conftest import config_and_divisor, configurations, multiplicities


@st.composite
def triples(draw):
    cfg = draw(configurations())
    ds = [cfg.divisor(draw(multiplicities(cfg.n, 3))) for _ in range(3)]
    return cfg, ds


def test_fixture_genera():
    assert pa(named_fixture("A2")[1]) == 0
    assert pa(named_fixture("I3")[1]) == 1
    cfg, d = named_fixture("STAR2")
    assert pa(d) == 0
    assert pa(cfg.component(0)) == 0


def test_genus_report_fields():
    _, d = named_fixture("I3")
    r = arithmetic_genus(d)
    assert (r.self_int, r.k_degree, r.pa) == (0, 0, 1)
    assert r.to_dict()["divisor"] == [1, 1, 1]


@given(triples())
def test_bilinear_symmetric(t):
    _, (a, b, c) = t
    assert intersect(a, b) == intersect(b, a)
    assert intersect(a + b, c) == intersect(a, c) + intersect(b, c)


@given(triples())
def test_additivity(t):
    _, (a, b, _) = t
    lhs, rhs, equal = additivity_check(a, b)
    assert equal and lhs == rhs


@given(config_and_divisor(mult_max=4))
def test_pa_is_integer_by_parity(pair):
    _, d = pair
    r = arithmetic_genus(d)
    assert (r.self_int + r.k_degree) % 2 == 0
    assert r.pa == 1 + (r.self_int + r.k_degree) // 2


@given(config_and_divisor(), st.randoms(use_true_random=False))
def test_relabeling_invariance(pair, rnd):
    cfg, d = pair
    perm = list(range(cfg.n))
    rnd.shuffle(perm)
    permuted = cfg.restrict(perm)
    e = permuted.divisor([d.mult[p] for p in perm])
    assert pa(e) == pa(d)
    assert intersect(e, e) == intersect(d, d)


def test_big_multiplicities_exact():
    _, d = gen_cycle(4)
    big = d.scaled(10**12)
    assert intersect(big, big) == 0
    assert pa(big) == 1
