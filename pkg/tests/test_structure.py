import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from curveconn import (ConsistencyReport, chain_decomposition_search, connectedness_number,
                       enumerate_subcurves, fixed_part_report, genus_spectrum, intersect,
                       lemma_b_shadow_check, lemma_dec_reduced_witness, prop_go_check,
                       reduced_h0, reduced_h1, validate_configuration)
from curveconn import _kernels
from curveconn.connectivity import PreconditionError
from curveconn.generators import gen_chain, gen_cycle, gen_disjoint, named_fixture
from curveconn.intersection import pa
from curveconn.structure import CLAUSES, ShadowError

from conftest import config_and_divisor, configurations

BACKENDS = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])


def closure_components(cfg, support):
    """Component count via boolean matrix powers."""
    idx = list(support)
    adj = np.array([[cfg.M[i][j] >= 1 or i == j for j in idx] for i in idx], dtype=bool)
    reach = adj.copy()
    for _ in range(len(idx)):
        reach = (reach.astype(int) @ adj.astype(int)) > 0
    return len({tuple(row) for row in reach})


def test_genus_spectrum_fixtures():
    s = genus_spectrum(named_fixture("A2")[1])
    assert (s.max_pa, s.witness.mult, s.all_nonpositive) == (0, (1, 0), True)
    s = genus_spectrum(named_fixture("I3")[1])
    assert (s.max_pa, s.witness.mult, s.all_nonpositive) == (1, (1, 1, 1), False)


@pytest.mark.parametrize("backend", BACKENDS)
@given(pair=config_and_divisor(n_max=4, mult_max=2))
def test_genus_spectrum_matches_enumeration(backend, pair):
    _, z = pair
    subs = list(enumerate_subcurves(z))
    assert len(subs) == len(set(s.mult for s in subs))
    genera = [pa(s) for s in subs]
    best = max(genera)
    spec = genus_spectrum(z, backend=backend)
    assert spec.max_pa == best
    assert spec.witness == subs[genera.index(best)]
    assert spec.all_nonpositive == (best <= 0)


def test_reduced_shadow_values():
    _, a2 = named_fixture("A2")
    assert (reduced_h0(a2), reduced_h1(a2)) == (1, 0)
    _, i3 = named_fixture("I3")
    assert (reduced_h0(i3), reduced_h1(i3)) == (1, 1)
    _, disj = named_fixture("DISJ2")
    assert (reduced_h0(disj), reduced_h1(disj)) == (2, 0)


def test_shadow_needs_faithful_and_reduced():
    cfg = validate_configuration({"M": [[-2, 1], [1, -2]], "k": [0, 0]})
    with pytest.raises(ShadowError):
        reduced_h0(cfg.divisor([1, 1]))
    _, d = named_fixture("A2")
    with pytest.raises(ShadowError):
        reduced_h0(d.scaled(2))


@given(config_and_divisor(n_max=5, mult_max=1))
def test_reduced_h0_counts_components(pair):
    cfg, z = pair
    assert reduced_h0(z) == closure_components(cfg, z.support)


@given(config_and_divisor(n_max=5, mult_max=1, genus_max=0))
def test_lemma_b_on_reduced_one_connected(pair):
    _, d = pair
    if connectedness_number(d).conn < 1:
        return
    assert lemma_b_shadow_check(d).status == "pass"


def test_lemma_dec_witnesses():
    dec = lemma_dec_reduced_witness(named_fixture("DISJ2")[1])
    assert (dec.a.mult, dec.b.mult) == ((1, 0), (0, 1))
    cfg, _ = named_fixture("STAR2")
    dec = lemma_dec_reduced_witness(cfg.divisor([0, 1, 1]))
    assert (dec.a.mult, dec.b.mult) == ((0, 1, 0), (0, 0, 1))
    assert intersect(dec.a, dec.b) == 0
    with pytest.raises(ShadowError):
        lemma_dec_reduced_witness(named_fixture("A2")[1])


def test_chain_fixtures():
    cfg, d = named_fixture("STAR2")
    chain = chain_decomposition_search(d, cfg.divisor([0, 1, 1]))
    assert [p.mult for p in chain.pieces] == [(0, 1, 0), (0, 0, 1)]
    assert chain.violations() == []
    cfg, d = named_fixture("A2")
    assert [p.mult for p in chain_decomposition_search(d, cfg.divisor([1, 0])).pieces] == [(1, 0)]
    cfg, d = named_fixture("I3")
    assert chain_decomposition_search(d, cfg.divisor([1, 1, 0])) is None


def test_chain_preconditions():
    cfg, d = named_fixture("DISJ2")
    with pytest.raises(PreconditionError):
        chain_decomposition_search(d, cfg.divisor([1, 0]))
    cfg, d = named_fixture("A2")
    with pytest.raises(PreconditionError):
        chain_decomposition_search(d, d)


@given(config_and_divisor(n_max=4, mult_max=2), st.data())
def test_found_chains_are_sound(pair, data):
    cfg, d = pair
    if connectedness_number(d).conn < 1:
        return
    a = cfg.divisor(data.draw(st.lists(st.integers(0, 2), min_size=cfg.n, max_size=cfg.n)
                              .map(lambda m: [min(x, y) for x, y in zip(m, d.mult)])
                              .filter(lambda m: any(m) and tuple(m) != d.mult)))
    if intersect(a, d - a) < 1:
        return
    chain = chain_decomposition_search(d, a)
    if chain is not None:
        assert chain.violations() == []
        assert len(chain.pieces) == intersect(a, d - a)


def test_report_star2():
    cfg, d = named_fixture("STAR2")
    r = fixed_part_report(d, cfg.divisor([1, 0, 0]))
    assert r.consistent
    assert [c.name for c in r.checks] == list(CLAUSES)
    assert all(c.status == "pass" for c in r.checks)
    iv = r.check("iv_h0_complement")
    assert iv.values == {"predicted_h0": 2, "reduced_h0": 2}
    assert r.check("furthermore_chain").witness == [[0, 1, 0], [0, 0, 1]]


def test_report_i3_inconsistent():
    cfg, d = named_fixture("I3")
    r = fixed_part_report(d, cfg.divisor([1, 1, 0]))
    assert not r.consistent
    assert r.check("iv_h0_complement").status == "fail"
    assert "inconsistent" in r.verdict()


def test_report_not_one_connected():
    _, d = named_fixture("DISJ2")
    r = fixed_part_report(d, d.config.divisor([1, 0]))
    assert r.check("d_1_connected").status == "fail"
    assert {c.status for c in r.checks[1:]} == {"not-applicable"}


def test_report_precondition():
    _, d = named_fixture("A2")
    with pytest.raises(PreconditionError):
        fixed_part_report(d, d)


@given(config_and_divisor(n_max=3, mult_max=2), st.data())
def test_report_deterministic_and_roundtrips(pair, data):
    cfg, d = pair
    z = data.draw(st.lists(st.integers(0, 2), min_size=cfg.n, max_size=cfg.n)
                  .map(lambda m: [min(x, y) for x, y in zip(m, d.mult)])
                  .filter(lambda m: any(m) and tuple(m) != d.mult))
    z = cfg.divisor(z)
    r1, r2 = fixed_part_report(d, z), fixed_part_report(d, z)
    s = json.dumps(r1.to_dict(), sort_keys=True)
    assert s == json.dumps(r2.to_dict(), sort_keys=True)
    back = ConsistencyReport.from_dict(cfg, json.loads(s))
    assert back.to_dict() == r1.to_dict()


@given(configurations(n_max=4, genus_max=0))
def test_prop_go_on_all_ones(cfg):
    d = cfg.divisor([1] * cfg.n)
    assert prop_go_check(d).status in ("pass", "not-applicable")


def test_multiple_fibre_not_one_connected():
    _, d = gen_cycle(4)
    for m in (2, 3):
        md = d.scaled(m)
        assert intersect(md, md) == 0
        assert connectedness_number(md).conn == 0


def test_generators_shapes():
    assert gen_chain(4)[0].n == 4
    assert reduced_h0(gen_disjoint(3)[1]) == 3
