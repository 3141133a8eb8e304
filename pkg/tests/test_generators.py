import pytest

from curveconn import connectedness_number, genus_spectrum
from curveconn.generators import (SamplerError, SamplerSpec, gen_chain, gen_cycle,
                                  gen_multiple_fiber, gen_star, named_fixture, take)
from curveconn.intersection import intersect, pa


def test_fixture_names():
    for name in ("A2", "I3", "STAR2", "DISJ2", "star2"):
        cfg, d = named_fixture(name)
        assert cfg.snc_faithful
        assert d.mult == (1,) * cfg.n
    with pytest.raises(ValueError):
        named_fixture("E8")


def test_star_layout():
    cfg, d = gen_star(3)
    assert cfg.names[0] == "core"
    assert cfg.M[0][0] == -2 and cfg.M[1][1] == -1
    assert cfg.M[1][2] == 0
    assert pa(d) == 0


def test_chain_of_minus_two_is_one_connected():
    for n in range(1, 6):
        _, d = gen_chain(n)
        assert pa(d) == 0
        assert connectedness_number(d).conn >= 1


def test_multiple_fibre():
    base = gen_cycle(3)
    d = gen_multiple_fiber(base, 3)
    assert d.mult == (3, 3, 3)
    assert intersect(d, d) == 0
    with pytest.raises(ValueError):
        gen_multiple_fiber(base, 1)


def test_sampler_reproducible():
    spec = SamplerSpec(seed=11)
    a = [(c.to_dict(), d.mult) for c, d in take(spec, 40)]
    b = [(c.to_dict(), d.mult) for c, d in take(spec, 40)]
    assert a == b
    c = [(c.to_dict(), d.mult) for c, d in take(SamplerSpec(seed=12), 40)]
    assert a != c


def test_sampler_windows_sorted():
    spec = SamplerSpec(seed=3, window=16)
    boxes = []
    for _, d in take(spec, 32):
        p = 1
        for m in d.mult:
            p *= m + 1
        boxes.append(p)
    assert boxes[:16] == sorted(boxes[:16]) and boxes[16:] == sorted(boxes[16:])


def test_sampler_filters():
    for _, d in take(SamplerSpec(seed=1, filter="one_connected"), 20):
        assert connectedness_number(d).conn >= 1
    for _, d in take(SamplerSpec(seed=1, filter="all_subcurve_pa_nonpositive"), 20):
        assert genus_spectrum(d).all_nonpositive


def test_sampler_gives_up_when_filter_rejects_everything(monkeypatch):
    from curveconn import generators
    monkeypatch.setattr(generators, "passes_filter", lambda name, d: False)
    with pytest.raises(SamplerError):
        next(generators.sample_random(SamplerSpec(seed=0), reject_window=500))


@pytest.mark.parametrize("kw", [dict(n_min=0), dict(mult_max=0), dict(self_range=(1, 0)),
                                dict(k_policy="x"), dict(edge_density=2.0), dict(filter="x")])
def test_spec_validation(kw):
    with pytest.raises(ValueError):
        SamplerSpec(**kw)
