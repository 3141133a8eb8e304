"""Named invariant suites: random and exhaustive sweeps with witness shrinking.

Exhaustive families
-------------------
``additivity``  n <= 3, off-diagonals in {0,1,2}, self in {-2,-1}, genus-0
                components; every unordered pair of divisors with
                multiplicities <= 2.
``prop_go``     n <= 4, |self| <= 3, off-diagonals <= 2, genus-0 components,
                multiplicities <= 2, divisors whose subcurves all have
                ``pa <= 0``.
``lemma_b``, ``split_conn``, ``h1_nonneg``
                n <= 5, off-diagonals in {0,1,2}, reduced divisors.

Two reductions keep the sweeps small and are exact:

* A divisor with zero entries is the same problem as its restriction to the
  support, which is a member of the family with smaller ``n``; so only
  full-support divisors are generated.
* With genus-0 components, a component of multiplicity 1 contributes
  ``-2 a_i`` to ``a.M.a + k.a`` and nothing to ``a.(d-a)`` for every
  ``a <= d``, whatever its self-intersection.  Its self-intersection is
  fixed to -2 and the instance counts for every value in range.

``covered`` in the statistics is the number of (configuration, divisor)
instances of the family the sweep accounts for; tests compare it with the
closed-form family size.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .checks import FAIL, NOT_APPLICABLE
from .config import SurfaceConfiguration, validate_configuration
from .connectivity import INFINITY, conn_value, split_connectivity_check
from .generators import SamplerSpec, random_instance, sample_random
from .intersection import additivity_check
from .structure import genus_spectrum, lemma_b_shadow_check, prop_go_check, reduced_h1

SKIP = object()

SELF_RANGE = range(-3, 4)


@dataclass
class SuiteResult:
    suite: str
    mode: str
    seed: int | None
    checked: int = 0
    skipped: int = 0
    violations: int = 0
    witness: dict | None = None
    stats: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        return {"suite": self.suite, "mode": self.mode, "seed": self.seed,
                "checked": self.checked, "skipped": self.skipped,
                "violations": self.violations, "ok": self.ok,
                "witness": self.witness, "stats": self.stats}

    @classmethod
    def from_dict(cls, doc: dict) -> "SuiteResult":
        return cls(suite=doc["suite"], mode=doc["mode"], seed=doc["seed"],
                   checked=doc["checked"], skipped=doc["skipped"],
                   violations=doc["violations"], witness=doc["witness"],
                   stats=dict(doc["stats"]))


# --- per-instance checks ------------------------------------------------------
# Each takes (cfg, mults) and returns None (holds), SKIP, or a failure string.

def _additivity(cfg, mults):
    d1, d2 = (cfg.divisor(m) for m in mults)
    lhs, rhs, equal = additivity_check(d1, d2)
    return None if equal else f"pa(d1+d2) = {lhs} but pa(d1)+pa(d2)-1+d1.d2 = {rhs}"


def _prop_go(cfg, mults):
    c = prop_go_check(cfg.divisor(mults[0]))
    if c.status == NOT_APPLICABLE:
        return SKIP
    return c.detail if c.status == FAIL else None


def _lemma_b(cfg, mults):
    d = cfg.divisor(mults[0])
    if not cfg.snc_faithful or conn_value(d) < 1:
        return SKIP
    c = lemma_b_shadow_check(d)
    return c.detail if c.status == FAIL else None


def _split_conn(cfg, mults):
    d = cfg.divisor(mults[0])
    m = conn_value(d)
    if m == INFINITY:
        return SKIP
    c = split_connectivity_check(d, m)
    return c.detail if c.status == FAIL else None


def _h1_nonneg(cfg, mults):
    if not cfg.snc_faithful:
        return SKIP
    z = cfg.divisor([min(1, m) for m in mults[0]])
    h1 = reduced_h1(z)
    return None if h1 >= 0 else f"reduced h1({z}) = {h1} < 0"


CHECKS: dict[str, Callable] = {
    "additivity": _additivity,
    "prop_go": _prop_go,
    "lemma_b": _lemma_b,
    "split_conn": _split_conn,
    "h1_nonneg": _h1_nonneg,
}

SUITES = tuple(CHECKS)

RANDOM_SPECS = {
    "additivity": SamplerSpec(n_max=4, mult_max=3, self_range=(-4, 2), k_policy="mixed",
                              offdiag_max=3),
    "prop_go": SamplerSpec(n_max=4, mult_max=2, self_range=(-3, 3), offdiag_max=2,
                           filter="all_subcurve_pa_nonpositive"),
    "lemma_b": SamplerSpec(n_max=5, mult_max=1, self_range=(-3, 1), offdiag_max=2,
                           edge_density=0.6, filter="one_connected"),
    "split_conn": SamplerSpec(n_max=4, mult_max=2, self_range=(-3, 1), offdiag_max=2),
    "h1_nonneg": SamplerSpec(n_max=5, mult_max=1, self_range=(-3, 1), k_policy="mixed",
                             offdiag_max=2),
}


# --- witnesses ------------------------------------------------------------------

def instance_doc(cfg: SurfaceConfiguration, mults) -> dict:
    return {"configuration": cfg.to_dict(), "divisors": [list(m) for m in mults]}


def _still_fails(check, cfg, mults) -> bool:
    try:
        out = check(cfg, mults)
    except (ValueError, ArithmeticError):
        return False
    return out is not None and out is not SKIP


def _shrink_candidates(cfg: SurfaceConfiguration, mults):
    n = cfg.n
    if n > 1:
        for i in range(n):
            keep = [j for j in range(n) if j != i]
            sub = [tuple(m[j] for j in keep) for m in mults]
            if all(any(m) for m in sub):
                yield cfg.restrict(keep), sub
    for t, m in enumerate(mults):
        for i in range(n):
            if m[i] > 0:
                new = list(m)
                new[i] -= 1
                if any(new):
                    yield cfg, [tuple(new) if s == t else mults[s] for s in range(len(mults))]
    for i in range(n):
        for j in range(i + 1, n):
            if cfg.M[i][j] > 0:
                M = [list(r) for r in cfg.M]
                M[i][j] -= 1
                M[j][i] -= 1
                yield (validate_configuration({"M": M, "k": cfg.k, "names": cfg.names,
                                               "snc_faithful": cfg.snc_faithful}), mults)


def shrink(check, cfg: SurfaceConfiguration, mults, max_steps: int = 1000):
    """Greedy shrink: drop components, lower multiplicities and edges while failing."""
    mults = [tuple(m) for m in mults]
    for _ in range(max_steps):
        for cand_cfg, cand in _shrink_candidates(cfg, mults):
            if _still_fails(check, cand_cfg, cand):
                cfg, mults = cand_cfg, [tuple(m) for m in cand]
                break
        else:
            break
    return cfg, mults


# --- drivers ----------------------------------------------------------------------

def _run(suite: str, mode: str, seed, instances: Iterable, stats: dict | None = None,
         do_shrink: bool = True) -> SuiteResult:
    check = CHECKS[suite]
    res = SuiteResult(suite, mode, seed)
    first = None
    for cfg, mults in instances:
        out = check(cfg, mults)
        if out is SKIP:
            res.skipped += 1
            continue
        res.checked += 1
        if out is not None:
            res.violations += 1
            if first is None:
                first = (cfg, mults, out)
    if first is not None:
        cfg, mults, detail = first
        if do_shrink:
            cfg, mults = shrink(check, cfg, mults)
            detail = check(cfg, mults)
        res.witness = {"detail": detail, **instance_doc(cfg, mults)}
    if stats:
        res.stats.update(stats)
    return res


def random_instances(suite: str, seed: int, count: int):
    spec = RANDOM_SPECS[suite]
    spec = SamplerSpec(**{**spec.__dict__, "seed": seed})
    if suite == "additivity":
        rng = np.random.default_rng(seed)
        for _ in range(count):
            cfg, d1 = random_instance(rng, spec)
            d2 = rng.integers(0, spec.mult_max + 1, size=cfg.n)
            if not d2.any():
                d2[0] = 1
            yield cfg, [d1.mult, tuple(int(x) for x in d2)]
        return
    for cfg, d in itertools.islice(sample_random(spec), count):
        yield cfg, [d.mult]


def run_random(suite: str, seed: int, count: int) -> SuiteResult:
    if suite not in CHECKS:
        raise KeyError(suite)
    return _run(suite, "random", seed, random_instances(suite, seed, count),
                {"count": count})


# --- exhaustive families ------------------------------------------------------------

def _pairs(n):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _config(n, offd, selfs, genus=None):
    M = [[0] * n for _ in range(n)]
    for (i, j), v in zip(_pairs(n), offd):
        M[i][j] = M[j][i] = v
    for i in range(n):
        M[i][i] = selfs[i]
    g = genus or [0] * n
    k = [2 * g[i] - 2 - selfs[i] for i in range(n)]
    return validate_configuration({"M": M, "k": k, "snc_faithful": True})


def additivity_family():
    """Every configuration and unordered divisor pair of the additivity family."""
    for n in range(1, 4):
        divs = [m for m in itertools.product(range(3), repeat=n) if any(m)]
        divs.sort(key=lambda v: v[::-1])
        for offd in itertools.product(range(3), repeat=len(_pairs(n))):
            for selfs in itertools.product((-2, -1), repeat=n):
                cfg = _config(n, offd, selfs)
                for x in range(len(divs)):
                    for y in range(x, len(divs)):
                        yield cfg, [divs[x], divs[y]]


def additivity_family_size() -> int:
    total = 0
    for n in range(1, 4):
        nd = 3 ** n - 1
        total += 3 ** len(_pairs(n)) * 2 ** n * nd * (nd + 1) // 2
    return total


def prop_go_family(stats: dict):
    """Hypothesis-satisfying instances of the prop_go family, with accounting.

    ``stats`` gains ``covered`` (full-support instances accounted for),
    ``rejected`` (those failing the ``pa <= 0`` hypothesis) and
    ``evaluated`` (instances actually handed to the check).
    """
    stats.update(covered=0, rejected=0, evaluated=0)
    nself = len(SELF_RANGE)
    for n in range(1, 5):
        for offd in itertools.product(range(3), repeat=len(_pairs(n))):
            rep = _config(n, offd, [-2] * n)
            # every reduced subcurve of a full-support divisor is below it, and
            # its genus ignores self-intersections
            if not genus_spectrum(rep.divisor([1] * n)).all_nonpositive:
                block = nself ** n * 2 ** n
                stats["covered"] += block
                stats["rejected"] += block
                continue
            for dm in itertools.product((1, 2), repeat=n):
                doubled = [i for i in range(n) if dm[i] == 2]
                weight = nself ** (n - len(doubled))
                for svals in itertools.product(SELF_RANGE, repeat=len(doubled)):
                    selfs = [-2] * n
                    for i, s in zip(doubled, svals):
                        selfs[i] = s
                    cfg = _config(n, offd, selfs)
                    stats["covered"] += weight
                    stats["evaluated"] += 1
                    if not genus_spectrum(cfg.divisor(dm)).all_nonpositive:
                        stats["rejected"] += weight
                        continue
                    yield cfg, [dm]


def prop_go_family_size() -> int:
    return sum(3 ** len(_pairs(n)) * (len(SELF_RANGE) * 2) ** n for n in range(1, 5))


def reduced_family(n_max: int = 5, genus_choices=(0,)):
    """All-ones divisors over every graph with off-diagonals in {0,1,2}."""
    for n in range(1, n_max + 1):
        for offd in itertools.product(range(3), repeat=len(_pairs(n))):
            for genus in itertools.product(genus_choices, repeat=n):
                yield _config(n, offd, [-2] * n, list(genus)), [(1,) * n]


def reduced_family_size(n_max: int = 5, genus_choices=(0,)) -> int:
    return sum(3 ** len(_pairs(n)) * len(genus_choices) ** n for n in range(1, n_max + 1))


def run_exhaustive(suite: str) -> SuiteResult:
    if suite == "additivity":
        return _run(suite, "exhaustive", None, additivity_family(),
                    {"covered": additivity_family_size()})
    if suite == "prop_go":
        stats: dict = {}
        res = _run(suite, "exhaustive", None, prop_go_family(stats))
        res.stats.update(stats)
        res.stats["family_size"] = prop_go_family_size()
        return res
    if suite in ("lemma_b", "split_conn"):
        return _run(suite, "exhaustive", None, reduced_family(),
                    {"covered": reduced_family_size()})
    if suite == "h1_nonneg":
        return _run(suite, "exhaustive", None, reduced_family(4, (0, 1)),
                    {"covered": reduced_family_size(4, (0, 1))})
    raise KeyError(suite)


def run_suite(suite: str, *, seed: int | None = None, count: int = 1000,
              exhaustive: bool = False) -> SuiteResult:
    if suite not in CHECKS:
        raise KeyError(suite)
    if exhaustive:
        return run_exhaustive(suite)
    return run_random(suite, 0 if seed is None else seed, count)
