"""Named fixture families and seeded random instances."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .config import ConfigurationError, Divisor, SurfaceConfiguration, validate_configuration
from .connectivity import DEFAULT_BUDGET, conn_value

FILTERS = ("one_connected", "all_subcurve_pa_nonpositive")


class SamplerError(RuntimeError):
    pass


def _all_ones(cfg: SurfaceConfiguration) -> Divisor:
    return cfg.divisor([1] * cfg.n)


def gen_chain(length: int, self_int: int = -2, k: int = 0, *,
              name: str = "") -> tuple[SurfaceConfiguration, Divisor]:
    if length < 1:
        raise ConfigurationError("shape", "chain length must be >= 1")
    M = [[0] * length for _ in range(length)]
    for i in range(length):
        M[i][i] = self_int
        if i + 1 < length:
            M[i][i + 1] = M[i + 1][i] = 1
    cfg = validate_configuration({"M": M, "k": [k] * length, "snc_faithful": True,
                                  "name": name or f"chain{length}"})
    return cfg, _all_ones(cfg)


def gen_cycle(length: int, *, name: str = "") -> tuple[SurfaceConfiguration, Divisor]:
    if length < 3:
        raise ConfigurationError("shape", "cycle length must be >= 3")
    M = [[0] * length for _ in range(length)]
    for i in range(length):
        M[i][i] = -2
        j = (i + 1) % length
        M[i][j] = M[j][i] = 1
    cfg = validate_configuration({"M": M, "k": [0] * length, "snc_faithful": True,
                                  "name": name or f"cycle{length}"})
    return cfg, _all_ones(cfg)


def gen_star(leaves: int, *, name: str = "") -> tuple[SurfaceConfiguration, Divisor]:
    """A (-2)-core meeting ``leaves`` pairwise disjoint (-1)-curves once each."""
    if leaves < 1:
        raise ConfigurationError("shape", "a star needs at least one leaf")
    n = leaves + 1
    M = [[0] * n for _ in range(n)]
    M[0][0] = -2
    for i in range(1, n):
        M[i][i] = -1
        M[0][i] = M[i][0] = 1
    cfg = validate_configuration({"M": M, "k": [0] + [-1] * leaves, "snc_faithful": True,
                                  "names": ["core"] + [f"leaf{i}" for i in range(1, n)],
                                  "name": name or f"star{leaves}"})
    return cfg, _all_ones(cfg)


def gen_disjoint(count: int, self_int: int = -2, k: int = 0, *,
                 name: str = "") -> tuple[SurfaceConfiguration, Divisor]:
    M = [[self_int if i == j else 0 for j in range(count)] for i in range(count)]
    cfg = validate_configuration({"M": M, "k": [k] * count, "snc_faithful": True,
                                  "name": name or f"disjoint{count}"})
    return cfg, _all_ones(cfg)


def gen_multiple_fiber(base: tuple[SurfaceConfiguration, Divisor], m: int) -> Divisor:
    if m < 2:
        raise ValueError("multiplier must be >= 2")
    return base[1].scaled(m)


def named_fixture(name: str) -> tuple[SurfaceConfiguration, Divisor]:
    """The small fixtures used throughout the tests: A2, I3, STAR2, DISJ2."""
    builders = {
        "A2": lambda: gen_chain(2, -2, 0, name="A2"),
        "I3": lambda: gen_cycle(3, name="I3"),
        "STAR2": lambda: gen_star(2, name="STAR2"),
        "DISJ2": lambda: gen_disjoint(2, name="DISJ2"),
    }
    try:
        return builders[name.upper()]()
    except KeyError:
        raise ValueError(f"unknown fixture {name!r}; choose from {sorted(builders)}") from None


# --- random sampling --------------------------------------------------------

@dataclass(frozen=True)
class SamplerSpec:
    n_max: int = 4
    mult_max: int = 2
    self_range: tuple[int, int] = (-3, 1)
    k_policy: str = "rational"      # "rational": genus 0; "mixed": genus 0 or 1
    edge_density: float = 0.5
    offdiag_max: int = 1
    seed: int = 0
    filter: str | None = None
    n_min: int = 1
    snc_faithful: bool = True
    window: int = 64

    def __post_init__(self):
        if self.n_min < 1 or self.n_max < self.n_min:
            raise ValueError("need 1 <= n_min <= n_max")
        if self.mult_max < 1:
            raise ValueError("mult_max must be >= 1")
        if self.self_range[0] > self.self_range[1]:
            raise ValueError("empty self_range")
        if self.k_policy not in ("rational", "mixed"):
            raise ValueError(f"unknown k_policy {self.k_policy!r}")
        if not 0.0 <= self.edge_density <= 1.0:
            raise ValueError("edge_density must lie in [0, 1]")
        if self.filter is not None and self.filter not in FILTERS:
            raise ValueError(f"unknown filter {self.filter!r}; choose from {FILTERS}")


def random_instance(rng: np.random.Generator,
                    spec: SamplerSpec) -> tuple[SurfaceConfiguration, Divisor]:
    n = int(rng.integers(spec.n_min, spec.n_max + 1))
    lo, hi = spec.self_range
    selfs = rng.integers(lo, hi + 1, size=n)
    if spec.k_policy == "mixed":
        genus = rng.integers(0, 2, size=n)
    else:
        genus = np.zeros(n, dtype=np.int64)
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        M[i][i] = int(selfs[i])
        for j in range(i + 1, n):
            if rng.random() < spec.edge_density:
                M[i][j] = M[j][i] = int(rng.integers(1, spec.offdiag_max + 1))
    # parity and genus >= 0 hold by construction: k = 2g - 2 - self
    k = [int(2 * genus[i] - 2 - selfs[i]) for i in range(n)]
    cfg = validate_configuration({"M": M, "k": k, "snc_faithful": spec.snc_faithful})
    mult = rng.integers(0, spec.mult_max + 1, size=n)
    if not mult.any():
        mult[int(rng.integers(0, n))] = int(rng.integers(1, spec.mult_max + 1))
    return cfg, cfg.divisor(mult.tolist())


def passes_filter(name: str | None, d: Divisor) -> bool:
    if name is None:
        return True
    if name == "one_connected":
        return conn_value(d, DEFAULT_BUDGET) >= 1
    if name == "all_subcurve_pa_nonpositive":
        from .structure import genus_spectrum
        return genus_spectrum(d).all_nonpositive
    raise ValueError(f"unknown filter {name!r}")


def box(d: Divisor) -> int:
    return math.prod(m + 1 for m in d.mult)


def sample_random(spec: SamplerSpec,
                  reject_window: int = 10_000) -> Iterator[tuple[SurfaceConfiguration, Divisor]]:
    """Endless reproducible stream of validated ``(configuration, divisor)`` pairs.

    Instances come out in windows of ``spec.window`` accepted draws, each
    window sorted by box size so small cases lead.  Raises
    :class:`SamplerError` if fewer than 0.1% of ``reject_window`` draws pass
    the filter.
    """
    rng = np.random.default_rng(spec.seed)
    attempts = accepted_in_window = 0
    batch: list = []
    while True:
        cfg, d = random_instance(rng, spec)
        attempts += 1
        if passes_filter(spec.filter, d):
            batch.append((cfg, d))
            accepted_in_window += 1
        if attempts == reject_window:
            if accepted_in_window * 1000 < reject_window:
                raise SamplerError(
                    f"filter {spec.filter!r} rejected {reject_window - accepted_in_window} "
                    f"of {reject_window} draws; loosen the sampler settings")
            attempts = accepted_in_window = 0
        if len(batch) == spec.window:
            batch.sort(key=lambda inst: box(inst[1]))
            yield from batch
            batch = []


def take(spec: SamplerSpec, count: int) -> list[tuple[SurfaceConfiguration, Divisor]]:
    return list(itertools.islice(sample_random(spec), count))
