"""Numerical data of a curve configuration and effective divisors on it.

A configuration is the intersection matrix of ``n`` irreducible curves on a
smooth surface together with the canonical degrees ``K.G_i``.  Everything
downstream works with integer vectors over this basis.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


class ConfigurationError(ValueError):
    """Raised when configuration or divisor data violates an invariant.

    ``kind`` is a short machine tag (``"asymmetric"``, ``"parity"``, ...)
    and ``where`` the offending index or index pair.
    """

    def __init__(self, kind: str, message: str, where=None):
        super().__init__(f"{kind}: {message}")
        self.kind = kind
        self.where = where


@dataclass(frozen=True)
class SurfaceConfiguration:
    n: int
    names: tuple[str, ...]
    M: tuple[tuple[int, ...], ...]
    k: tuple[int, ...]
    snc_faithful: bool = False
    name: str = ""
    _arrays: dict = field(default_factory=dict, init=False, repr=False,
                          compare=False, hash=False)

    def self_int(self, i: int) -> int:
        return self.M[i][i]

    def matrix(self) -> np.ndarray:
        """Read-only int64 copy of ``M`` for the numeric kernels."""
        if "M" not in self._arrays:
            try:
                arr = np.array(self.M, dtype=np.int64).reshape(self.n, self.n)
            except OverflowError as exc:
                raise OverflowError("intersection matrix does not fit in int64") from exc
            arr.setflags(write=False)
            self._arrays["M"] = arr
        return self._arrays["M"]

    def kvec(self) -> np.ndarray:
        if "k" not in self._arrays:
            try:
                arr = np.array(self.k, dtype=np.int64)
            except OverflowError as exc:
                raise OverflowError("canonical degrees do not fit in int64") from exc
            arr.setflags(write=False)
            self._arrays["k"] = arr
        return self._arrays["k"]

    def divisor(self, mult: Iterable[int]) -> "Divisor":
        return Divisor(self, tuple(int(m) for m in mult))

    def component(self, i: int) -> "Divisor":
        _check_index(self, i)
        return self.divisor(1 if j == i else 0 for j in range(self.n))

    def restrict(self, indices: Sequence[int]) -> "SurfaceConfiguration":
        """Sub-configuration on the given components, in the given order."""
        idx = list(indices)
        return SurfaceConfiguration(
            n=len(idx),
            names=tuple(self.names[i] for i in idx),
            M=tuple(tuple(self.M[i][j] for j in idx) for i in idx),
            k=tuple(self.k[i] for i in idx),
            snc_faithful=self.snc_faithful,
            name=self.name,
        )

    def to_dict(self) -> dict:
        inters = [[i, j, self.M[i][j]]
                  for i in range(self.n) for j in range(i + 1, self.n)
                  if self.M[i][j] != 0]
        return {
            "name": self.name,
            "snc_faithful": self.snc_faithful,
            "components": [{"name": nm, "self": self.M[i][i], "k": self.k[i]}
                           for i, nm in enumerate(self.names)],
            "intersections": inters,
        }


@dataclass(frozen=True)
class Divisor:
    """Non-zero effective divisor: non-negative multiplicities over ``config``."""

    config: SurfaceConfiguration = field(repr=False)
    mult: tuple[int, ...]

    def __post_init__(self):
        if len(self.mult) != self.config.n:
            raise ConfigurationError(
                "dimension", f"divisor has {len(self.mult)} entries, configuration has {self.config.n}")
        for i, m in enumerate(self.mult):
            if m < 0:
                raise ConfigurationError("negative", f"multiplicity {m} at index {i}", where=i)
        if not any(self.mult):
            raise ConfigurationError("zero", "divisor must be non-zero")

    def __add__(self, other: "Divisor") -> "Divisor":
        _same_config(self, other)
        return Divisor(self.config, tuple(a + b for a, b in zip(self.mult, other.mult)))

    def __sub__(self, other: "Divisor") -> "Divisor":
        _same_config(self, other)
        return Divisor(self.config, tuple(a - b for a, b in zip(self.mult, other.mult)))

    def scaled(self, t: int) -> "Divisor":
        return Divisor(self.config, tuple(t * m for m in self.mult))

    def array(self) -> np.ndarray:
        return np.array(self.mult, dtype=np.int64)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, m in enumerate(self.mult) if m > 0)

    @property
    def is_reduced(self) -> bool:
        return all(m <= 1 for m in self.mult)

    def csv(self) -> str:
        return ",".join(str(m) for m in self.mult)

    def __str__(self):
        return "(" + ",".join(str(m) for m in self.mult) + ")"


@dataclass(frozen=True)
class Decomposition:
    a: Divisor
    b: Divisor

    def __post_init__(self):
        _same_config(self.a, self.b)

    @property
    def whole(self) -> Divisor:
        return self.a + self.b

    def to_dict(self) -> dict:
        return {"a": list(self.a.mult), "b": list(self.b.mult)}


def _check_index(cfg: SurfaceConfiguration, i: int) -> None:
    if not 0 <= i < cfg.n:
        raise IndexError(f"component index {i} out of range for n={cfg.n}")


def _same_config(x: Divisor, y: Divisor) -> None:
    if x.config is not y.config and x.config != y.config:
        raise ConfigurationError("mismatch", "divisors live on different configurations")


def validate_configuration(raw) -> SurfaceConfiguration:
    """Build a validated configuration from a mapping or an existing configuration.

    Accepted mapping keys: ``n`` (optional), ``M``, ``k``, ``names``,
    ``snc_faithful``, ``name``.  Errors carry the offending index pair.
    """
    if isinstance(raw, SurfaceConfiguration):
        raw = {"n": raw.n, "names": raw.names, "M": raw.M, "k": raw.k,
               "snc_faithful": raw.snc_faithful, "name": raw.name}
    try:
        M = [[int(v) for v in row] for row in raw["M"]]
        k = [int(v) for v in raw["k"]]
    except KeyError as exc:
        raise ConfigurationError("missing", f"field {exc.args[0]!r} is required") from None
    except (TypeError, ValueError) as exc:
        raise ConfigurationError("type", f"non-integer entry ({exc})") from None
    n = int(raw.get("n", len(M)))
    if n < 1:
        raise ConfigurationError("shape", "a configuration needs at least one component")
    if len(M) != n or any(len(row) != n for row in M):
        raise ConfigurationError("shape", f"M must be {n}x{n}")
    if len(k) != n:
        raise ConfigurationError("shape", f"k must have {n} entries")
    names = raw.get("names") or [f"G{i}" for i in range(n)]
    if len(names) != n:
        raise ConfigurationError("shape", f"names must have {n} entries")

    for i in range(n):
        for j in range(i + 1, n):
            if M[i][j] != M[j][i]:
                raise ConfigurationError(
                    "asymmetric", f"M[{i}][{j}]={M[i][j]} but M[{j}][{i}]={M[j][i]}", where=(i, j))
            if M[i][j] < 0:
                raise ConfigurationError(
                    "negative", f"M[{i}][{j}]={M[i][j]} < 0 for distinct components", where=(i, j))
    for i in range(n):
        if (M[i][i] + k[i]) % 2:
            raise ConfigurationError(
                "parity", f"M[{i}][{i}] + k[{i}] = {M[i][i] + k[i]} is odd", where=(i, i))
        g = (M[i][i] + k[i]) // 2 + 1
        if g < 0:
            raise ConfigurationError(
                "genus", f"component {i} would have arithmetic genus {g} < 0", where=(i, i))

    return SurfaceConfiguration(
        n=n,
        names=tuple(str(s) for s in names),
        M=tuple(tuple(row) for row in M),
        k=tuple(k),
        snc_faithful=bool(raw.get("snc_faithful", False)),
        name=str(raw.get("name", "")),
    )


def component_genus(cfg: SurfaceConfiguration, i: int) -> int:
    _check_index(cfg, i)
    return (cfg.M[i][i] + cfg.k[i]) // 2 + 1


def is_subdivisor(z1: Divisor, z2: Divisor) -> bool:
    _same_config(z1, z2)
    return all(a <= b for a, b in zip(z1.mult, z2.mult))


def support_and_reducedness(z: Divisor) -> tuple[frozenset[int], bool]:
    return frozenset(z.support), z.is_reduced


# --- JSON documents -------------------------------------------------------

def configuration_from_document(doc: dict) -> SurfaceConfiguration:
    """Parse the configuration JSON document format.

    ``{"name", "snc_faithful", "components": [{"name", "self", "k"}],
    "intersections": [[i, j, v], ...]}``; unlisted pairs are 0.
    """
    if not isinstance(doc, dict):
        raise ConfigurationError("type", "configuration document must be a JSON object")
    comps = doc.get("components")
    if not isinstance(comps, list) or not comps:
        raise ConfigurationError("missing", "'components' must be a non-empty list")
    n = len(comps)
    M = [[0] * n for _ in range(n)]
    seen = {}
    for ci, c in enumerate(comps):
        if not isinstance(c, dict) or "self" not in c or "k" not in c:
            raise ConfigurationError("missing", f"component {ci} needs 'self' and 'k'", where=ci)
        M[ci][ci] = c["self"]
    for entry in doc.get("intersections", []):
        if not isinstance(entry, (list, tuple)) or len(entry) != 3:
            raise ConfigurationError("shape", f"intersection entry {entry!r} must be [i, j, v]")
        i, j, v = entry
        if not (isinstance(i, int) and isinstance(j, int)) or not (0 <= i < n and 0 <= j < n):
            raise ConfigurationError("index", f"intersection indices {i},{j} out of range", where=(i, j))
        if i == j:
            raise ConfigurationError("index", f"self-intersection of {i} belongs in 'components'", where=(i, j))
        key = (min(i, j), max(i, j))
        if key in seen and seen[key] != v:
            raise ConfigurationError("asymmetric", f"conflicting values for pair {key}", where=key)
        seen[key] = v
        M[i][j] = M[j][i] = v
    return validate_configuration({
        "M": M,
        "k": [c["k"] for c in comps],
        "names": [c.get("name", f"G{ci}") for ci, c in enumerate(comps)],
        "snc_faithful": doc.get("snc_faithful", False),
        "name": doc.get("name", ""),
    })


def load_configuration(path) -> tuple[SurfaceConfiguration, Divisor | None]:
    """Read a configuration file; also returns its embedded divisor, if any."""
    with open(path) as fh:
        doc = json.load(fh)
    cfg = configuration_from_document(doc)
    div = None
    if isinstance(doc, dict) and "divisor" in doc:
        div = divisor_from_document(cfg, doc["divisor"])
    return cfg, div


def parse_divisor(cfg: SurfaceConfiguration, text: str) -> Divisor:
    """Parse a comma-separated multiplicity string such as ``"1,0,2"``."""
    try:
        mult = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise ConfigurationError("type", f"cannot parse divisor {text!r}") from None
    return cfg.divisor(mult)


def divisor_from_document(cfg: SurfaceConfiguration, doc) -> Divisor:
    if isinstance(doc, dict):
        doc = doc.get("mult")
    if not isinstance(doc, list) or not all(isinstance(m, int) for m in doc):
        raise ConfigurationError("type", "divisor document must be {\"mult\": [ints]}")
    return cfg.divisor(doc)
