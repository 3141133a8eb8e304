"""Exact intersection pairing and adjunction genus.

Arithmetic here runs on Python integers, so it cannot overflow; the int64
kernels in :mod:`curveconn._kernels` guard their own range.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import Divisor, _same_config


@dataclass(frozen=True)
class GenusReport:
    divisor: Divisor
    self_int: int
    k_degree: int
    pa: int

    def __post_init__(self):
        assert 2 * self.pa - 2 == self.k_degree + self.self_int

    def to_dict(self) -> dict:
        return {"divisor": list(self.divisor.mult), "self_int": self.self_int,
                "k_degree": self.k_degree, "pa": self.pa}


def intersect(a: Divisor, b: Divisor) -> int:
    """Bilinear pairing ``a^T M b``."""
    _same_config(a, b)
    M = a.config.M
    total = 0
    for i, ai in enumerate(a.mult):
        if ai:
            row = M[i]
            total += ai * sum(row[j] * bj for j, bj in enumerate(b.mult) if bj)
    return total


def k_degree(d: Divisor) -> int:
    return sum(ki * mi for ki, mi in zip(d.config.k, d.mult))


def arithmetic_genus(d: Divisor) -> GenusReport:
    """Arithmetic genus from adjunction: ``2 pa - 2 = K.D + D^2``."""
    dd = intersect(d, d)
    kd = k_degree(d)
    # parity of dd + kd follows from the per-component parity invariant
    return GenusReport(divisor=d, self_int=dd, k_degree=kd, pa=1 + (dd + kd) // 2)


def pa(d: Divisor) -> int:
    return arithmetic_genus(d).pa


def additivity_check(d1: Divisor, d2: Divisor) -> tuple[int, int, bool]:
    """Compare ``pa(d1+d2)`` with ``pa(d1) + pa(d2) - 1 + d1.d2``."""
    lhs = pa(d1 + d2)
    rhs = pa(d1) + pa(d2) - 1 + intersect(d1, d2)
    return lhs, rhs, lhs == rhs
