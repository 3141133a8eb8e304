"""Subcurves, the reduced-curve cohomology shadow, and fixed-part reports.

Only numerical consequences are checked here.  Whether a curve really sits
in the fixed part of the canonical system is an assertion made by the
caller; a failed check means the numbers cannot come from such a curve.

For a reduced curve whose matrix counts transverse intersections of smooth
components, ``h^0(O)`` is the number of connected components of its dual
graph, and ``h^1(O)`` then follows from ``h^0 - h^1 = 1 - pa``.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass, field
from typing import Iterator


from . import _kernels
from .checks import FAIL, NOT_APPLICABLE, PASS, Check
from .config import Decomposition, Divisor, component_genus, is_subdivisor
from .connectivity import (DEFAULT_BUDGET, BudgetExceeded, EnumerationBudget,
                           PreconditionError, conn_value, connectedness_number,
                           digits_of)
from .intersection import intersect, pa


class ShadowError(ValueError):
    """The reduced-curve shadow does not apply to this input."""


# --- subcurves --------------------------------------------------------------

def _subcurve_count(z: Divisor, budget: EnumerationBudget) -> int:
    total = math.prod(m + 1 for m in z.mult) - 1
    if total > budget.max_candidates:
        raise BudgetExceeded(total, budget.max_candidates, "subcurves")
    return total


def enumerate_subcurves(z: Divisor,
                        budget: EnumerationBudget = DEFAULT_BUDGET) -> Iterator[Divisor]:
    """Every ``0 < z' <= z`` once, in reverse-lexicographic order."""
    total = _subcurve_count(z, budget)
    radices = [m + 1 for m in z.mult]
    for t in range(1, total + 1):
        yield z.config.divisor(digits_of(t, radices))


@dataclass(frozen=True)
class GenusSpectrum:
    max_pa: int
    witness: Divisor
    all_nonpositive: bool

    def to_dict(self) -> dict:
        return {"max_pa": self.max_pa, "witness": list(self.witness.mult),
                "all_nonpositive": self.all_nonpositive}


def genus_spectrum(z: Divisor, budget: EnumerationBudget = DEFAULT_BUDGET, *,
                   backend: str | None = None) -> GenusSpectrum:
    """Largest arithmetic genus over all subcurves of ``z``, first maximiser wins."""
    total = _subcurve_count(z, budget)
    cfg = z.config
    M, k, dv = cfg.matrix(), cfg.kvec(), z.array()
    _kernels.check_range(M, k, dv)
    kernel = {None: _kernels.max_genus, "numpy": _kernels.max_genus_numpy,
              "numba": _kernels.max_genus_numba}[backend]
    val, idx = _kernels.scan(kernel, (M, k, dv + 1), 1, total, operator.gt)
    max_pa = 1 + val // 2
    return GenusSpectrum(max_pa, cfg.divisor(digits_of(idx, [m + 1 for m in z.mult])),
                         max_pa <= 0)


def prop_go_check(z: Divisor, budget: EnumerationBudget = DEFAULT_BUDGET) -> Check:
    """If every subcurve has ``pa <= 0``: ``pa(z) = 0`` exactly when z is 1-connected."""
    spec = genus_spectrum(z, budget)
    if not spec.all_nonpositive:
        return Check("prop_go", NOT_APPLICABLE,
                     f"hypothesis not satisfied: subcurve {spec.witness} has pa {spec.max_pa}",
                     witness=list(spec.witness.mult), values={"max_pa": spec.max_pa})
    genus = pa(z)
    res = connectedness_number(z, budget)
    one_conn = res.conn >= 1
    values = {"pa": genus, "conn": "infinity" if res.conn == math.inf else res.conn}
    if (genus == 0) == one_conn:
        return Check("prop_go", PASS,
                     f"pa = {genus}, conn = {values['conn']}: both sides "
                     f"{'true' if one_conn else 'false'}", values=values)
    witness = [list(res.argmin.a.mult), list(res.argmin.b.mult)] if res.argmin else list(z.mult)
    return Check("prop_go", FAIL,
                 f"pa = {genus} but conn = {values['conn']}", witness=witness, values=values)


# --- reduced shadow -----------------------------------------------------------

def _require_shadow(z: Divisor) -> None:
    if not z.config.snc_faithful:
        raise ShadowError("configuration is not flagged snc_faithful")
    if not z.is_reduced:
        raise ShadowError(f"{z} is not reduced")


def _graph_components(cfg, vertices) -> list[list[int]]:
    vertices = sorted(vertices)
    left = set(vertices)
    comps = []
    for v in vertices:
        if v not in left:
            continue
        left.discard(v)
        comp, stack = [v], [v]
        while stack:
            u = stack.pop()
            for w in list(left):
                if cfg.M[u][w] >= 1:
                    left.discard(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def reduced_h0(z: Divisor) -> int:
    _require_shadow(z)
    return len(_graph_components(z.config, z.support))


def reduced_h1(z: Divisor) -> int:
    return reduced_h0(z) - 1 + pa(z)


def lemma_b_shadow_check(d: Divisor, budget: EnumerationBudget = DEFAULT_BUDGET) -> Check:
    """``h^0(O_a) <= a.(d-a)`` for every reduced proper subcurve of 1-connected ``d``."""
    if not d.config.snc_faithful:
        raise ShadowError("configuration is not flagged snc_faithful")
    if conn_value(d, budget) < 1:
        raise PreconditionError(f"{d} is not 1-connected")
    supp = d.support
    total = 2 ** len(supp) - 1
    if total > budget.max_candidates:
        raise BudgetExceeded(total, budget.max_candidates, "reduced subcurves")
    M, n = d.config.M, d.config.n
    Md = [sum(M[i][j] * d.mult[j] for j in range(n)) for i in supp]
    # bit p of a mask stands for component supp[p]
    adj = [sum(1 << q for q, j in enumerate(supp) if q != p and M[i][j] >= 1)
           for p, i in enumerate(supp)]
    whole = total if d.is_reduced else -1
    examined = 0
    for bits in range(1, total + 1):
        if bits == whole:
            continue
        examined += 1
        members = [p for p in range(len(supp)) if bits >> p & 1]
        h0 = _mask_components(adj, bits)
        b = sum(Md[p] for p in members) - sum(M[supp[p]][supp[q]] for p in members for q in members)
        if h0 > b:
            mult = [0] * n
            for p in members:
                mult[supp[p]] = 1
            return Check("lemma_b", FAIL, f"h0({tuple(mult)}) = {h0} > a.(d-a) = {b}",
                         witness=mult, values={"h0": h0, "pairing": b})
    return Check("lemma_b", PASS, f"{examined} reduced subcurves checked",
                 values={"examined": examined})


def _mask_components(adj: list[int], mask: int) -> int:
    count = 0
    left = mask
    while left:
        frontier = left & -left
        seen = 0
        while frontier:
            seen |= frontier
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= adj[low.bit_length() - 1]
                f ^= low
            frontier = nxt & mask & ~seen
        left &= ~seen
        count += 1
    return count


def lemma_dec_reduced_witness(a: Divisor) -> Decomposition:
    """Split a disconnected reduced curve into one connected piece and the rest.

    The piece is the connected component holding the smallest support index;
    both pairings ``A1.A2`` and ``G.A2`` (``G`` in ``A1``) are then zero.
    """
    _require_shadow(a)
    comps = _graph_components(a.config, a.support)
    if len(comps) < 2:
        raise ShadowError("no identically-vanishing section exists in the reduced shadow "
                          f"(h0 = {len(comps)})")
    first = set(comps[0])
    n = a.config.n
    a1 = a.config.divisor(1 if i in first else 0 for i in range(n))
    return Decomposition(a1, a - a1)


# --- chain decompositions ---------------------------------------------------

@dataclass(frozen=True)
class ChainDecomposition:
    pieces: tuple[Divisor, ...]
    d: Divisor
    a: Divisor

    def violations(self, budget: EnumerationBudget = DEFAULT_BUDGET) -> list[str]:
        """Re-check every chain invariant from scratch; empty list when sound."""
        out = []
        if not self.pieces:
            return ["empty chain"]
        total = self.pieces[0]
        for p in self.pieces[1:]:
            total = total + p
        if total.mult != self.a.mult:
            out.append(f"pieces sum to {total}, expected {self.a}")
        rest = self.d - self.a
        for i, p in enumerate(self.pieces):
            if intersect(p, rest) != 1:
                out.append(f"B{i + 1}.(D-A) = {intersect(p, rest)}")
            if connectedness_number(p, budget).conn < 1:
                out.append(f"B{i + 1} = {p} is not 1-connected")
            if i < len(self.pieces) - 1:
                tail = self.pieces[i + 1]
                for q in self.pieces[i + 2:]:
                    tail = tail + q
                if intersect(p, tail) != 0:
                    out.append(f"B{i + 1}.(tail) = {intersect(p, tail)}")
                disjoint = not set(p.support) & set(tail.support)
                if not (is_subdivisor(p, tail) or disjoint):
                    out.append(f"B{i + 1} neither below nor disjoint from its tail")
        return out

    def to_dict(self) -> dict:
        return {"pieces": [list(p.mult) for p in self.pieces],
                "d": list(self.d.mult), "a": list(self.a.mult)}


def chain_decomposition_search(d: Divisor, a: Divisor,
                               budget: EnumerationBudget = DEFAULT_BUDGET
                               ) -> ChainDecomposition | None:
    """Depth-first search for ``a = B1 + ... + Bb`` with ``b = a.(d-a)``.

    Each piece pairs to 1 with ``d - a`` and is 1-connected; a piece that is
    not last pairs to 0 with the remaining tail and is either below it or
    disjoint from it.  Candidates are tried in reverse-lexicographic order
    and the first complete chain is returned.
    """
    if not (is_subdivisor(a, d) and a.mult != d.mult):
        raise PreconditionError(f"{a} must be a proper subcurve of {d}")
    rest = d - a
    b = intersect(a, rest)
    if b < 1:
        raise PreconditionError(f"a.(d-a) = {b} < 1")
    if conn_value(d, budget) < 1:
        raise PreconditionError(f"{d} is not 1-connected")

    cfg = d.config
    Mrest = [sum(cfg.M[i][j] * rest.mult[j] for j in range(cfg.n)) for i in range(cfg.n)]
    examined = 0
    dead: set[tuple[int, ...]] = set()

    def one_connected(mult) -> bool:
        return conn_value(cfg.divisor(mult), budget) >= 1

    def search(tail: tuple[int, ...]) -> list[tuple[int, ...]] | None:
        nonlocal examined
        if tail in dead:
            return None
        radices = [m + 1 for m in tail]
        for t in range(1, math.prod(radices)):
            examined += 1
            if examined > budget.max_candidates:
                raise BudgetExceeded(examined, budget.max_candidates, "chain candidates")
            piece = digits_of(t, radices)
            if sum(p * r for p, r in zip(piece, Mrest)) != 1:
                continue
            if piece == tail:
                if one_connected(piece):
                    return [piece]
                continue
            remainder = tuple(x - y for x, y in zip(tail, piece))
            if intersect(cfg.divisor(piece), cfg.divisor(remainder)) != 0:
                continue
            below = all(x <= y for x, y in zip(piece, remainder))
            disjoint = not any(x and y for x, y in zip(piece, remainder))
            if not (below or disjoint) or not one_connected(piece):
                continue
            found = search(remainder)
            if found is not None:
                return [piece] + found
        dead.add(tail)
        return None

    found = search(a.mult)
    if found is None:
        return None
    return ChainDecomposition(tuple(cfg.divisor(p) for p in found), d, a)


# --- fixed-part report ------------------------------------------------------

CLAUSES = ("d_1_connected", "i_rational_components", "ii_subcurve_genus",
           "iii_pa_zero_iff_1_connected", "iv_h0_complement", "furthermore_chain")

LIMITATION = ("numerical shadow only: the fixed-part hypothesis is asserted by the user; "
              "'O_B(-tail) trivial' is checked as degree zero; h0 comparisons need a "
              "reduced complement on an snc_faithful configuration")


@dataclass
class ConsistencyReport:
    d: Divisor
    z: Divisor
    checks: list[Check] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return not any(c.failed for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def verdict(self) -> str:
        if self.consistent:
            return "consistent: no numerical obstruction to Z lying in the fixed part of |w_D|"
        failed = ", ".join(c.name for c in self.checks if c.failed)
        return f"inconsistent: Z cannot be in the fixed part of |w_D| (failed: {failed})"

    def to_dict(self) -> dict:
        return {"d": list(self.d.mult), "z": list(self.z.mult),
                "consistent": self.consistent, "verdict": self.verdict(),
                "limitation": LIMITATION,
                "checks": [c.to_dict() for c in self.checks]}

    @classmethod
    def from_dict(cls, cfg, doc: dict) -> "ConsistencyReport":
        return cls(cfg.divisor(doc["d"]), cfg.divisor(doc["z"]),
                   [Check.from_dict(c) for c in doc["checks"]])


def _ii_check(z: Divisor, budget: EnumerationBudget) -> Check:
    spec = genus_spectrum(z, budget)
    values = {"max_pa": spec.max_pa}
    if not spec.all_nonpositive:
        return Check("ii_subcurve_genus", FAIL,
                     f"subcurve {spec.witness} has pa {spec.max_pa} > 0",
                     witness=list(spec.witness.mult), values=values)
    if not z.config.snc_faithful:
        return Check("ii_subcurve_genus", PASS,
                     "all subcurves have pa <= 0; h1 shadow skipped (not snc_faithful)",
                     values=values)
    supp = z.support
    for bits in range(1, 2 ** len(supp)):
        mult = [0] * z.config.n
        for pos, i in enumerate(supp):
            if bits >> pos & 1:
                mult[i] = 1
        sub = z.config.divisor(mult)
        h1 = reduced_h1(sub)
        if h1 != 0:
            return Check("ii_subcurve_genus", FAIL, f"reduced subcurve {sub} has h1 = {h1}",
                         witness=mult, values=values)
    return Check("ii_subcurve_genus", PASS,
                 "all subcurves have pa <= 0 and reduced subcurves have h1 = 0",
                 values=values)


def _iv_check(d: Divisor, z: Divisor) -> Check:
    rest = d - z
    predicted = intersect(rest, z) + pa(z)
    values = {"predicted_h0": predicted}
    if predicted < 1:
        return Check("iv_h0_complement", FAIL,
                     f"predicted h0(D-Z) = {predicted} < 1", witness=list(rest.mult),
                     values=values)
    if not (rest.is_reduced and d.config.snc_faithful):
        return Check("iv_h0_complement", NOT_APPLICABLE,
                     f"predicted h0(D-Z) = {predicted}; no reduced shadow to compare",
                     values=values)
    actual = reduced_h0(rest)
    values["reduced_h0"] = actual
    if actual == predicted:
        return Check("iv_h0_complement", PASS,
                     f"predicted h0(D-Z) = {predicted} = reduced h0", values=values)
    return Check("iv_h0_complement", FAIL,
                 f"predicted h0(D-Z) = {predicted} but reduced h0 = {actual}",
                 witness=list(rest.mult), values=values)


def fixed_part_report(d: Divisor, z: Divisor,
                      budget: EnumerationBudget = DEFAULT_BUDGET) -> ConsistencyReport:
    """Check the numerical consequences of ``z`` lying in the fixed part of ``|w_d|``."""
    if not (is_subdivisor(z, d) and z.mult != d.mult):
        raise PreconditionError("z must be a proper subdivisor of d")
    report = ConsistencyReport(d, z)
    res = connectedness_number(d, budget)
    conn = "infinity" if res.conn == math.inf else res.conn
    if res.conn < 1:
        report.checks.append(Check(
            "d_1_connected", FAIL, f"D has connectedness number {conn}; the report needs D 1-connected",
            witness=[list(res.argmin.a.mult), list(res.argmin.b.mult)], values={"conn": conn}))
        for name in CLAUSES[1:]:
            report.checks.append(Check(name, NOT_APPLICABLE, "hypothesis not satisfied: D is not 1-connected"))
        return report
    report.checks.append(Check("d_1_connected", PASS, f"conn(D) = {conn}", values={"conn": conn}))

    bad = [i for i in z.support if component_genus(z.config, i) != 0]
    if bad:
        report.checks.append(Check(
            "i_rational_components", FAIL,
            f"components {bad} of Z have genus {[component_genus(z.config, i) for i in bad]}",
            witness=[int(i in bad) for i in range(z.config.n)]))
    else:
        report.checks.append(Check("i_rational_components", PASS,
                                   "every component of Z has genus 0"))

    report.checks.append(_ii_check(z, budget))

    go = prop_go_check(z, budget)
    go.name = "iii_pa_zero_iff_1_connected"
    report.checks.append(go)

    report.checks.append(_iv_check(d, z))

    genus = pa(z)
    if genus != 0:
        report.checks.append(Check("furthermore_chain", NOT_APPLICABLE,
                                   f"pa(Z) = {genus} != 0", values={"pa": genus}))
    else:
        rest = d - z
        chain = chain_decomposition_search(d, rest, budget)
        b = intersect(rest, z)
        if chain is None:
            report.checks.append(Check("furthermore_chain", FAIL,
                                       f"no chain B1+...+B{b} of D-Z exists",
                                       witness=list(rest.mult), values={"b": b}))
        else:
            report.checks.append(Check("furthermore_chain", PASS,
                                       f"chain of {b} pieces found",
                                       witness=[list(p.mult) for p in chain.pieces],
                                       values={"b": b}))
    return report
