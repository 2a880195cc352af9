"""Verdicts built from twisted Alexander polynomials.

``fiber_check`` searches finite quotients for a certificate that the class
``phi`` is not fibered: a twisted ``delta1`` that vanishes, or an integral
``delta1`` whose top coefficient is not ``±1``. It never concludes that a class
*is* fibered.

``ribbon_screen`` tests whether ``K1 >= K0`` (a ribbon concordance from K1
down to K0) is compatible with the polynomials: ``delta1(K0)`` must divide
``delta1(K1)`` for the trivial representation, which always extends over the
concordance exterior. Catalog fiberedness flags add the transfer argument: if
``K1`` is fibered then so is ``K0``.
"""

from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .errors import BudgetExhausted, Unavailable
from .finite_reps import (
    Budget,
    HomAssignment,
    Representation,
    dedupe,
    enumerate_homs,
    image_subgroup,
    quotient_key,
    regular_representation,
    trivial_representation,
)
from .laurent import LaurentPoly, canonicalize_q, divides, is_monic, to_json as poly_json
from .presentation import Presentation
from .twisted import TwistedPolyReport, assemble, delta1_q, twisted_report, wada

log = logging.getLogger(__name__)

DEGREE_CAVEAT = (
    "informational only: a twisted polynomial of the upper knot can be zero, "
    "in which case it bounds nothing, so the degree comparison never decides the verdict"
)
CONDITIONAL = "conditional: assumes the pair is induced from a representation of the cobordism"


class FiberStatus(str, Enum):
    NONFIBERED_CERTIFIED = "NONFIBERED_CERTIFIED"
    NO_OBSTRUCTION_FOUND = "NO_OBSTRUCTION_FOUND"
    BUDGET_EXHAUSTED = "BUDGET_EXHAUSTED"


@dataclass(frozen=True)
class Certificate:
    hom: HomAssignment | None
    rep: Representation
    reason: str  # "delta1-zero" | "delta1-nonmonic"
    report: TwistedPolyReport

    def to_json(self) -> dict:
        return {"rep": self.rep.to_json(), "reason": self.reason, "report": self.report.to_json()}


@dataclass
class DegreeLog:
    degree: int
    hom_count: int
    tested: int = 0
    skipped_large: int = 0
    repeated_quotients: int = 0
    reports: list[TwistedPolyReport] = field(default_factory=list)

    def to_json(self, verbose: bool = False) -> dict:
        d = {
            "degree": self.degree,
            "homCount": self.hom_count,
            "tested": self.tested,
            "repeatedQuotients": self.repeated_quotients,
            "skippedLarge": self.skipped_large,
        }
        if verbose:
            d["reports"] = [r.to_json() for r in self.reports]
        return d


@dataclass
class FiberVerdict:
    status: FiberStatus
    certificate: Certificate | None = None
    tested: list[DegreeLog] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_json(self, verbose: bool = False) -> dict:
        d = {
            "status": self.status.value,
            "certificate": None if self.certificate is None else self.certificate.to_json(),
            "tested": [g.to_json(verbose) for g in self.tested],
        }
        if self.notes:
            d["notes"] = list(self.notes)
        return d


def _is_unknot_exterior(P: Presentation) -> bool:
    return len(P.generators) == 1 and all(len(r) == 0 for r in P.relators)


def _reason(report: TwistedPolyReport) -> str | None:
    if report.delta1_zero:
        return "delta1-zero"
    if report.monic is False and not report.content_anomaly:
        return "delta1-nonmonic"
    return None


def _job(args):
    P, h, deadline_secs = args
    budget = Budget(deadline_secs)
    G = image_subgroup(h)
    rep = regular_representation(G, h)
    return twisted_report(P, rep, budget.check)


def replay(P: Presentation, cert: Certificate) -> None:
    """Recheck a certificate from scratch along a different route.

    Vanishing is rechecked with the Wada determinant when available (else by
    rebuilding the complex); non-monicness by recomputing delta1 over Q and
    comparing with the integral normalization.
    """
    if cert.hom is not None:
        h = cert.hom
        rep = regular_representation(image_subgroup(h), h)
    else:
        rep = cert.rep
    tc = assemble(P, rep)
    if cert.reason == "delta1-zero":
        try:
            num, _ = wada(tc)
        except Unavailable:
            d1, free_rank = delta1_q(tc)
            ok = not d1 and free_rank > 0
        else:
            ok = not num
        if not ok:
            raise AssertionError("replay failed: delta1 does not vanish")
    elif cert.reason == "delta1-nonmonic":
        d1, _ = delta1_q(tc)
        z = cert.report.delta1_z
        if not d1 or z is None or canonicalize_q(d1) != canonicalize_q(z):
            raise AssertionError("replay failed: integral delta1 does not match")
        if is_monic(z) or cert.report.content_anomaly:
            raise AssertionError("replay failed: delta1 is monic")
    else:
        raise ValueError(f"unknown certificate reason {cert.reason!r}")


def fiber_check(
    P: Presentation,
    max_degree: int = 5,
    budget_secs: float | None = None,
    max_dim: int | None = None,
    jobs: int = 1,
    meridional: bool = True,
    keep_reports: bool = True,
) -> FiberVerdict:
    """Search quotients onto subgroups of S_1..S_max_degree for a certificate.

    Each quotient is tested through its left regular representation, after
    removing conjugate homomorphisms and homomorphisms with an already tested
    kernel. Images larger than ``max_dim`` are skipped and counted.
    """
    report = P.validate()
    if not report.ok:
        raise ValueError("invalid presentation: " + "; ".join(report.violations))
    if budget_secs is None and os.environ.get("TAP_BUDGET_SECS"):
        budget_secs = float(os.environ["TAP_BUDGET_SECS"])
    budget = Budget(budget_secs)
    verdict = FiberVerdict(FiberStatus.NO_OBSTRUCTION_FOUND)

    if _is_unknot_exterior(P):
        rep = trivial_representation(P)
        r = twisted_report(P, rep)
        verdict.tested.append(DegreeLog(1, 1, 1, reports=[r]))
        verdict.notes.append("solid torus (unknot exterior) is excluded from the monicness criterion; no certificate possible")
        return verdict
    if P.source not in ("braid", "connected-sum"):
        verdict.notes.append("presentation invariant: no claim is made about a 3-manifold")

    seen: set = set()
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for n in range(1, max_degree + 1):
            try:
                homs = enumerate_homs(P, n, meridional=meridional, budget=budget)
                homs = dedupe(homs)
            except BudgetExhausted:
                verdict.status = FiberStatus.BUDGET_EXHAUSTED
                verdict.notes.append(f"budget exhausted while enumerating homomorphisms to S_{n}")
                return verdict
            entry = DegreeLog(n, len(homs))
            verdict.tested.append(entry)
            log.debug("degree %d: %d homomorphism classes", n, len(homs))
            todo = []
            for h in homs:
                key = quotient_key(h)
                if key in seen:
                    entry.repeated_quotients += 1
                    continue
                seen.add(key)
                if max_dim is not None and h.image_order > max_dim:
                    entry.skipped_large += 1
                    continue
                todo.append(h)
            # cheap quotients first, so a large one cannot starve the rest of the budget
            todo.sort(key=lambda h: h.image_order)
            try:
                if pool is not None:
                    left = None if budget.deadline is None else max(budget.deadline - time.monotonic(), 0)
                    results = list(pool.map(_job, [(P, h, left) for h in todo]))
                else:
                    results = (_job_local(P, h, budget) for h in todo)
                for h, r in zip(todo, results):
                    entry.tested += 1
                    if keep_reports:
                        entry.reports.append(r)
                    reason = _reason(r)
                    if reason is None and r.content_anomaly:
                        verdict.notes.append(
                            f"degree {n}: content ratio {r.content_ratio} is not 1, so a non-monic "
                            "integral lift was not used as a certificate"
                        )
                    if reason is not None:
                        cert = Certificate(h, r.rep, reason, r)
                        replay(P, cert)
                        verdict.status = FiberStatus.NONFIBERED_CERTIFIED
                        verdict.certificate = cert
                        return verdict
            except BudgetExhausted:
                verdict.status = FiberStatus.BUDGET_EXHAUSTED
                verdict.notes.append(f"budget exhausted while testing quotients at degree {n}")
                return verdict
    finally:
        if pool is not None:
            pool.shutdown()
    skipped = sum(g.skipped_large for g in verdict.tested)
    if skipped:
        verdict.notes.append(f"{skipped} quotient(s) larger than {max_dim} were not tested")
    verdict.notes.append("no certificate found within the search bounds; this does not mean the class is fibered")
    return verdict


def _job_local(P: Presentation, h: HomAssignment, budget: Budget) -> TwistedPolyReport:
    budget.check()
    G = image_subgroup(h)
    return twisted_report(P, regular_representation(G, h), budget.check)


# -- ribbon concordance screen ---------------------------------------------------


class RibbonVerdict(str, Enum):
    OBSTRUCTED = "OBSTRUCTED"
    CONSISTENT = "CONSISTENT"


class PhiMismatch(ValueError):
    pass


@dataclass
class RibbonReport:
    lower: str
    upper: str
    lower_delta: LaurentPoly
    upper_delta: LaurentPoly
    divides: bool
    degree_ok: bool | None
    fibered_transfer: str | None
    verdict: RibbonVerdict
    conditional: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "direction": {
                "lower": self.lower,
                "upper": self.upper,
                "question": f"is {self.upper} >= {self.lower} obstructed?",
            },
            "divisibility": {
                "divides": self.divides,
                "lower": poly_json(self.lower_delta),
                "upper": poly_json(self.upper_delta),
            },
            "degreeComparison": {"lowerLeqUpper": self.degree_ok, "note": DEGREE_CAVEAT},
            "fiberedTransfer": self.fibered_transfer,
            "conditional": self.conditional,
            "verdict": self.verdict.value,
            "notes": self.notes,
        }


def _meridional(P: Presentation) -> bool:
    return all(v == 1 for v in P.phi)


def ribbon_screen(
    P0: Presentation,
    P1: Presentation,
    upper_fibered: bool | None = None,
    lower_verdict: FiberVerdict | None = None,
    matched_reps: Sequence[tuple[Representation, Representation]] = (),
    assume_phi_matched: bool = False,
) -> RibbonReport:
    """Screen ``P1 >= P0`` (lower ``P0``, upper ``P1``) for an obstruction."""
    for P in (P0, P1):
        rep = P.validate()
        if not rep.ok:
            raise ValueError("invalid presentation: " + "; ".join(rep.violations))
    if not assume_phi_matched:
        if not (_meridional(P0) and _meridional(P1)):
            raise PhiMismatch("phi must be 1 on every meridian of both links (or assume_phi_matched)")
        c0, c1 = P0.num_components, P1.num_components
        if c0 is not None and c1 is not None and c0 != c1:
            raise PhiMismatch(f"component counts differ: {c0} vs {c1}")
    lower = P0.name or "K0"
    upper = P1.name or "K1"
    r0 = twisted_report(P0, trivial_representation(P0))
    r1 = twisted_report(P1, trivial_representation(P1))
    ok = divides(r0.delta1, r1.delta1)
    degree_ok = None
    if r0.delta1 and r1.delta1:
        degree_ok = r0.delta1.span <= r1.delta1.span
    notes = []
    if not r1.delta1:
        notes.append("upper polynomial vanishes; divisibility is automatic")
    transfer = None
    transfer_fires = False
    if upper_fibered and lower_verdict is not None and lower_verdict.status == FiberStatus.NONFIBERED_CERTIFIED:
        transfer_fires = True
        transfer = f"{upper} is fibered but {lower} is certified nonfibered; a ribbon concordance would make {lower} fibered"
    elif upper_fibered:
        transfer = f"{upper} is fibered, so {upper} >= {lower} would force {lower} to be fibered"

    conditional = []
    for a0, a1 in matched_reps:
        q0 = twisted_report(P0, a0)
        q1 = twisted_report(P1, a1)
        conditional.append(
            {
                "label": CONDITIONAL,
                "divides": divides(q0.delta1, q1.delta1),
                "lower": poly_json(q0.delta1),
                "upper": poly_json(q1.delta1),
            }
        )
    verdict = RibbonVerdict.OBSTRUCTED if (not ok or transfer_fires) else RibbonVerdict.CONSISTENT
    if verdict is RibbonVerdict.CONSISTENT:
        notes.append("no obstruction found; this does not show that a ribbon concordance exists")
    return RibbonReport(lower, upper, r0.delta1, r1.delta1, ok, degree_ok, transfer, verdict, conditional, notes)


def genus_degree_report(report: TwistedPolyReport, k: int | None = None) -> dict:
    """Degree span of delta1 and, for a 1-dimensional representation, the
    classical bound ``genus >= span / 2``. Informational only."""
    if report.delta1_zero:
        raise Unavailable("delta1 = 0")
    k = report.rep.dimension if k is None else k
    span = report.delta1.span
    out = {"degreeSpan": span, "dimension": k, "informational": True}
    if k == 1:
        out["genusLowerBound"] = (span + 1) // 2
    return out
