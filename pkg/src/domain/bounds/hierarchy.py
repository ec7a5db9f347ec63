#!/usr/bin/env python
"""Lower-bound hierarchy report: upper >= TLB >= SLB >= DLB_{p, min(p,q)}."""

from __future__ import annotations

import logging
import math
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from src.core.errors import GWError
from src.domain.bounds.lower_bounds import SpaceLike, dlb, slb, tlb, tlb_homogeneous
from src.domain.mm.distortion import distortion_pq
from src.domain.mm.spaces import Coupling, FiniteMMSpace, PqParams
from src.domain.spheres.analytic import QuadratureConfig, SphereSpec
from src.infrastructure.pot import PotClient

logger = logging.getLogger(__name__)

ORDER_TOL = 1e-9


class HierarchyReport(BaseModel):
    model_config = ConfigDict(ser_json_inf_nan="strings")

    pq: PqParams
    dlb: Optional[float] = None
    slb: Optional[float] = None
    tlb: Optional[float] = None
    upper: Optional[float] = None
    ordering_ok: bool = False
    limit_mode: bool = False
    tlb_source: Optional[str] = None
    notes: List[str] = Field(default_factory=list)

    def halves(self) -> Dict[str, Optional[float]]:
        return {
            name: None if value is None else value / 2.0
            for name, value in (("dlb", self.dlb), ("slb", self.slb), ("tlb", self.tlb), ("upper", self.upper))
        }

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "p": _encode_exponent(self.pq.p),
            "q": _encode_exponent(self.pq.q),
            "dlb": self.dlb,
            "slb": self.slb,
            "tlb": self.tlb,
            "ordering_ok": self.ordering_ok,
        }
        if self.upper is not None:
            payload["upper"] = self.upper
        if self.limit_mode:
            payload["limit_mode"] = True
        if self.tlb_source:
            payload["tlb_source"] = self.tlb_source
        if self.notes:
            payload["notes"] = list(self.notes)
        return payload


def _encode_exponent(value: float):
    return "inf" if math.isinf(value) else value


def ordering_holds(chain: List[Optional[float]], tol: float = ORDER_TOL) -> bool:
    """Each present term is >= the next present term minus ``tol``; chain is ordered top-down."""
    present = [value for value in chain if value is not None]
    return all(hi >= lo - tol for hi, lo in zip(present, present[1:]))


def hierarchy_report(
    X: SpaceLike,
    Y: SpaceLike,
    p: float,
    q: float,
    witness: Optional[Coupling] = None,
    *,
    upper: Optional[float] = None,
    cfg: Optional[QuadratureConfig] = None,
    client: Optional[PotClient] = None,
) -> HierarchyReport:
    """Compute DLB (at p, min(p,q)), SLB, TLB and an optional witnessed distortion.

    Failures of individual terms are recorded in ``notes``; nothing raises.
    """
    pq = PqParams(p=p, q=q)
    report = HierarchyReport(pq=pq, limit_mode=pq.limit_mode)
    notes = report.notes

    try:
        report.dlb = dlb(X, Y, pq.p, min(pq.p, pq.q), cfg)
    except GWError as exc:
        notes.append(f"dlb: {exc}")

    try:
        report.slb = slb(X, Y, pq.p, pq.q, cfg)
    except GWError as exc:
        notes.append(f"slb: {exc}")

    try:
        if isinstance(X, FiniteMMSpace) and isinstance(Y, FiniteMMSpace):
            report.tlb = tlb(X, Y, pq.p, pq.q, client=client).value
            report.tlb_source = "linear_ot"
        elif isinstance(X, SphereSpec):
            report.tlb = tlb_homogeneous(X, Y, pq.p, pq.q, cfg)
            report.tlb_source = "homogeneous"
        else:
            report.tlb = tlb_homogeneous(Y, X, pq.p, pq.q, cfg)
            report.tlb_source = "homogeneous"
    except GWError as exc:
        notes.append(f"tlb: {exc}")

    if witness is not None:
        try:
            if not (isinstance(X, FiniteMMSpace) and isinstance(Y, FiniteMMSpace)):
                raise GWError("a witness coupling needs two finite spaces")
            report.upper = distortion_pq(X, Y, witness, pq)
        except GWError as exc:
            notes.append(f"upper: {exc}")
    elif upper is not None:
        report.upper = float(upper)

    report.ordering_ok = ordering_holds([report.upper, report.tlb, report.slb, report.dlb])
    if pq.q > pq.p:
        notes.append("q > p: only DLB at (p, p) and the witness are compared")
    if not report.ordering_ok:
        logger.warning("Lower-bound ordering violated: %s", report.to_dict())
    return report


__all__ = ["ORDER_TOL", "HierarchyReport", "hierarchy_report", "ordering_holds"]
