"""
Phase iteration to a maximum-cardinality f-matching.

Each phase finds a blocking set of augmenting trails and rematches them;
the matching grows by the number of trails found.  When a phase comes up
empty the residual graph is the whole graph, so that phase's certificate
bounds every f-matching of the input and proves global maximality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .certificate import Certificate, CertificateReport, verify
from .engine import BlockingResult, StructuralError, find_trails
from .expand import expand_all, rematch
from .multigraph import Multigraph, validate_matching


@dataclass
class SolveReport:
    matching: set[int]
    phases: int
    trail_counts: list[int]
    certificate: Certificate
    report: CertificateReport
    last_result: BlockingResult


def max_f_matching(
    g: Multigraph,
    f: list[int],
    init: Optional[set[int]] = None,
    check: bool = False,
    trace: Optional[Callable[[str], None]] = None,
) -> SolveReport:
    """Compute a maximum-cardinality f-matching with a verified certificate.

    Parameters:
        g: the multigraph.
        f: per-vertex degree bounds.
        init: optional starting matching (defaults to empty).
        check: enable engine invariant assertions on every phase.
        trace: optional per-step trace sink.

    Returns:
        A SolveReport with the matching, the per-phase trail counts and
        the final (verified) optimality certificate.

    Raises:
        ValueError: if the initial matching is invalid.
        StructuralError: if the final certificate fails verification.
    """
    matching = set(init) if init is not None else set()
    bad = validate_matching(g, f, matching)
    if bad:
        raise ValueError(f"initial matching violates degree bounds at {bad}")

    phi = sum(f)
    trail_counts: list[int] = []
    while True:
        result = find_trails(g, f, matching, check=check, trace=trace)
        if not result.trails:
            report = verify(result)
            if not report.ok:
                raise StructuralError(
                    "certificate verification failed: " + "; ".join(report.failures)
                )
            return SolveReport(
                matching=matching,
                phases=len(trail_counts) + 1,
                trail_counts=trail_counts + [0],
                certificate=report.certificate,
                report=report,
                last_result=result,
            )
        trails = expand_all(result)
        matching = rematch(g, f, matching, trails)
        trail_counts.append(len(trails))
        if len(trail_counts) > phi // 2 + 1:
            raise StructuralError("phase count exceeded the termination bound")
