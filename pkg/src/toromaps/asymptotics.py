"""Growth bounds for the counting functions, evaluated in double precision.

The bounds are limits, so finite samples are only ever compared with slack.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import sympy

from .numtheory import DomainError
from .tilings import V0

EULER_GAMMA = float(sympy.EulerGamma.evalf(20))
E_GAMMA = math.exp(EULER_GAMMA)

GRONWALL_FAMILY = frozenset({3, 4, 8, 12, 13, 15, 23, 27})
GLIDE_FAMILY = frozenset({9, 10, 18})

# leading coefficient of sigma(n) in each halved or quartered count
_SIGMA_SHARE = {3: 0.5, 4: 0.5, 8: 0.5, 12: 0.5, 13: 0.5, 15: 0.5, 23: 0.25}


def gronwall_bound(v: float) -> float:
    if not v > math.e:
        raise DomainError(f"gronwall_bound needs v > e, got {v}")
    return E_GAMMA * v * math.log(math.log(v))


def bound27(v: float) -> float:
    if not v / 4 > math.e:
        raise DomainError(f"bound27 needs v/4 > e, got v = {v}")
    return E_GAMMA / 8 * v * math.log(math.log(v / 4))


def divisor_bound(v: float) -> float:
    if not v > math.e:
        raise DomainError(f"divisor_bound needs ln ln v > 0, got v = {v}")
    return math.exp(math.log(2) * math.log(v) / math.log(math.log(v)))


def sigma_table(limit: int) -> list[int]:
    """sigma(k) for 0 <= k <= limit by a divisor sieve (entry 0 is unused)."""
    out = [0] * (limit + 1)
    for d in range(1, limit + 1):
        for k in range(d, limit + 1, d):
            out[k] += d
    return out


def tau_table(limit: int) -> list[int]:
    out = [0] * (limit + 1)
    for d in range(1, limit + 1):
        for k in range(d, limit + 1, d):
            out[k] += 1
    return out


@dataclass
class RatioScan:
    limit: int
    maximum: float
    argmax: int
    records: list[tuple[int, float]]


def gronwall_ratio_scan(limit: int, start: int = 3) -> RatioScan:
    """Running maximum of sigma(v) / (v ln ln v) over start <= v <= limit."""
    sig = sigma_table(limit)
    best, arg, records = -1.0, start, []
    for v in range(start, limit + 1):
        r = sig[v] / (v * math.log(math.log(v)))
        if r > best:
            best, arg = r, v
            records.append((v, r))
    return RatioScan(limit, best, arg, records)


def bound_for(ell: int, v: int) -> tuple[str, float]:
    n = v // V0[ell]
    if ell == 27:
        return "bound27", bound27(v)
    if ell in GRONWALL_FAMILY:
        return "gronwall", _SIGMA_SHARE[ell] * gronwall_bound(n)
    if ell in GLIDE_FAMILY:
        return "2*divisor", 2 * divisor_bound(n)
    return "divisor", divisor_bound(n)


@dataclass
class GrowthReport:
    ell: int
    bound_name: str
    samples: list[tuple[int, int, float, float]]
    formula: str
    exceed_search: dict | None = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "type": self.ell,
            "bound": self.bound_name,
            "formula": self.formula,
            "samples": [{"v": v, "phi": p, "bound": b, "ratio": r} for v, p, b, r in self.samples],
            "exceed_search": self.exceed_search,
            "notes": self.notes,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["v", "phi", "bound", "ratio"])
        for v, p, b, r in self.samples:
            w.writerow([v, p, repr(b), repr(r)])
        return buf.getvalue()


def exceeds_vertex_count(ell: int, max_v: int) -> dict:
    """Search for v <= max_v with Phi_ell(v) > v."""
    from .enumerate import phi_closed

    for v in range(V0[ell], max_v + 1, V0[ell]):
        p = phi_closed(ell, v)
        if p > v:
            return {"found": True, "v": v, "phi": p, "scan_limit": max_v}
    return {"found": False, "v": None, "phi": None, "scan_limit": max_v}


def default_samples(ell: int, max_v: int, points: int = 12) -> list[int]:
    v0 = V0[ell]
    top = max_v // v0
    if top < 3:
        raise DomainError(f"max_v must be at least {3 * v0} for type {ell}")
    ns = sorted({round(3 * (top / 3) ** (k / (points - 1))) for k in range(points)})
    return [n * v0 for n in ns]


def growth_report(ell: int, v_samples: Sequence[int] | None = None, max_v: int = 10**4,
                  search: bool | None = None) -> GrowthReport:
    from .enumerate import check_type, overruled_types, phi_closed

    check_type(ell)
    v0 = V0[ell]
    if v_samples is None:
        v_samples = default_samples(ell, max_v)
    samples, name = [], ""
    for v in sorted(set(v_samples)):
        if v % v0 or v // v0 < 3:
            raise DomainError(f"sample {v} is not a multiple of {v0} with at least 3 sheets")
        name, b = bound_for(ell, v)
        p = phi_closed(ell, v)
        samples.append((v, p, b, p / b))
    formula = "oracle-confirmed closed form" if ell in overruled_types() else "published closed form"
    report = GrowthReport(ell, name, samples, formula)
    if search if search is not None else ell == 27:
        report.exceed_search = exceeds_vertex_count(ell, max(max_v, max(v_samples)))
    if ell == 27:
        report.notes.append(
            "bound27 carries the constant of the published Lambda; the oracle-confirmed count "
            "grows like sigma/4, so the ratio tends to about 1/2 rather than 1"
        )
    return report


def bounded_by_tau(ells: Iterable[int], limit: int, factor: int = 1) -> list[tuple[int, int, int, int]]:
    """Violations (ell, v, phi, factor*tau(v/v0)) of Phi <= factor * tau for v <= limit."""
    from .enumerate import phi_closed

    tau = tau_table(limit)
    bad = []
    for ell in ells:
        for v in range(V0[ell], limit + 1, V0[ell]):
            p = phi_closed(ell, v)
            if p > factor * tau[v // V0[ell]]:
                bad.append((ell, v, p, factor * tau[v // V0[ell]]))
    return bad
