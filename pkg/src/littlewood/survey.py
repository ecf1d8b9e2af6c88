"""Convergence surveys: norm ratios of a family member per prime, against the limit formula."""

from __future__ import annotations

import csv
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from typing import IO, Iterable, Iterator

from .asymptotics import limit_ratio4
from .field import prime_power, primes_up_to
from .norms import l2_sq, l4p4
from .polybuild import (
    AdditivePolySpec,
    LimitProfile,
    build,
    family_member,
    round_half_up,
    unimodularize,
)

log = logging.getLogger(__name__)

MAX_COEFFS = 2**22
ADDITIVE_Q_MAX = 2**20


@dataclass
class SurveyRow:
    p: int
    q: int
    e: int
    kind: str
    sigma: str
    tau: str
    sizes: str
    translations: str
    l2sq: float
    l4p4: float
    ratio4: float
    predicted: float
    abs_err: float
    merit_factor: str
    elapsed_ms: float

    @classmethod
    def header(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def cells(self) -> list[str]:
        out = []
        for v in astuple(self):
            out.append(f"{v:.12g}" if isinstance(v, float) else str(v))
        return out


def _join(xs) -> str:
    return ";".join(str(x) for x in xs)


def survey_points(profile: LimitProfile, n_max: int) -> list[int]:
    """Primes (multiplicative) or prime powers (additive) up to n_max, ascending."""
    if profile.kind == "additive":
        top = min(n_max, ADDITIVE_Q_MAX)
        return [q for q in range(2, top + 1) if prime_power(q) is not None]
    return [int(p) for p in primes_up_to(n_max)]


def _coeff_count(profile: LimitProfile, n: int) -> int:
    if profile.kind == "additive":
        return max(1, round_half_up(profile.sigma[0] * (n - 1)))
    return math.prod(max(1, round_half_up(s * n)) for s in profile.sigma)


def survey_row(profile: LimitProfile, n: int, raw: bool = False, method: str | None = None) -> SurveyRow | None:
    spec = family_member(profile, n)
    if spec is None:
        return None
    t0 = time.perf_counter()
    a = build(spec)
    if not raw:
        a = unimodularize(a)
    l2 = l2_sq(a)
    l4 = l4p4(a, method)
    elapsed = (time.perf_counter() - t0) * 1e3
    ratio = float(l4) / float(l2) ** 2
    predicted = float(limit_ratio4(profile))
    denom = l4 - l2 * l2
    merit = f"{float(l2 * l2) / float(denom):.12g}" if denom > 0 else ""
    F = spec.field
    if isinstance(spec, AdditivePolySpec):
        sizes, trans = (spec.size,), (spec.translation,)
    else:
        sizes, trans = spec.sizes, spec.translations
    return SurveyRow(
        p=F.p, q=F.q, e=F.e, kind=profile.kind,
        sigma=_join(profile.sigma), tau=_join(profile.tau or ()),
        sizes=_join(sizes), translations=_join(trans),
        l2sq=float(l2), l4p4=float(l4), ratio4=ratio, predicted=predicted,
        abs_err=abs(ratio - predicted), merit_factor=merit, elapsed_ms=elapsed,
    )


def _task(args):
    return survey_row(*args)


def run_survey(profile: LimitProfile, n_max: int, n_min: int = 2, raw: bool = False,
               method: str | None = None, jobs: int = 1) -> Iterator[SurveyRow]:
    """Rows in ascending order of p (or q); oversize members are skipped with a warning."""
    todo = []
    for n in survey_points(profile, n_max):
        if n < n_min:
            continue
        if _coeff_count(profile, n) > MAX_COEFFS:
            log.warning("skipping n=%d: more than %d coefficients", n, MAX_COEFFS)
            continue
        todo.append((profile, n, raw, method))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results: Iterable = pool.map(_task, todo, chunksize=max(1, len(todo) // (4 * jobs)))
            for row in results:
                if row is not None:
                    yield row
    else:
        for t in todo:
            row = _task(t)
            if row is not None:
                yield row


def write_csv(rows: Iterable[SurveyRow], out: IO[str]) -> int:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(SurveyRow.header())
    n = 0
    for row in rows:
        w.writerow(row.cells())
        n += 1
    return n
