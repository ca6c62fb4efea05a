"""The mutate-then-relabel operator on degree sets, its inverse and orbits.

Applying the operator to ``S`` at level ``t`` gives a degree set at level
``t+1``.  Points over vertices ``2..N`` move down one vertex unchanged; the
new top layer is decided point by point from which of six neighbouring
weights lie in ``S`` (the lookup table ``TABLE``).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .degreeset import (
    DegreeSet,
    format_weight,
    is_connected,
    is_interval_closed,
    is_sturdy,
    negate,
    shift,
    sigma,
)
from .errors import (
    NotConnected,
    NotIntervalClosed,
    NotSturdy,
    OutputNotCalibrated,
    ThetaError,
    ThetaUndefined,
    TwoCycleAtVertexOne,
)
from .quiver import Weight

# (dimA, dimB, dimC, dimD) patterns for which the new top-layer space is one
# dimensional; column indices are 1-based positions in this tuple.
TABLE = (
    (0, 1, 0, 0),
    (1, 2, 0, 0),
    (0, 1, 1, 0),
    (0, 1, 2, 1),
    (1, 2, 1, 0),
    (1, 2, 2, 1),
    (0, 0, 1, 0),
    (0, 0, 2, 1),
)

E1, E2, E3, E4 = (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)
E12, E34 = (1, 1, 0, 0), (0, 0, 1, 1)


@dataclass(frozen=True)
class Candidate:
    point: Weight
    dims: tuple[int, int, int, int]
    column: int | None  # 1-based table column, None if rejected


@dataclass(frozen=True)
class ThetaResult:
    output: DegreeSet
    provenance: tuple[tuple[Weight, int], ...]
    candidates: tuple[Candidate, ...] = field(default=(), compare=False)

    def to_dict(self) -> dict:
        out = self.output.to_dict()
        out["provenance"] = [
            {"point": list(p), "column_index": col} for p, col in self.provenance
        ]
        return out


def neighbour_dims(S: DegreeSet, lam: Weight) -> tuple[int, int, int, int]:
    pts = S.points
    dim_a = int(shift(lam, E12, -1) in pts)
    dim_b = int(shift(lam, E2, -1) in pts) + int(shift(lam, E1, -1) in pts)
    dim_c = int(shift(lam, E4) in pts) + int(shift(lam, E3) in pts)
    dim_d = int(shift(lam, E34) in pts)
    return dim_a, dim_b, dim_c, dim_d


def top_layer_candidates(S: DegreeSet) -> list[Weight]:
    """Every weight that can enter the new top layer: six translates of layers."""
    p = S.params
    sources = (
        (1, E12, 1),
        (1 + p.a, E2, 1),
        (1 + p.b, E1, 1),
        (1 + p.c, E4, -1),
        (1 + p.d, E3, -1),
        (1, E34, -1),
    )
    cands = set()
    for v, delta, sign in sources:
        for lam in S.layer(v):
            cands.add(shift(lam, delta, sign))
    return sorted(cands)


def check_preconditions(S: DegreeSet, allow_disconnected: bool = False) -> None:
    p = S.params
    if p.vertex_one_in_two_cycle():
        raise TwoCycleAtVertexOne(
            f"{{a,b}} = {{c,d}} for a={p.a} c={p.c} N={p.N}: vertex 1 lies on a 2-cycle"
        )
    ok, triple = is_interval_closed(S)
    if not ok:
        raise NotIntervalClosed(
            f"{format_weight(triple[1])} lies between members but is missing", witness=triple
        )
    if not is_connected(S):
        if allow_disconnected:
            warnings.warn("degree set is not connected; continuing as requested")
        else:
            raise NotConnected("Hasse diagram of the degree set is disconnected")
    ok, lam = is_sturdy(S)
    if not ok:
        raise NotSturdy(f"{format_weight(lam)} must belong to the set", witness=lam)
    if len(S) == 1 and S.layer(1):
        (lam,) = S.points
        raise ThetaUndefined("input is the simple representation at vertex 1", witness=lam)


def theta(S: DegreeSet, allow_disconnected: bool = False, table=TABLE) -> ThetaResult:
    """Apply the operator; ``table`` may be replaced to inject faults in tests."""
    check_preconditions(S, allow_disconnected)
    n = S.N
    kept = {lam for v in range(2, n + 1) for lam in S.layer(v)}
    lookup = {dims: i for i, dims in enumerate(table, start=1)}
    candidates = []
    provenance = []
    for lam in top_layer_candidates(S):
        dims = neighbour_dims(S, lam)
        col = lookup.get(dims)
        candidates.append(Candidate(lam, dims, col))
        if col is not None:
            provenance.append((lam, col))
            kept.add(lam)
    out = DegreeSet(S.params, S.t + 1, frozenset(kept))
    return ThetaResult(out, tuple(provenance), tuple(candidates))


def _negate_witness(w):
    if w is None:
        return None
    if len(w) == 3 and isinstance(w[0], tuple):
        return tuple(tuple(-x for x in p) for p in reversed(w))
    return tuple(-x for x in w)


def _negate_result(res: ThetaResult) -> ThetaResult:
    neg = lambda lam: tuple(-x for x in lam)
    return ThetaResult(
        negate(res.output),
        tuple((neg(p), c) for p, c in res.provenance),
        tuple(Candidate(neg(c.point), c.dims, c.column) for c in res.candidates),
    )


def theta_inverse(S: DegreeSet, allow_disconnected: bool = False, table=TABLE) -> ThetaResult:
    """Inverse operator computed through negation; lands at level ``t-1``.

    Precondition failures carry witnesses in the coordinates of ``S``.
    """
    try:
        res = theta(negate(S), allow_disconnected, table)
    except ThetaError as exc:
        raise type(exc)(str(exc), witness=_negate_witness(exc.witness)) from exc
    return _negate_result(res)


def theta_inverse_via_sigma(S: DegreeSet, allow_disconnected: bool = False) -> DegreeSet:
    """Inverse operator computed on the opposite quiver."""
    return sigma(theta(sigma(S), allow_disconnected).output)


@dataclass
class OrbitReport:
    start: DegreeSet
    results: list[ThetaResult]
    failure: dict | None = None

    @property
    def sets(self) -> list[DegreeSet]:
        return [self.start] + [r.output for r in self.results]

    def to_dict(self) -> dict:
        return {
            "start": self.start.to_dict(),
            "steps": [r.to_dict() for r in self.results],
            "failure": self.failure,
        }


def _jsonable(w):
    if w is None:
        return None
    if isinstance(w, tuple) and w and isinstance(w[0], tuple):
        return [list(p) for p in w]
    return list(w)


def theta_orbit(S: DegreeSet, k: int, allow_disconnected: bool = False, table=TABLE) -> OrbitReport:
    """Iterate ``|k|`` times (inverse for negative ``k``), stopping at the first failure."""
    step_fn = theta if k >= 0 else theta_inverse
    report = OrbitReport(S, [])
    current = S
    for step in range(1, abs(k) + 1):
        try:
            res = step_fn(current, allow_disconnected, table)
            ok, triple = is_interval_closed(res.output)
            if not ok:
                raise OutputNotCalibrated("output is not closed under intervals", witness=triple)
        except ThetaError as exc:
            report.failure = {
                "step": step,
                "predicate": exc.predicate,
                "witness": _jsonable(exc.witness),
                "message": str(exc),
            }
            break
        report.results.append(res)
        current = res.output
    return report


THETA = "theta"
THETA_INVERSE = "theta_inverse"


def track_mutation_sequence(seq, direction: str = THETA, n: int | None = None, steps: int = 1) -> list[int]:
    """Mutation sequence of the cluster variable after applying the operator.

    Forward: prepend N and lower every label by one (labels stay in 1..N).
    Inverse: prepend 1 and raise every label by one.
    """
    if n is None:
        raise ValueError("the number of vertices n is required")
    seq = [int(k) for k in seq]
    for _ in range(steps):
        if direction == THETA:
            seq = [n] + [(k - 2) % n + 1 for k in seq]
        elif direction == THETA_INVERSE:
            seq = [1] + [k % n + 1 for k in seq]
        else:
            raise ValueError(f"unknown direction {direction!r}")
    return seq
