"""Cross-verification suite for one parameter triple.

Each check compares two independently computed quantities and records the
outcome in a :class:`~galerob.repcheck.Report`.
"""

from __future__ import annotations

from .degreeset import (
    build_Sj,
    count_order_ideals,
    f_polynomial,
    order_filters,
)
from .errors import GaleRobinsonError, NotDivisible, NotMonomial
from .laurent import gr_integers, gr_sequence, recover_g_vector
from .quiver import (
    FACE_WEIGHT,
    CCW,
    GRParams,
    build_quiver,
    classical_mutation,
    dimer_alternation_holds,
    enumerate_faces,
)
from .repcheck import (
    MAX_BRUTEFORCE,
    Report,
    f_polynomial_oracle,
    premutation_dims,
    subrep_bruteforce,
    verify_action,
)
from .theta import TABLE, theta, theta_inverse, theta_inverse_via_sigma, theta_orbit


def check_geometry(params: GRParams) -> Report:
    rep = Report("geometry")
    q = build_quiver(params)
    try:
        faces = enumerate_faces(q)
    except GaleRobinsonError as exc:
        rep.fail({"error": type(exc).__name__, "message": str(exc)})
        return rep
    for f in faces:
        if f.weight != FACE_WEIGHT:
            rep.fail({"face_square": f.square, "weight": list(f.weight)})
    if q.N - len(q.arrows) + len(faces) != 0:
        rep.fail({"euler": q.N - len(q.arrows) + len(faces)})
    ccw = sum(1 for f in faces if f.orientation == CCW)
    if 2 * ccw != len(faces):
        rep.fail({"counterclockwise": ccw, "clockwise": len(faces) - ccw})
    outs = sorted(ar.target for ar in q.out_arrows(1))
    ins = sorted(ar.source for ar in q.in_arrows(1))
    expected_out = sorted([1 + params.a, 1 + params.b])
    expected_in = sorted([1 + params.c, 1 + params.d])
    if outs != expected_out or ins != expected_in:
        rep.fail({"vertex_one_out": outs, "vertex_one_in": ins})
    if not dimer_alternation_holds(q):
        rep.fail({"alternation": False})
    g = q.to_digraph()
    if g.is_two_acyclic() and classical_mutation(g, 1).relabel(-1) != g:
        rep.fail({"periodicity": False})
    return rep


def check_ideal_counts(params: GRParams, jmax: int, threads: int | None = None) -> Report:
    rep = Report("ideal_counts")
    ints = gr_integers(params, 1, params.N + jmax)
    for j in range(1, jmax + 1):
        count = count_order_ideals(build_Sj(params, j), threads=threads)
        if count != ints[params.N + j]:
            rep.fail({"j": j, "ideals": count, "recurrence": ints[params.N + j]})
    return rep


def check_laurent(params: GRParams, reach: int) -> Report:
    rep = Report("laurent")
    n = params.N
    try:
        seq = gr_sequence(params, 1 - reach, n + reach)
    except NotDivisible as exc:
        rep.fail({"error": str(exc)})
        return rep
    ints = gr_integers(params, 1 - reach, n + reach)
    for i, x in seq.items():
        if x.evaluate([1] * n) != ints[i]:
            rep.fail({"index": i})
    return rep


def check_orbit(params: GRParams, jmax: int, table=TABLE) -> list[Report]:
    """Orbit of the singleton against the sign-restricted family, plus oracles."""
    orbit = Report("theta_orbit")
    oracle = Report("table_vs_ranks")
    if params.vertex_one_in_two_cycle():
        orbit.status = oracle.status = "skip"
        return [orbit, oracle]
    report = theta_orbit(build_Sj(params, 1), jmax - 1, table=table)
    if report.failure:
        orbit.fail(report.failure)
    for j, S in enumerate(report.sets, start=1):
        if S != build_Sj(params, j):
            orbit.fail({"j": j, "mismatch": True})
        if j > 1:
            try:
                back = theta_inverse(S)
                if back.output != report.sets[j - 2]:
                    orbit.fail({"j": j, "inverse": "mismatch"})
                if theta_inverse_via_sigma(S) != back.output:
                    orbit.fail({"j": j, "inverse": "routes disagree"})
            except GaleRobinsonError as exc:
                orbit.fail({"j": j, "inverse_error": type(exc).__name__})
    for j in range(1, jmax):
        S = build_Sj(params, j)
        try:
            res = theta(S, table=table)
        except GaleRobinsonError as exc:
            oracle.fail({"j": j, "error": type(exc).__name__})
            continue
        for cand in res.candidates:
            pm = premutation_dims(S, cand.point)
            member = cand.column is not None
            if pm.total != int(member) or not pm.rank_claims_hold() or not pm.complex_ok:
                oracle.fail({"t": S.t, "point": list(cand.point), "table": member,
                             "rank_total": pm.total, "dims": list(pm.dims)})
    return [orbit, oracle]


def check_subreps(params: GRParams, jmax: int, cap: int = 15) -> Report:
    rep = Report("subrepresentations")
    for j in range(1, jmax + 1):
        S = build_Sj(params, j)
        if len(S) > min(cap, MAX_BRUTEFORCE):
            break
        subs = {members for members, _ in subrep_bruteforce(S)}
        if subs != set(order_filters(S)):
            rep.fail({"j": j, "subsets": len(subs)})
        if f_polynomial_oracle(S) != f_polynomial(S, "filters"):
            rep.fail({"j": j, "fpoly": "mismatch"})
        if not all(r.ok for r in verify_action(S)):
            rep.fail({"j": j, "action": "ill-defined"})
    return rep


def check_g_vectors(params: GRParams, jmax: int) -> Report:
    rep = Report("g_vectors")
    q = build_quiver(params)
    seq = gr_sequence(params, 1, params.N + jmax)
    for j in range(1, jmax + 1):
        F = f_polynomial(build_Sj(params, j), "ideals")
        try:
            recover_g_vector(seq[params.N + j], F, q)
        except (NotMonomial, NotDivisible) as exc:
            rep.fail({"j": j, "error": str(exc)})
    return rep


def run_suite(params: GRParams, jmax: int = 8, brute_cap: int = 15, threads: int | None = None,
              table=TABLE) -> list[Report]:
    reports = [
        check_geometry(params),
        check_ideal_counts(params, jmax, threads),
        check_laurent(params, min(jmax, params.N + 6)),
    ]
    reports.extend(check_orbit(params, jmax, table))
    reports.append(check_subreps(params, jmax, brute_cap))
    reports.append(check_g_vectors(params, min(jmax, 6)))
    return reports
