"""Independent checks on the representation attached to a degree set.

The representation has one basis vector ``f_lam`` per ``lam`` in ``S``; an
arrow of weight ``w`` sends ``f_lam`` to ``f_{lam+w}`` when that weight is in
``S`` and to zero otherwise.  Everything here is computed directly from that
action, without going through the combinatorial shortcuts used elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .degreeset import DegreeSet, box, leq, vertex_of
from .errors import ActionIllDefined, InternalError, NotInSet, OutOfBand, TooLarge
from .laurent import LaurentPoly
from .quiver import (
    FACE_WEIGHT,
    KINDS,
    ArrowKind,
    Path,
    Quiver,
    build_quiver,
    enumerate_faces,
    find_path,
    sub_weights,
)

MAX_BRUTEFORCE = 24


def _quiver(S: DegreeSet, quiver: Quiver | None) -> Quiver:
    return quiver if quiver is not None else build_quiver(S.params)


def arrow_action(S: DegreeSet, kind: ArrowKind, lam, quiver: Quiver | None = None):
    """Image weight of ``f_lam`` under the arrow of ``kind`` leaving its vertex, or None."""
    lam = tuple(lam)
    if lam not in S.points:
        raise NotInSet(f"{lam} is not in the degree set")
    q = _quiver(S, quiver)
    v = vertex_of(S, lam)
    arrow = q.arrow_from(v, kind)
    if arrow is None:
        return None
    mu = tuple(x + w for x, w in zip(lam, kind.weight))
    if mu in S.points and vertex_of(S, mu) == arrow.target:
        return mu
    return None


def act_path(S: DegreeSet, path: Path, lam, quiver: Quiver | None = None):
    """Apply the arrows of ``path`` in traversal order; None once the image is zero."""
    q = _quiver(S, quiver)
    cur = tuple(lam)
    for ar in path.arrows:
        if cur is None:
            return None
        if vertex_of(S, cur) != ar.source:
            raise InternalError(f"path arrow {ar} does not start at the vertex of {cur}")
        cur = arrow_action(S, ar.kind, cur, q)
    return cur


@dataclass
class Report:
    check: str
    status: str = "pass"
    witnesses: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def fail(self, witness):
        self.status = "fail"
        self.witnesses.append(witness)

    def to_dict(self) -> dict:
        return {"check": self.check, "status": self.status, "witnesses": self.witnesses}


def _path_text(path: Path) -> str:
    return " ".join(f"{ar.source}->{ar.target}:{ar.kind.name}" for ar in path.arrows) or "(empty)"


def verify_action(S: DegreeSet, quiver: Quiver | None = None, raise_on_failure: bool = False,
                  max_witnesses: int = 10) -> list[Report]:
    """Path-level consistency of the action.

    Composition: for members ``lam <= nu`` and every band weight ``mu``
    between them, a path through ``mu`` must carry ``f_lam`` to ``f_nu``.
    Relations: for every arrow, the completing paths of its two faces act
    identically on every basis vector.
    """
    q = _quiver(S, quiver)
    comp = Report("composition")
    pts = S.sorted_points()
    for lam in pts:
        for nu in pts:
            if lam == nu or not leq(lam, nu):
                continue
            for mu in box(lam, nu):
                if not S.in_band(mu):
                    continue
                first = find_path(q, vertex_of(S, lam), sub_weights(mu, lam))
                second = find_path(q, first.end, sub_weights(nu, mu))
                path = Path(first.start, first.arrows + second.arrows)
                if act_path(S, path, lam, q) != nu:
                    comp.fail({"source": list(lam), "target": list(nu), "via": list(mu),
                               "path": _path_text(path)})
                    break
            if len(comp.witnesses) >= max_witnesses:
                break
        if len(comp.witnesses) >= max_witnesses:
            break

    rel = Report("relations")
    completions = {}
    for face in enumerate_faces(q):
        cyc = face.boundary.arrows
        for i, ar in enumerate(cyc):
            rest = cyc[i + 1:] + cyc[:i]
            completions.setdefault(ar, []).append(Path(ar.target, rest))
    for ar, paths in sorted(completions.items()):
        if len(paths) != 2:
            raise InternalError(f"arrow {ar} bounds {len(paths)} faces")
        p1, p2 = paths
        if p1.weight != p2.weight or p1.weight != sub_weights(FACE_WEIGHT, ar.weight):
            raise InternalError(f"completing paths of {ar} have unexpected weights")
        for lam in pts:
            if vertex_of(S, lam) != ar.target:
                continue
            r1, r2 = act_path(S, p1, lam, q), act_path(S, p2, lam, q)
            if r1 != r2:
                rel.fail({"arrow": repr(ar), "basis": list(lam),
                          "paths": [_path_text(p1), _path_text(p2)],
                          "images": [r1 and list(r1), r2 and list(r2)]})
    reports = [comp, rel]
    if raise_on_failure:
        for rep in reports:
            if not rep.ok:
                raise ActionIllDefined(f"{rep.check} check failed", witness=rep.witnesses[0])
    return reports


# -- graded premutation -----------------------------------------------------------


def matrix_rank(rows) -> int:
    """Exact rank of a small integer matrix."""
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / m[rank][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def _matmul(x, y):
    if not x or not y:
        return []
    return [[sum(x[i][k] * y[k][j] for k in range(len(y))) for j in range(len(y[0]))]
            for i in range(len(x))]


PI_WEIGHTS = ((0, 1, 0, 1), (0, 1, 1, 0), (1, 0, 0, 1), (1, 0, 1, 0))


@dataclass(frozen=True)
class Premutation:
    k1: int
    k2: int
    k3: int
    dims: tuple[int, int, int, int]
    ranks: tuple[int, int, int]  # rank alpha, rank beta, rank gamma
    complex_ok: bool  # gamma*beta == 0 and alpha*gamma == 0

    @property
    def total(self) -> int:
        return self.k1 + self.k2 + self.k3

    def rank_claims_hold(self) -> bool:
        a, b, c, d = self.dims
        rk_alpha, rk_beta, rk_gamma = self.ranks
        gamma_expected = 1 if b == c == 2 else min(b, c)
        return rk_alpha == min(c, d) and rk_beta == min(a, b) and rk_gamma == gamma_expected


def premutation_dims(S: DegreeSet, lam) -> Premutation:
    """Dimensions of ker(gamma)/im(beta), im(gamma), ker(alpha)/im(gamma) at ``lam``.

    Bases are the members of S among the neighbouring weights: A at
    ``lam-(1,1,0,0)``; B at ``lam-(0,1,0,0)`` and ``lam-(1,0,0,0)``; C at
    ``lam+(0,0,0,1)`` and ``lam+(0,0,1,0)``; D at ``lam+(0,0,1,1)``.
    """
    lam = tuple(lam)
    if S.params.level(lam) != S.t + S.N + 1:
        raise OutOfBand(f"{lam} is not one level above the band of t={S.t}")
    pts = S.points
    add = lambda w: tuple(x + y for x, y in zip(lam, w))
    a_pt = add((-1, -1, 0, 0))
    b_pts = [add((0, -1, 0, 0)), add((-1, 0, 0, 0))]  # reached from A by East, West
    c_pts = [add((0, 0, 0, 1)), add((0, 0, 1, 0))]  # leave towards D by South, North
    d_pt = add((0, 0, 1, 1))

    A = [a_pt] if a_pt in pts else []
    B = [p for p in b_pts if p in pts]
    C = [p for p in c_pts if p in pts]
    D = [d_pt] if d_pt in pts else []

    def present(src, dst, weight):
        # a path of the given weight carries f_src to f_dst
        return int(tuple(x + w for x, w in zip(src, weight)) == dst)

    beta = [[present(s, t, w) for s in A] for t, w in zip(b_pts, ((1, 0, 0, 0), (0, 1, 0, 0))) if t in pts]
    signs = ((1, -1), (-1, 1))
    gamma = []
    for ci, c in enumerate(c_pts):
        if c not in pts:
            continue
        row = []
        for bi, b in enumerate(b_pts):
            if b not in pts:
                continue
            w = sub_weights(c, b)
            row.append(signs[ci][bi] * int(w in PI_WEIGHTS))
        gamma.append(row)
    alpha = [[int(c in pts) for c in c_pts if c in pts] for _ in D]

    def rank(mat):
        return matrix_rank(mat) if mat and mat[0] else 0

    rk_a, rk_b, rk_g = rank(alpha), rank(beta), rank(gamma)
    gb = _matmul(gamma, beta) if (gamma and beta and beta[0]) else []
    ag = _matmul(alpha, gamma) if (alpha and gamma and gamma[0]) else []
    complex_ok = all(x == 0 for row in gb for x in row) and all(x == 0 for row in ag for x in row)
    k1 = len(B) - rk_g - rk_b
    k2 = rk_g
    k3 = len(C) - rk_a - rk_g
    return Premutation(k1, k2, k3, (len(A), len(B), len(C), len(D)), (rk_a, rk_b, rk_g), complex_ok)


# -- brute-force subrepresentations -------------------------------------------------


def _successor_masks(S: DegreeSet, pts, quiver) -> list[int]:
    index = {p: i for i, p in enumerate(pts)}
    succ = []
    for lam in pts:
        m = 0
        for kind in KINDS:
            mu = arrow_action(S, kind, lam, quiver)
            if mu is not None:
                m |= 1 << index[mu]
        succ.append(m)
    return succ


def subrep_bruteforce(S: DegreeSet, quiver: Quiver | None = None) -> list[tuple[frozenset, tuple[int, ...]]]:
    """Every subset closed under the arrow action, with its dimension vector.

    Scans all ``2^|S|`` subsets; raises :class:`TooLarge` above 24 points.
    """
    n = len(S)
    if n > MAX_BRUTEFORCE:
        raise TooLarge(f"{n} points exceed the brute-force limit of {MAX_BRUTEFORCE}")
    q = _quiver(S, quiver)
    pts = S.sorted_points()
    succ = _successor_masks(S, pts, q)
    masks = np.arange(1 << n, dtype=np.int64)
    closed = np.ones(1 << n, dtype=bool)
    for i, s in enumerate(succ):
        if s:
            has = ((masks >> i) & 1).astype(bool)
            closed &= ~has | ((masks & s) == s)
    out = []
    verts = [vertex_of(S, p) for p in pts]
    for m in np.flatnonzero(closed).tolist():
        members = frozenset(pts[i] for i in range(n) if m >> i & 1)
        dims = [0] * S.N
        for i in range(n):
            if m >> i & 1:
                dims[verts[i] - 1] += 1
        out.append((members, tuple(dims)))
    return out


def f_polynomial_oracle(S: DegreeSet, quiver: Quiver | None = None) -> LaurentPoly:
    """Sum of ``y^dims`` over brute-force subrepresentations."""
    total = LaurentPoly.zero(S.N)
    for _, dims in subrep_bruteforce(S, quiver):
        total = total + LaurentPoly.monomial(dims)
    return total
