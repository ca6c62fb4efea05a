"""Degree sets: finite sets of weights inside a level band.

A degree set ``S`` at level ``t`` is a finite subset of the band
``X_t = {lam : t+1 <= level(lam) <= t+N}``; a point ``lam`` sits over vertex
``level(lam) - t``.  This module validates degree sets, enumerates their
order ideals and filters, builds F-polynomials and constructs the standard
families of degree sets.
"""

from __future__ import annotations

import itertools
import json
import os
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import InfiniteSet, InternalError, InvalidDegreeSet, OutOfBand
from .laurent import LaurentPoly
from .quiver import GRParams, Weight

UNIT = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))


def level(params: GRParams, lam: Weight) -> int:
    return params.level(lam)


def leq(x: Weight, y: Weight) -> bool:
    return all(a <= b for a, b in zip(x, y))


def shift(lam: Weight, delta: Weight, sign: int = 1) -> Weight:
    return tuple(a + sign * b for a, b in zip(lam, delta))


def parse_weight(text: str) -> Weight:
    """Parse a weight literal such as ``"(1,0,-1,0)"``."""
    body = text.strip().strip("()[]")
    parts = [p for p in body.replace(" ", "").split(",") if p]
    if len(parts) != 4:
        raise ValueError(f"weight literal {text!r} must have four integer components")
    return tuple(int(p) for p in parts)


def format_weight(lam: Weight) -> str:
    return "(" + ",".join(str(x) for x in lam) + ")"


@dataclass(frozen=True)
class DegreeSet:
    params: GRParams
    t: int
    points: frozenset

    def __post_init__(self):
        pts = frozenset(tuple(int(x) for x in p) for p in self.points)
        object.__setattr__(self, "points", pts)
        for lam in pts:
            if len(lam) != 4:
                raise InvalidDegreeSet(f"point {lam} is not a 4-tuple")
            if not self.in_band(lam):
                raise InvalidDegreeSet(
                    f"point {lam} has level {self.params.level(lam)} outside "
                    f"[{self.t + 1}, {self.t + self.params.N}]"
                )

    @property
    def N(self) -> int:
        return self.params.N

    def in_band(self, lam: Weight) -> bool:
        return self.t + 1 <= self.params.level(lam) <= self.t + self.params.N

    def vertex_of(self, lam: Weight) -> int:
        return vertex_of(self, lam)

    def layer(self, v: int) -> frozenset:
        return frozenset(lam for lam in self.points if self.params.level(lam) - self.t == v)

    def sorted_points(self) -> list[Weight]:
        return sorted(self.points)

    def dimension_vector(self) -> tuple[int, ...]:
        dims = [0] * self.N
        for lam in self.points:
            dims[self.params.level(lam) - self.t - 1] += 1
        return tuple(dims)

    def __contains__(self, lam) -> bool:
        return tuple(lam) in self.points

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.sorted_points())

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "t": self.t,
            "points": [list(p) for p in self.sorted_points()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "DegreeSet":
        return cls(
            GRParams.from_dict(data["params"]),
            int(data["t"]),
            frozenset(tuple(p) for p in data["points"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "DegreeSet":
        return cls.from_dict(json.loads(text))


def vertex_of(S: DegreeSet, lam: Weight) -> int:
    v = S.params.level(lam) - S.t
    if not 1 <= v <= S.N:
        raise OutOfBand(f"{lam} has level {S.params.level(lam)}, outside the band of t={S.t}")
    return v


# -- predicates ----------------------------------------------------------------


def box(x: Weight, z: Weight) -> Iterator[Weight]:
    """Integer points ``y`` with ``x <= y <= z`` componentwise."""
    return itertools.product(*(range(lo, hi + 1) for lo, hi in zip(x, z)))


def is_interval_closed(S: DegreeSet) -> tuple[bool, tuple | None]:
    """Return ``(True, None)`` or ``(False, (x, y, z))`` with y missing from S."""
    pts = S.sorted_points()
    for x in pts:
        for z in pts:
            if x == z or not leq(x, z):
                continue
            for y in box(x, z):
                if y not in S.points and S.in_band(y):
                    return False, (x, y, z)
    return True, None


def is_cover(S: DegreeSet, x: Weight, y: Weight) -> bool:
    """Whether ``y`` covers ``x`` in the band poset ``X_t``."""
    if x == y or not leq(x, y):
        return False
    for z in box(x, y):
        if z != x and z != y and S.in_band(z):
            return False
    return True


def hasse_edges(S: DegreeSet) -> list[tuple[Weight, Weight]]:
    pts = S.sorted_points()
    return [(x, y) for x in pts for y in pts if is_cover(S, x, y)]


def is_connected(S: DegreeSet) -> bool:
    pts = S.sorted_points()
    if len(pts) <= 1:
        return True
    parent = {p: p for p in pts}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    for x, y in hasse_edges(S):
        parent[find(x)] = find(y)
    return len({find(p) for p in pts}) == 1


def is_sturdy(S: DegreeSet) -> tuple[bool, Weight | None]:
    """Completion at the bottom layer; returns the first violating weight."""
    e1, e2, e3, e4 = UNIT
    bottom = S.t + 1
    candidates = set()
    for mu in S.points:
        candidates.add(shift(mu, e1, -1))
        candidates.add(shift(mu, e3))
    for lam in sorted(candidates):
        if S.params.level(lam) != bottom or lam in S.points:
            continue
        east = shift(lam, e1) in S.points and shift(lam, e2) in S.points
        south = shift(lam, e3, -1) in S.points and shift(lam, e4, -1) in S.points
        if east or south:
            return False, lam
    return True, None


# -- order ideals and filters ----------------------------------------------------


class _Poset:
    """Componentwise order on the points of S, encoded with bitmasks."""

    def __init__(self, points: Iterable[Weight]):
        self.points = sorted(points, key=lambda p: (sum(p), p))
        n = len(self.points)
        self.down = [0] * n
        self.up = [0] * n
        for i, x in enumerate(self.points):
            for k, y in enumerate(self.points):
                if leq(y, x):
                    self.down[i] |= 1 << k
                if leq(x, y):
                    self.up[i] |= 1 << k
        self.full = (1 << n) - 1

    def dual(self) -> "_Poset":
        d = _Poset.__new__(_Poset)
        d.points = self.points
        d.down, d.up, d.full = self.up, self.down, self.full
        return d

    def members(self, mask: int) -> frozenset:
        return frozenset(self.points[i] for i in _bits(mask))


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _pivot(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _iter_ideals(poset: _Poset) -> Iterator[int]:
    # ideals(P) = ideals(P minus up(x))  +  down(x) | ideals(P minus down(x))
    stack = [(poset.full, 0)]
    while stack:
        mask, taken = stack.pop()
        if not mask:
            yield taken
            continue
        x = _pivot(mask)
        stack.append((mask & ~poset.down[x], taken | (poset.down[x] & mask)))
        stack.append((mask & ~poset.up[x], taken))


def _count(down: tuple, up: tuple, mask: int) -> int:
    @lru_cache(maxsize=None)
    def count(m):
        if not m:
            return 1
        x = _pivot(m)
        return count(m & ~up[x]) + count(m & ~down[x])

    return count(mask)


def _split(poset: _Poset, depth: int) -> list[int]:
    """Masks of independent subproblems whose counts sum to the total."""
    masks = [poset.full]
    for _ in range(depth):
        nxt = []
        for m in masks:
            if not m:
                nxt.append(m)
                continue
            x = _pivot(m)
            nxt.extend((m & ~poset.up[x], m & ~poset.down[x]))
        masks = nxt
    return masks


def _count_task(args):
    down, up, mask = args
    return _count(down, up, mask)


def _threads(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get("GALEROB_THREADS", "1") or 1)
    return max(1, threads)


def count_order_ideals(S: DegreeSet | Iterable[Weight], threads: int | None = None) -> int:
    poset = _Poset(S.points if isinstance(S, DegreeSet) else S)
    return _count_poset(poset, _threads(threads))


def count_order_filters(S: DegreeSet | Iterable[Weight], threads: int | None = None) -> int:
    poset = _Poset(S.points if isinstance(S, DegreeSet) else S).dual()
    return _count_poset(poset, _threads(threads))


def _count_poset(poset: _Poset, threads: int) -> int:
    down, up = tuple(poset.down), tuple(poset.up)
    if threads == 1 or len(poset.points) < 24:
        return _count(down, up, poset.full)
    masks = _split(poset, max(1, (threads - 1).bit_length() + 1))
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return sum(pool.map(_count_task, [(down, up, m) for m in masks]))


def order_ideals(S: DegreeSet | Iterable[Weight]) -> Iterator[frozenset]:
    """Down-closed subsets, in a fixed deterministic order."""
    poset = _Poset(S.points if isinstance(S, DegreeSet) else S)
    for mask in _iter_ideals(poset):
        yield poset.members(mask)


def order_filters(S: DegreeSet | Iterable[Weight]) -> Iterator[frozenset]:
    """Up-closed subsets, in a fixed deterministic order."""
    poset = _Poset(S.points if isinstance(S, DegreeSet) else S).dual()
    for mask in _iter_ideals(poset):
        yield poset.members(mask)


def _ideal_polynomial(poset: _Poset, exponents: list[tuple[int, ...]], nvars: int) -> LaurentPoly:
    """Sum over ideals of ``y^(sum of member exponents)``."""
    down, up = poset.down, poset.up

    def weight(mask):
        e = [0] * nvars
        for i in _bits(mask):
            for k, v in enumerate(exponents[i]):
                e[k] += v
        return tuple(e)

    @lru_cache(maxsize=None)
    def poly(m) -> LaurentPoly:
        if not m:
            return LaurentPoly.constant(nvars, 1)
        x = _pivot(m)
        taken = down[x] & m
        return poly(m & ~up[x]) + LaurentPoly.monomial(weight(taken)) * poly(m & ~down[x])

    return poly(poset.full)


FILTERS = "filters"
IDEALS = "ideals"


def f_polynomial(S: DegreeSet, side: str = FILTERS) -> LaurentPoly:
    """F-polynomial in ``y_1..y_N``.

    ``filters``: sum over order filters R of ``prod y_{vertex(lam)}``.
    ``ideals``: sum over order ideals I of ``prod y_{N+1-vertex(lam)}``,
    which is the filter side of ``negate(S)``.
    """
    ok, witness = is_interval_closed(S)
    if not ok:
        raise InvalidDegreeSet(f"degree set is not closed under intervals: {witness}")
    n = S.N
    poset = _Poset(S.points)
    exps = []
    for lam in poset.points:
        v = S.params.level(lam) - S.t
        k = v if side == FILTERS else n + 1 - v
        e = [0] * n
        e[k - 1] = 1
        exps.append(tuple(e))
    if side == FILTERS:
        return _ideal_polynomial(poset.dual(), exps, n)
    if side == IDEALS:
        return _ideal_polynomial(poset, exps, n)
    raise ValueError(f"side must be {FILTERS!r} or {IDEALS!r}, got {side!r}")


# -- constructions ----------------------------------------------------------------


def build_Sj(params: GRParams, j: int) -> DegreeSet:
    """Sign-restricted band poset: lam1, lam2 >= 0, lam3, lam4 <= 0, level in [j-N, j-1]."""
    if j < 1:
        raise ValueError("j must be at least 1")
    a, b, c, d, n = params.a, params.b, params.c, params.d, params.N
    top = j - 1
    pts = set()
    for l1 in range(top // a + 1):
        for l2 in range((top - a * l1) // b + 1):
            base = a * l1 + b * l2
            for m3 in range((top - base) // c + 1):
                for m4 in range((top - base - c * m3) // d + 1):
                    lam = (l1, l2, -m3, -m4)
                    if j - n <= params.level(lam) <= top:
                        pts.add(lam)
    return DegreeSet(params, j - n - 1, frozenset(pts))


DEFAULT_BUDGET = 10**6


def build_cyclic(
    params: GRParams, v: int, vbar: Iterable[int], mu: Weight, budget: int = DEFAULT_BUDGET
) -> DegreeSet:
    """Points lam >= mu of X_t whose band interval [mu, lam] stays over ``vbar``.

    ``t`` is chosen so that ``mu`` sits over ``v``.  Only band points between
    ``mu`` and ``lam`` are constrained.  The search walks unit steps from
    ``mu`` inside the level window ``[t+1, t+2N-1]``, which contains a
    monotone path to every member; ``InfiniteSet`` is raised once more than
    ``budget`` points have been visited.
    """
    vbar = frozenset(vbar)
    n = params.N
    if v not in vbar:
        raise ValueError(f"vertex {v} must belong to {sorted(vbar)}")
    if not 1 <= v <= n or not vbar <= set(range(1, n + 1)):
        raise ValueError("vertices must lie in 1..N")
    mu = tuple(mu)
    t = params.level(mu) - v
    lo, hi = t + 1, t + 2 * n - 1

    allowed = {}

    def admissible(lam) -> bool:
        # iterative post-order evaluation of the down-closed membership test
        if lam in allowed:
            return allowed[lam]
        stack = [lam]
        while stack:
            cur = stack[-1]
            if cur in allowed:
                stack.pop()
                continue
            lv = params.level(cur)
            if t + 1 <= lv <= t + n and lv - t not in vbar:
                allowed[cur] = False
                stack.pop()
                continue
            preds = [shift(cur, e, -1) for i, e in enumerate(UNIT) if cur[i] > mu[i]]
            pending = [p for p in preds if p not in allowed]
            if pending:
                stack.extend(pending)
                continue
            allowed[cur] = all(allowed[p] for p in preds)
            stack.pop()
        return allowed[lam]

    if not admissible(mu):
        raise InternalError("starting weight is not admissible")
    seen = {mu}
    queue = deque([mu])
    while queue:
        lam = queue.popleft()
        for e in UNIT:
            nxt = shift(lam, e)
            if nxt in seen or not lo <= params.level(nxt) <= hi:
                continue
            if admissible(nxt):
                seen.add(nxt)
                if len(seen) > budget:
                    raise InfiniteSet(
                        f"more than {budget} admissible weights visited; the set appears infinite"
                    )
                queue.append(nxt)
    pts = frozenset(lam for lam in seen if t + 1 <= params.level(lam) <= t + n)
    return DegreeSet(params, t, pts)


def negate(S: DegreeSet) -> DegreeSet:
    return DegreeSet(
        S.params,
        -(S.t + S.N + 1),
        frozenset(tuple(-x for x in lam) for lam in S.points),
    )


def sigma(S: DegreeSet) -> DegreeSet:
    """Swap coordinates 1<->3 and 2<->4 and move to the opposite quiver."""
    return DegreeSet(
        S.params.opposite(),
        -(S.t + S.N + 1),
        frozenset((l3, l4, l1, l2) for l1, l2, l3, l4 in S.points),
    )


def singleton(params: GRParams, v: int, mu: Weight = (0, 0, 0, 0)) -> DegreeSet:
    """The degree set of the simple representation at ``v`` placed at ``mu``."""
    return DegreeSet(params, params.level(mu) - v, frozenset([tuple(mu)]))
