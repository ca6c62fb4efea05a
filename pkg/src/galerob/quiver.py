"""Gale-Robinson quivers, their lift to the plane, faces, paths and mutation.

Vertices are labelled ``1..N``.  A vertex ``v`` lifts to every lattice point
``(x, y)`` with ``a*x + c*y == v (mod N)``; arrows lift to compass or diagonal
steps whose direction and ``Z^4`` weight depend only on the arrow kind.
"""

from __future__ import annotations

import enum
import json
import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import (
    InternalError,
    InvalidParams,
    NonOrientedFace,
    NonPlanarSquare,
    NoPath,
    VertexInTwoCycle,
)

Weight = tuple[int, int, int, int]

ZERO: Weight = (0, 0, 0, 0)
FACE_WEIGHT: Weight = (1, 1, 1, 1)


def add_weights(*ws: Weight) -> Weight:
    return tuple(sum(c) for c in zip(*ws)) if ws else ZERO


def sub_weights(u: Weight, v: Weight) -> Weight:
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2], u[3] - v[3])


@dataclass(frozen=True)
class GRParams:
    """The integers defining a Gale-Robinson quiver; ``b`` and ``d`` are derived."""

    a: int
    c: int
    N: int

    def __post_init__(self):
        for name in ("a", "c", "N"):
            if not isinstance(getattr(self, name), int):
                raise InvalidParams(f"{name} must be an integer")
        if not (1 <= self.a < self.N and 1 <= self.c < self.N):
            raise InvalidParams(
                f"need 1 <= a < N and 1 <= c < N, got a={self.a} c={self.c} N={self.N}"
            )
        if math.gcd(self.a, self.c, self.N) != 1:
            raise InvalidParams(
                f"gcd(a, c, N) must be 1, got gcd({self.a}, {self.c}, {self.N}) = "
                f"{math.gcd(self.a, self.c, self.N)}"
            )

    @property
    def b(self) -> int:
        return self.N - self.a

    @property
    def d(self) -> int:
        return self.N - self.c

    def level(self, lam: Weight) -> int:
        return self.a * lam[0] + self.b * lam[1] - self.c * lam[2] - self.d * lam[3]

    def normalize(self, v: int) -> int:
        """Representative of ``v`` modulo N in ``1..N``."""
        return (v - 1) % self.N + 1

    def opposite(self) -> "GRParams":
        return opposite_params(self)

    def vertex_one_in_two_cycle(self) -> bool:
        return {self.a, self.b} == {self.c, self.d}

    def to_dict(self) -> dict:
        return {"a": self.a, "c": self.c, "N": self.N}

    @classmethod
    def from_dict(cls, data: dict) -> "GRParams":
        return cls(int(data["a"]), int(data["c"]), int(data["N"]))

    @classmethod
    def all_valid(cls, max_n: int) -> Iterator["GRParams"]:
        """Every valid parameter triple with ``2 <= N <= max_n``."""
        for n in range(2, max_n + 1):
            for a in range(1, n):
                for c in range(1, n):
                    if math.gcd(a, c, n) == 1:
                        yield cls(a, c, n)


def opposite_params(params: GRParams) -> GRParams:
    """Parameters of the opposite quiver: ``(a, b, c, d) -> (c, d, a, b)``."""
    return GRParams(params.c, params.a, params.N)


class ArrowKind(enum.Enum):
    # name = (index, lift displacement, weight)
    East = (0, (1, 0), (1, 0, 0, 0))
    West = (1, (-1, 0), (0, 1, 0, 0))
    South = (2, (0, -1), (0, 0, 1, 0))
    North = (3, (0, 1), (0, 0, 0, 1))
    Southeast = (4, (1, -1), (1, 0, 1, 0))
    Northeast = (5, (1, 1), (1, 0, 0, 1))
    Southwest = (6, (-1, -1), (0, 1, 1, 0))
    Northwest = (7, (-1, 1), (0, 1, 0, 1))

    @property
    def index(self) -> int:
        return self.value[0]

    @property
    def displacement(self) -> tuple[int, int]:
        return self.value[1]

    @property
    def weight(self) -> Weight:
        return self.value[2]

    @property
    def is_diagonal(self) -> bool:
        return self.index >= 4

    def offset(self, params: GRParams) -> int:
        """``target - source`` before reduction modulo N."""
        return params.level(self.weight)

    def exists_at(self, params: GRParams, i: int) -> bool:
        a, b, c, d, n = params.a, params.b, params.c, params.d, params.N
        if self is ArrowKind.East:
            return i + a <= n
        if self is ArrowKind.West:
            return i + b <= n
        if self is ArrowKind.South:
            return i - c >= 1
        if self is ArrowKind.North:
            return i - d >= 1
        horizontal = a if self in (ArrowKind.Southeast, ArrowKind.Northeast) else b
        vertical = c if self in (ArrowKind.Southeast, ArrowKind.Southwest) else d
        return i + horizontal > n and i - vertical < 1


KINDS = tuple(ArrowKind)


@dataclass(frozen=True, order=True)
class Arrow:
    source: int
    kind_index: int
    target: int

    @property
    def kind(self) -> ArrowKind:
        return KINDS[self.kind_index]

    @property
    def weight(self) -> Weight:
        return self.kind.weight

    @property
    def displacement(self) -> tuple[int, int]:
        return self.kind.displacement

    def __repr__(self):
        return f"Arrow({self.source}->{self.target} {self.kind.name})"


def make_arrow(params: GRParams, source: int, kind: ArrowKind) -> Arrow:
    return Arrow(source, kind.index, params.normalize(source + kind.offset(params)))


@dataclass(frozen=True)
class Quiver:
    params: GRParams
    arrows: tuple[Arrow, ...]

    @property
    def N(self) -> int:
        return self.params.N

    @cached_property
    def _by_source_kind(self) -> dict:
        return {(ar.source, ar.kind): ar for ar in self.arrows}

    def arrow_from(self, u: int, kind: ArrowKind) -> Arrow | None:
        return self._by_source_kind.get((u, kind))

    def out_arrows(self, u: int) -> list[Arrow]:
        return [ar for ar in self.arrows if ar.source == u]

    def in_arrows(self, v: int) -> list[Arrow]:
        return [ar for ar in self.arrows if ar.target == v]

    def multiplicity(self, i: int, j: int) -> int:
        return sum(1 for ar in self.arrows if ar.source == i and ar.target == j)

    def census(self) -> Counter:
        """Multiset of ``(source, target)`` pairs."""
        return Counter((ar.source, ar.target) for ar in self.arrows)

    def to_digraph(self) -> "Digraph":
        return Digraph(self.N, self.census())

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "arrows": [
                {"source": ar.source, "target": ar.target, "kind": ar.kind.name}
                for ar in self.arrows
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "Quiver":
        params = GRParams.from_dict(data["params"])
        arrows = []
        for item in data["arrows"]:
            kind = ArrowKind[item["kind"]]
            ar = make_arrow(params, int(item["source"]), kind)
            if ar.target != int(item["target"]):
                raise InvalidParams(f"arrow {item} violates its kind offset")
            arrows.append(ar)
        return cls(params, tuple(arrows))

    @classmethod
    def from_json(cls, text: str) -> "Quiver":
        return cls.from_dict(json.loads(text))


def build_quiver(params: GRParams) -> Quiver:
    """Emit one arrow per (vertex, kind) whose existence condition holds.

    Arrows are ordered by source, then by kind in table order.
    """
    arrows = [
        make_arrow(params, i, kind)
        for i in range(1, params.N + 1)
        for kind in KINDS
        if kind.exists_at(params, i)
    ]
    return Quiver(params, tuple(arrows))


def lift_vertex(params: GRParams, x: int, y: int) -> int:
    return params.normalize(params.a * x + params.c * y)


# -- paths -------------------------------------------------------------------


@dataclass(frozen=True)
class Path:
    """A path in the quiver.

    ``arrows`` are stored in the order they are traversed, so the target of
    each arrow is the source of the next one.  The length-zero path at
    ``start`` has no arrows.
    """

    start: int
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        here = self.start
        for ar in self.arrows:
            if ar.source != here:
                raise ValueError(f"arrows do not compose at vertex {here}: {self.arrows}")
            here = ar.target

    @property
    def end(self) -> int:
        return self.arrows[-1].target if self.arrows else self.start

    @property
    def weight(self) -> Weight:
        return add_weights(*(ar.weight for ar in self.arrows)) if self.arrows else ZERO

    @property
    def displacement(self) -> tuple[int, int]:
        dx = sum(ar.displacement[0] for ar in self.arrows)
        dy = sum(ar.displacement[1] for ar in self.arrows)
        return dx, dy

    def __len__(self):
        return len(self.arrows)


def find_path(quiver: Quiver, u: int, lam: Weight) -> Path:
    """Greedy path from ``u`` of weight ``lam`` (all components nonnegative).

    The endpoint is ``u + level(lam)``, which must itself be a vertex; if it
    is not, no path of that weight exists and :class:`NoPath` is raised.
    """
    p = quiver.params
    if any(x < 0 for x in lam):
        raise NoPath(f"weight {lam} has a negative component")
    v = u + p.level(lam)
    if not 1 <= v <= p.N:
        raise NoPath(f"no path from {u} of weight {lam}: endpoint {v} is not a vertex")

    E, W, S, Nn = ArrowKind.East, ArrowKind.West, ArrowKind.South, ArrowKind.North
    rest = list(lam)
    here = u
    taken = []
    while any(rest):
        if rest[0] > 0:
            kind = _greedy_step(p, here, rest, E, ArrowKind.Southeast, ArrowKind.Northeast)
        elif rest[1] > 0:
            kind = _greedy_step(p, here, rest, W, ArrowKind.Southwest, ArrowKind.Northwest)
        elif rest[2] > 0:
            kind = S
        else:
            kind = Nn
        ar = quiver.arrow_from(here, kind) if kind is not None else None
        if ar is None:
            raise InternalError(f"greedy path construction stalled at {here} with {rest}")
        taken.append(ar)
        rest = [r - w for r, w in zip(rest, kind.weight)]
        if min(rest) < 0:
            raise InternalError(f"greedy path overshot weight {lam}")
        here = ar.target
    if here != v:
        raise InternalError(f"path ended at {here}, expected {v}")
    return Path(u, tuple(taken))


def _greedy_step(p, here, rest, plain, south_diag, north_diag):
    if plain.exists_at(p, here):
        return plain
    if rest[2] > 0:
        return ArrowKind.South if ArrowKind.South.exists_at(p, here) else south_diag
    if rest[3] > 0:
        return ArrowKind.North if ArrowKind.North.exists_at(p, here) else north_diag
    return None


# -- faces -------------------------------------------------------------------

CCW = "counterclockwise"
CW = "clockwise"

# corner positions inside the unit square
_LL, _LR, _UR, _UL = (0, 0), (1, 0), (1, 1), (0, 1)


@dataclass(frozen=True)
class Face:
    square: int  # vertex label of the lower-left corner of the unit square
    boundary: Path
    orientation: str
    shape: str

    @property
    def sign(self) -> int:
        """Coefficient of the boundary cycle in the potential."""
        return 1 if self.orientation == CCW else -1

    @property
    def weight(self) -> Weight:
        return self.boundary.weight


def _corner_labels(p: GRParams, v: int) -> dict:
    return {
        _LL: v,
        _LR: p.normalize(v + p.a),
        _UR: p.normalize(v + p.a + p.c),
        _UL: p.normalize(v + p.c),
    }


def _square_segments(quiver: Quiver, v: int) -> dict:
    """Directed lifted segments of the unit square with lower-left label ``v``.

    Maps an unordered corner pair to a list of ``(arrow, tail, head)``.
    """
    lab = _corner_labels(quiver.params, v)
    segs = {}

    def place(tail, head, kind):
        ar = quiver.arrow_from(lab[tail], kind)
        if ar is not None:
            segs.setdefault(frozenset((tail, head)), []).append((ar, tail, head))

    place(_LL, _LR, ArrowKind.East)
    place(_LR, _LL, ArrowKind.West)
    place(_UL, _UR, ArrowKind.East)
    place(_UR, _UL, ArrowKind.West)
    place(_LL, _UL, ArrowKind.North)
    place(_UL, _LL, ArrowKind.South)
    place(_LR, _UR, ArrowKind.North)
    place(_UR, _LR, ArrowKind.South)
    place(_LL, _UR, ArrowKind.Northeast)
    place(_UR, _LL, ArrowKind.Southwest)
    place(_LR, _UL, ArrowKind.Northwest)
    place(_UL, _LR, ArrowKind.Southeast)

    for side in ((_LL, _LR), (_UL, _UR), (_LL, _UL), (_LR, _UR)):
        if len(segs.get(frozenset(side), ())) != 1:
            raise InternalError(f"square {v}: side {side} is not covered by exactly one arrow")
    return segs


def _region_face(v, corners, segs, shape, diagonal_choice=None):
    """Orient the region bounded by ``corners`` (listed counterclockwise)."""
    along = []
    for tail, head in zip(corners, corners[1:] + corners[:1]):
        options = segs[frozenset((tail, head))]
        along.append([(ar, t == tail) for ar, t, _ in options])
    # Pick the unique orientation for which every side offers a matching arrow.
    for ccw in (True, False):
        chosen = []
        for opts in along:
            match = [ar for ar, forward in opts if forward == ccw]
            if len(match) != 1:
                break
            chosen.append(match[0])
        else:
            if not ccw:
                chosen.reverse()
            start = min(range(len(chosen)), key=lambda i: chosen[i])
            cyc = tuple(chosen[start:] + chosen[:start])
            return Face(v, Path(cyc[0].source, cyc), CCW if ccw else CW, shape)
    raise NonOrientedFace(f"square {v}: region {corners} is not bounded by an oriented cycle")


def square_faces(quiver: Quiver, v: int) -> list[Face]:
    """Faces inside the unit square whose lower-left corner has label ``v``."""
    segs = _square_segments(quiver, v)
    main = segs.get(frozenset((_LL, _UR)), [])
    anti = segs.get(frozenset((_LR, _UL)), [])
    if main and anti:
        raise NonPlanarSquare(f"square {v}: both diagonals carry arrows")
    if not main and not anti:
        return [_region_face(v, [_LL, _LR, _UR, _UL], segs, "quadrilateral")]
    if main:
        tri = [[_LL, _LR, _UR], [_LL, _UR, _UL]]
        diag = main
    else:
        tri = [[_LL, _LR, _UL], [_LR, _UR, _UL]]
        diag = anti
    faces = [_region_face(v, corners, segs, "triangle") for corners in tri]
    if len(diag) == 2:
        used = {ar for f in faces for ar in f.boundary.arrows if ar.kind.is_diagonal}
        if len(used) != 2 or faces[0].orientation != faces[1].orientation:
            raise NonOrientedFace(f"square {v}: antiparallel diagonals do not bound a digon")
        first = min(ar for ar, _, _ in diag)
        second = max(ar for ar, _, _ in diag)
        digon_orientation = CW if faces[0].orientation == CCW else CCW
        faces.append(Face(v, Path(first.source, (first, second)), digon_orientation, "digon"))
    return faces


def enumerate_faces(quiver: Quiver) -> list[Face]:
    """All faces of the torus embedding, one representative per torus orbit.

    Unit squares of the lift are identified under the translation lattice
    ``{(x, y): a*x + c*y == 0 mod N}``, so the label of the lower-left
    corner is a canonical orbit representative.
    """
    faces = []
    for v in range(1, quiver.N + 1):
        faces.extend(square_faces(quiver, v))
    return faces


def potential(quiver: Quiver) -> list[tuple[int, Path]]:
    """Signed face boundaries: +1 counterclockwise, -1 clockwise."""
    return [(f.sign, f.boundary) for f in enumerate_faces(quiver)]


def incident_rotation(quiver: Quiver, v: int) -> list[tuple[Arrow, bool]]:
    """Arrows at a lift of ``v`` in counterclockwise order, flagged outgoing.

    Antiparallel diagonals share a direction; they are ordered by the side of
    the diagonal on which the triangle using each of them lies.
    """
    p = quiver.params
    n = p.normalize
    # (square label, corner of v in that square, opposite corner)
    spots = [
        (v, _LL, _LR), (n(v - p.a), _LR, _LL),
        (v, _LL, _UL), (n(v - p.c), _UL, _LL),
        (v, _LL, _UR), (n(v - p.a - p.c), _UR, _LL),
        (n(v - p.a), _LR, _UL), (n(v - p.c), _UL, _LR),
    ]
    entries = []
    for sq, here, there in spots:
        opts = _square_segments(quiver, sq).get(frozenset((here, there)), [])
        direction = (there[0] - here[0], there[1] - here[1])
        angle = math.atan2(direction[1], direction[0])
        side_of = {}
        if len(opts) == 2:
            for f in square_faces(quiver, sq):
                if f.shape != "triangle":
                    continue
                for ar in f.boundary.arrows:
                    if ar in {o[0] for o in opts}:
                        centre = _triangle_third_corner(f, sq, quiver, here, there)
                        side_of[ar] = centre
        for ar, tail, _ in opts:
            eps = 0.0
            if ar in side_of:
                sx, sy = side_of[ar]
                rel = (sx - here[0], sy - here[1])
                cross = direction[0] * rel[1] - direction[1] * rel[0]
                eps = 1e-3 if cross > 0 else -1e-3
            entries.append((angle + eps, ar, tail == here))
    entries.sort(key=lambda e: e[0])
    return [(ar, out) for _, ar, out in entries]


def _triangle_third_corner(face, sq, quiver, here, there):
    lab = _corner_labels(quiver.params, sq)
    segs = _square_segments(quiver, sq)
    for corner in (_LL, _LR, _UR, _UL):
        if corner in (here, there):
            continue
        pair_a = segs.get(frozenset((corner, here)), [])
        pair_b = segs.get(frozenset((corner, there)), [])
        used = set(face.boundary.arrows)
        if any(o[0] in used for o in pair_a) and any(o[0] in used for o in pair_b):
            return corner
    raise InternalError(f"could not locate triangle in square {sq} ({lab})")


def dimer_alternation_holds(quiver: Quiver) -> bool:
    """Incident arrows alternate incoming/outgoing around every vertex."""
    for v in range(1, quiver.N + 1):
        rot = incident_rotation(quiver, v)
        if len(rot) % 2:
            return False
        for (_, out1), (_, out2) in zip(rot, rot[1:] + rot[:1]):
            if out1 == out2:
                return False
    return True


# -- plain multigraphs and classical mutation ---------------------------------


@dataclass(frozen=True)
class Digraph:
    """Untyped directed multigraph on ``1..n`` (arrow multiplicities)."""

    n: int
    counts: Counter

    def __post_init__(self):
        object.__setattr__(self, "counts", Counter({k: m for k, m in self.counts.items() if m}))

    def __eq__(self, other):
        return isinstance(other, Digraph) and self.n == other.n and self.counts == other.counts

    def __hash__(self):
        return hash((self.n, frozenset(self.counts.items())))

    def mult(self, i: int, j: int) -> int:
        return self.counts.get((i, j), 0)

    def two_cycles(self) -> list[tuple[int, int]]:
        return sorted(
            (i, j) for (i, j) in self.counts if i < j and self.mult(j, i)
        )

    def loops(self) -> list[int]:
        return sorted(i for (i, j) in self.counts if i == j)

    def is_two_acyclic(self) -> bool:
        return not self.two_cycles() and not self.loops()

    def in_two_cycle(self, k: int) -> bool:
        return self.mult(k, k) > 0 or any(
            self.mult(k, j) and self.mult(j, k) for j in range(1, self.n + 1) if j != k
        )

    def relabel(self, shift: int) -> "Digraph":
        """Apply ``v -> v + shift`` modulo n (representatives in 1..n)."""
        r = lambda v: (v - 1 + shift) % self.n + 1
        return Digraph(self.n, Counter({(r(i), r(j)): m for (i, j), m in self.counts.items()}))

    def mutate(self, k: int) -> "Digraph":
        return classical_mutation(self, k)

    def adjacency(self) -> list[list[int]]:
        """Skew-symmetric exchange matrix ``b[i][j] = #(i->j) - #(j->i)``."""
        return [
            [self.mult(i, j) - self.mult(j, i) for j in range(1, self.n + 1)]
            for i in range(1, self.n + 1)
        ]


def classical_mutation(quiver: Quiver | Digraph, k: int) -> Digraph:
    """Compose through ``k``, reverse the arrows at ``k``, cancel 2-cycles."""
    g = quiver.to_digraph() if isinstance(quiver, Quiver) else quiver
    if g.in_two_cycle(k):
        raise VertexInTwoCycle(f"vertex {k} lies on a 2-cycle or loop")
    new = Counter()
    for (i, j), m in g.counts.items():
        if i == k or j == k:
            new[(j, i)] += m
        else:
            new[(i, j)] += m
    ins = [(i, m) for (i, j), m in g.counts.items() if j == k]
    outs = [(j, m) for (i, j), m in g.counts.items() if i == k]
    for i, mi in ins:
        for j, mj in outs:
            new[(i, j)] += mi * mj
    for i in range(1, g.n + 1):
        for j in range(i + 1, g.n + 1):
            m = min(new[(i, j)], new[(j, i)])
            if m:
                new[(i, j)] -= m
                new[(j, i)] -= m
    return Digraph(g.n, new)


# -- export ------------------------------------------------------------------


def export_dot(quiver: Quiver | Digraph, name: str = "Q") -> str:
    lines = [f"digraph {name} {{"]
    n = quiver.N if isinstance(quiver, Quiver) else quiver.n
    for v in range(1, n + 1):
        lines.append(f'  {v} [label="{v}"];')
    if isinstance(quiver, Quiver):
        for ar in quiver.arrows:
            lines.append(f'  {ar.source} -> {ar.target} [label="{ar.kind.name}"];')
    else:
        for (i, j), m in sorted(quiver.counts.items()):
            for _ in range(m):
                lines.append(f"  {i} -> {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_edge_count(text: str) -> int:
    return sum(1 for line in text.splitlines() if "->" in line)


def arrows_between(arrows: Iterable[Arrow], i: int, j: int) -> list[Arrow]:
    return [ar for ar in arrows if ar.source == i and ar.target == j]
