"""Exact-rational search for pairwise disjoint rainbow faces whose convex
hulls share a common point.

Points live in Q^d (arbitrary-precision rationals), hull intersection is
decided by a phase-1 simplex method with Bland's anti-cycling rule, and every
positive answer carries a certificate of convex weights that re-verifies by
pure rational arithmetic.  Infeasibility is a value, not an error; search
budget exhaustion is reported distinctly from an exhaustive "none".
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .bounds import TheoremInstance, strict_inequality_note, volovikov_condition
from .complexes import Coloring


def parse_rational(value) -> Fraction:
    """Accept an int, a bare integer string, or a "num/den" string."""
    if isinstance(value, bool):
        raise ValueError("booleans are not coordinates")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise ValueError(f"cannot parse rational from {value!r}")


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class ColoredConfiguration:
    """Points in Q^d partitioned into color classes by point index."""

    d: int
    points: tuple[tuple[Fraction, ...], ...]
    coloring: Coloring

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("dimension must be positive")
        pts = tuple(tuple(parse_rational(c) for c in pt) for pt in self.points)
        object.__setattr__(self, "points", pts)
        for pt in pts:
            if len(pt) != self.d:
                raise ValueError(f"point {pt} does not have {self.d} coordinates")
        if self.coloring.n_vertices != len(pts):
            raise ValueError("coloring must partition exactly the point indices")

    @property
    def n_points(self) -> int:
        return len(self.points)

    @property
    def color_classes(self) -> tuple[tuple[int, ...], ...]:
        return self.coloring.classes

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "points": [[format_rational(c) for c in pt] for pt in self.points],
            "colors": [list(block) for block in self.coloring.classes],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "ColoredConfiguration":
        return cls(
            d=int(doc["d"]),
            points=tuple(tuple(pt) for pt in doc["points"]),
            coloring=Coloring(tuple(tuple(b) for b in doc["colors"])),
        )


@dataclass(frozen=True)
class RainbowFace:
    """A nonempty face choosing at most one point per color class."""

    members: tuple[tuple[int, int], ...]  # sorted (color, point index) pairs

    def __post_init__(self):
        members = tuple(sorted((int(c), int(v)) for c, v in self.members))
        if not members:
            raise ValueError("rainbow faces are nonempty")
        if len({c for c, _ in members}) != len(members):
            raise ValueError("at most one point per color")
        object.__setattr__(self, "members", members)

    @classmethod
    def from_members(cls, mapping: dict) -> "RainbowFace":
        return cls(tuple(mapping.items()))

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(v for _, v in self.members))

    @property
    def colors(self) -> tuple[int, ...]:
        return tuple(c for c, _ in self.members)

    def __len__(self):
        return len(self.members)

    def to_dict(self) -> dict:
        return {"members": {str(c): v for c, v in self.members}}


def enumerate_rainbow_faces(config: ColoredConfiguration, max_dim=None) -> list[RainbowFace]:
    """All nonempty rainbow faces of dimension at most ``max_dim`` (no cap
    when None), in deterministic lexicographic order of the color choices."""
    choice_lists = [
        [None] + list(block) for block in config.coloring.classes
    ]
    out = []
    for combo in itertools.product(*choice_lists):
        members = tuple(
            (ci, v) for ci, v in enumerate(combo) if v is not None
        )
        if not members:
            continue
        if max_dim is not None and len(members) - 1 > max_dim:
            continue
        out.append(RainbowFace(members))
    return out


# -- exact LP feasibility -----------------------------------------------------


def _pivot(tableau, r, c):
    prow = tableau[r]
    inv = Fraction(1) / prow[c]
    tableau[r] = [v * inv for v in prow]
    prow = tableau[r]
    for i, row in enumerate(tableau):
        if i == r:
            continue
        f = row[c]
        if f:
            tableau[i] = [a - f * b for a, b in zip(row, prow)]


def _phase_one_simplex(A, b):
    """Solve Ax = b, x >= 0 for a feasible x over the rationals.

    Phase-1 simplex minimizing the sum of artificial variables, entering and
    leaving chosen by Bland's rule (guaranteed termination).  Returns a list
    of Fractions or None when infeasible.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    tableau = []
    for i in range(m):
        row = list(A[i])
        rhs = b[i]
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        row.append(rhs)
        tableau.append(row)
    basis = [n + i for i in range(m)]  # artificial variable ids

    while True:
        art_rows = [i for i in range(m) if basis[i] >= n]
        if not art_rows:
            break
        enter = None
        for j in range(n):
            reduced = sum(tableau[i][j] for i in art_rows)
            if reduced > 0:
                enter = j
                break
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = tableau[i][enter]
            if a > 0:
                ratio = tableau[i][-1] / a
                if (
                    best is None
                    or ratio < best
                    or (ratio == best and basis[i] < basis[leave])
                ):
                    best = ratio
                    leave = i
        assert leave is not None, "phase-1 objective is bounded below by zero"
        _pivot(tableau, leave, enter)
        basis[leave] = enter

    if any(tableau[i][-1] != 0 for i in range(m) if basis[i] >= n):
        return None
    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = tableau[i][-1]
    return x


def _face_vertices(face) -> tuple[int, ...]:
    if isinstance(face, RainbowFace):
        return face.vertices
    return tuple(face)


def hulls_intersect(faces, config: ColoredConfiguration):
    """Decide whether the convex hulls of the given faces share a point.

    Returns ``(point, weights)`` with exact rational entries, or None when
    the intersection is empty; both answers are exact.  ``weights[i]`` is
    aligned with the sorted vertex list of face i.
    """
    vert_lists = [_face_vertices(f) for f in faces]
    if not vert_lists or any(not vs for vs in vert_lists):
        raise ValueError("every face must be nonempty")
    d = config.d
    pts = config.points

    # Conservative exact prefilter: a common point lies in every bounding box.
    for t in range(d):
        lo = max(min(pts[v][t] for v in vs) for vs in vert_lists)
        hi = min(max(pts[v][t] for v in vs) for vs in vert_lists)
        if lo > hi:
            return None

    offsets = [0]
    for vs in vert_lists:
        offsets.append(offsets[-1] + len(vs))
    ncols = offsets[-1]
    A = []
    b = []
    for i, vs in enumerate(vert_lists):
        row = [Fraction(0)] * ncols
        for j in range(len(vs)):
            row[offsets[i] + j] = Fraction(1)
        A.append(row)
        b.append(Fraction(1))
    for i in range(1, len(vert_lists)):
        for t in range(d):
            row = [Fraction(0)] * ncols
            for j, v in enumerate(vert_lists[0]):
                row[offsets[0] + j] = pts[v][t]
            for j, v in enumerate(vert_lists[i]):
                row[offsets[i] + j] -= pts[v][t]
            A.append(row)
            b.append(Fraction(0))

    x = _phase_one_simplex(A, b)
    if x is None:
        return None
    weights = tuple(
        tuple(x[offsets[i] + j] for j in range(len(vs)))
        for i, vs in enumerate(vert_lists)
    )
    first = vert_lists[0]
    point = tuple(
        sum((weights[0][j] * pts[v][t] for j, v in enumerate(first)), Fraction(0))
        for t in range(d)
    )
    return point, weights


# -- witnesses and search -----------------------------------------------------


@dataclass(frozen=True)
class Witness:
    """q pairwise disjoint rainbow faces, an exact common point of their
    hulls, and the convex weights certifying it."""

    faces: tuple[RainbowFace, ...]
    point: tuple[Fraction, ...]
    weights: tuple[tuple[Fraction, ...], ...]

    def verify(self, config: ColoredConfiguration) -> None:
        """Re-check the certificate by pure rational arithmetic; raises
        ValueError on the first violation."""
        seen: set[int] = set()
        for face in self.faces:
            vs = face.vertices
            if seen & set(vs):
                raise ValueError("witness faces are not pairwise disjoint")
            seen.update(vs)
        for face, ws in zip(self.faces, self.weights):
            vs = face.vertices
            if len(ws) != len(vs):
                raise ValueError("weight vector does not match face size")
            if any(w < 0 for w in ws):
                raise ValueError("negative convex weight")
            if sum(ws) != 1:
                raise ValueError("weights do not sum to one")
            for t in range(config.d):
                coord = sum(
                    (w * config.points[v][t] for w, v in zip(ws, vs)), Fraction(0)
                )
                if coord != self.point[t]:
                    raise ValueError("weighted sum does not reproduce the point")

    def to_dict(self) -> dict:
        return {
            "faces": [list(f.vertices) for f in self.faces],
            "members": [
                {str(c): v for c, v in f.members} for f in self.faces
            ],
            "point": [format_rational(c) for c in self.point],
            "weights": [[format_rational(w) for w in ws] for ws in self.weights],
        }


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a witness search: status is "found", "none" (exhaustive),
    or "budget" (hull-query budget hit before exhausting the space)."""

    status: str
    witness: Witness | None
    hull_queries: int
    nodes: int

    @property
    def found(self) -> bool:
        return self.status == "found"


class _BudgetExhausted(Exception):
    pass


def find_disjoint_intersecting_family(
    config: ColoredConfiguration,
    q: int,
    *,
    lp_budget=None,
    max_dim=None,
) -> SearchResult:
    """Depth-first search for q pairwise disjoint rainbow faces with
    intersecting hulls.

    Faces are tried larger-first (bigger hulls meet more easily), then by
    color signature and vertex order; the family is built in ascending face
    order.  A partial family is extended only while its hulls already
    intersect, which is sound because adding a face can only shrink the
    intersection.  Deterministic: equal inputs give the identical result.
    """
    if q < 1:
        raise ValueError("q must be at least 1")
    if max_dim is None:
        max_dim = min(config.d, config.coloring.n_colors - 1)
    faces = enumerate_rainbow_faces(config, max_dim)
    faces.sort(key=lambda f: (-len(f), f.colors, f.vertices))

    stats = {"queries": 0, "nodes": 0}

    def query(family):
        if lp_budget is not None and stats["queries"] >= lp_budget:
            raise _BudgetExhausted
        stats["queries"] += 1
        return hulls_intersect(family, config)

    def extend(start, chosen, used):
        for idx in range(start, len(faces)):
            face = faces[idx]
            verts = set(face.vertices)
            if used & verts:
                continue
            stats["nodes"] += 1
            res = query(chosen + [face])
            if res is None:
                continue
            if len(chosen) + 1 == q:
                point, weights = res
                return Witness(tuple(chosen + [face]), point, weights)
            deeper = extend(idx + 1, chosen + [face], used | verts)
            if deeper is not None:
                return deeper
        return None

    try:
        witness = extend(0, [], set())
    except _BudgetExhausted:
        return SearchResult("budget", None, stats["queries"], stats["nodes"])
    if witness is None:
        return SearchResult("none", None, stats["queries"], stats["nodes"])
    return SearchResult("found", witness, stats["queries"], stats["nodes"])


# -- instance generation and the experiment harness ---------------------------


def random_configuration(
    d: int, sizes, seed: int, coordinate_bound: int = 1000
) -> ColoredConfiguration:
    """Deterministic pseudorandom integer configuration: one point per vertex
    with coordinates in [-coordinate_bound, coordinate_bound], color classes
    taken as consecutive index blocks."""
    if coordinate_bound < 1:
        raise ValueError("coordinate bound must be at least 1")
    sizes = list(sizes)
    if not sizes or any(s < 1 for s in sizes):
        raise ValueError("sizes must be a nonempty list of positive integers")
    rng = random.Random(seed)
    points = []
    blocks = []
    start = 0
    for s in sizes:
        for _ in range(s):
            points.append(
                tuple(Fraction(rng.randint(-coordinate_bound, coordinate_bound)) for _ in range(d))
            )
        blocks.append(tuple(range(start, start + s)))
        start += s
    return ColoredConfiguration(d, tuple(points), Coloring(tuple(blocks)))


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    seed: int
    status: str
    hull_queries: int
    nodes: int


@dataclass(frozen=True)
class ExperimentReport:
    """Aggregate of seeded trials; exhaustive failures carry the full
    machine-readable configuration so they can be replayed."""

    instance: dict
    q: int
    mode: str  # "certified" when the verdict promises q faces, else "exploratory"
    trials: tuple[TrialRecord, ...]
    counterexamples: tuple[dict, ...]
    elapsed_seconds: float

    @property
    def successes(self) -> int:
        return sum(1 for t in self.trials if t.status == "found")

    @property
    def budget_exhausted(self) -> int:
        return sum(1 for t in self.trials if t.status == "budget")

    def to_dict(self) -> dict:
        return {
            "instance": self.instance,
            "q": self.q,
            "mode": self.mode,
            "trials": len(self.trials),
            "successes": self.successes,
            "budget_exhausted": self.budget_exhausted,
            "hull_queries_total": sum(t.hull_queries for t in self.trials),
            "per_trial": [
                {
                    "trial": t.trial,
                    "seed": t.seed,
                    "status": t.status,
                    "hull_queries": t.hull_queries,
                    "nodes": t.nodes,
                }
                for t in self.trials
            ],
            "counterexamples": [dict(c) for c in self.counterexamples],
            "elapsed_seconds": self.elapsed_seconds,
        }


def _trial_seed(seed: int, trial: int) -> int:
    return seed * 1_000_003 + trial


def verify_theorem_empirically(
    ti: TheoremInstance,
    trials: int,
    seed: int,
    *,
    q=None,
    lp_budget=None,
    coordinate_bound: int = 1000,
    max_dim=None,
) -> ExperimentReport:
    """Run seeded trials: generate a configuration with the bundle's class
    sizes, search for q pairwise disjoint rainbow faces with intersecting
    hulls, and aggregate the outcomes.

    When the bundle's verdict does not promise at least q faces the run is
    labelled exploratory.  An exhaustive "none" is recorded as a
    machine-readable counterexample report; on a certified bundle with an
    affine map that would contradict the theorem and almost certainly
    indicates a bug.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    verdict = volovikov_condition(ti)
    upgrade = strict_inequality_note(ti)
    promised = None
    if verdict.applicable:
        promised = upgrade.promised_faces if upgrade else verdict.q
    effective_q = ti.q if q is None else q
    mode = "certified" if promised is not None and effective_q <= promised else "exploratory"

    t0 = time.perf_counter()
    records = []
    counterexamples = []
    for trial in range(trials):
        s = _trial_seed(seed, trial)
        config = random_configuration(ti.d, ti.sizes, s, coordinate_bound)
        result = find_disjoint_intersecting_family(
            config, effective_q, lp_budget=lp_budget, max_dim=max_dim
        )
        if result.found:
            result.witness.verify(config)
        records.append(
            TrialRecord(trial, s, result.status, result.hull_queries, result.nodes)
        )
        if result.status == "none":
            counterexamples.append(
                {
                    "trial": trial,
                    "seed": s,
                    "q": effective_q,
                    "mode": mode,
                    "configuration": config.to_dict(),
                }
            )
    return ExperimentReport(
        instance=ti.to_dict(),
        q=effective_q,
        mode=mode,
        trials=tuple(records),
        counterexamples=tuple(counterexamples),
        elapsed_seconds=time.perf_counter() - t0,
    )
