"""Abstract simplicial complexes given by their facets.

Two degenerate values are kept apart on purpose: the *void* complex has no
faces at all, while the *empty* complex ``{∅}`` has exactly the empty face
and therefore reduced homology ``H_{-1} = k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Hashable, Iterable, Iterator, NamedTuple, Sequence

from .errors import InfeasibleError
from .linalg import Field, default_field, rank

Vertex = Hashable
Face = tuple


def _maximal(sets: Iterable[frozenset]) -> list[frozenset]:
    kept: list[frozenset] = []
    for s in sorted(set(sets), key=len, reverse=True):
        if not any(s <= k for k in kept):
            kept.append(s)
    return kept


class FVector(tuple):
    """Face counts ``(f_0, ..., f_d)``; ``f_i`` counts faces with i+1 vertices."""

    __slots__ = ()

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def dim(self) -> int:
        return len(self) - 1

    def get(self, i: int) -> int:
        return self[i] if 0 <= i < len(self) else 0


class SimplicialComplex:
    """A finite simplicial complex in canonical facet form.

    Facets are sorted tuples, the facet list is sorted, and non-maximal
    candidates are dropped at construction.
    """

    __slots__ = ("facets", "vertices", "_fsets")

    def __init__(self, facets: Iterable[Iterable[Vertex]] = ()):
        maximal = _maximal(frozenset(f) for f in facets)
        self.facets: tuple[Face, ...] = tuple(sorted(tuple(sorted(f)) for f in maximal))
        self.vertices: tuple[Vertex, ...] = tuple(sorted({v for f in self.facets for v in f}))
        self._fsets = tuple(frozenset(f) for f in self.facets)

    @classmethod
    def void(cls) -> SimplicialComplex:
        return cls(())

    @classmethod
    def empty(cls) -> SimplicialComplex:
        return cls([()])

    @classmethod
    def simplex(cls, vertices: Iterable[Vertex]) -> SimplicialComplex:
        return cls([tuple(vertices)])

    def is_void(self) -> bool:
        return not self.facets

    def is_empty(self) -> bool:
        """True for ``{∅}``: a complex whose only face is the empty face."""
        return self.facets == ((),)

    @property
    def dim(self) -> int | None:
        if not self.facets:
            return None
        return max(len(f) for f in self.facets) - 1

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.facets == other.facets

    def __hash__(self):
        return hash(self.facets)

    def __repr__(self):
        return f"SimplicialComplex({[list(f) for f in self.facets]!r})"

    def __contains__(self, face) -> bool:
        s = frozenset(face)
        return any(s <= f for f in self._fsets)

    def faces(self) -> Iterator[Face]:
        """Every face exactly once, by increasing size, ∅ included."""
        if self.is_void():
            return
        top = max(len(f) for f in self.facets)
        for k in range(top + 1):
            yield from sorted(self.faces_of_size(k))

    def faces_of_size(self, k: int) -> set[Face]:
        out: set[Face] = set()
        for f in self.facets:
            if len(f) >= k:
                out.update(combinations(f, k))
        return out

    def f_vector(self) -> FVector:
        """Face counts per dimension.

        With at most 16 facets this uses inclusion-exclusion over facet
        intersections, which never lists faces; otherwise faces are listed.
        """
        if self.is_void() or self.is_empty():
            return FVector(())
        top = max(len(f) for f in self.facets)
        if len(self.facets) <= 16:
            sizes = self._intersection_sizes()
            counts = [sum(sign * comb(n, k) for n, sign in sizes.items()) for k in range(1, top + 1)]
        else:
            counts = [len(self.faces_of_size(k)) for k in range(1, top + 1)]
        return FVector(counts)

    def _intersection_sizes(self) -> dict[int, int]:
        # signed multiset of |F_S| over non-empty facet subsets S with F_S != ∅
        sizes: dict[int, int] = {}
        fs = self._fsets

        def walk(start, inter, sign):
            for j in range(start, len(fs)):
                nxt = inter & fs[j]
                if nxt:
                    sizes[len(nxt)] = sizes.get(len(nxt), 0) + sign
                    walk(j + 1, nxt, -sign)

        for i, f in enumerate(fs):
            sizes[len(f)] = sizes.get(len(f), 0) + 1
            walk(i + 1, f, -1)
        return sizes

    def num_faces(self) -> int:
        """Number of non-empty faces."""
        return sum(self.f_vector())

    def reduced_euler_characteristic(self) -> int:
        if self.is_void():
            return 0
        return -1 + sum((-1) ** i * c for i, c in enumerate(self.f_vector()))

    def induced_subcomplex(self, W: Iterable[Vertex]) -> SimplicialComplex:
        W = frozenset(W)
        unknown = W - set(self.vertices)
        if unknown:
            raise ValueError(f"vertices {sorted(map(repr, unknown))} are not in the complex")
        if self.is_void():
            return SimplicialComplex.void()
        return SimplicialComplex(f & W for f in self._fsets)

    def deletion(self, v: Vertex) -> SimplicialComplex:
        return self.induced_subcomplex(set(self.vertices) - {v})

    def to_json(self) -> dict:
        return {
            "vertices": [_jsonable(v) for v in self.vertices],
            "facets": [[_jsonable(v) for v in f] for f in self.facets],
        }

    @classmethod
    def from_json(cls, data: dict) -> SimplicialComplex:
        facets = [tuple(_hashable(v) for v in f) for f in data["facets"]]
        return cls(facets)


def _jsonable(v):
    return list(v) if isinstance(v, tuple) else v


def _hashable(v):
    return tuple(v) if isinstance(v, list) else v


def from_facets(candidate_facets: Iterable[Iterable[Vertex]]) -> SimplicialComplex:
    return SimplicialComplex(candidate_facets)


# -- leaves and quasi-forests -------------------------------------------------


class Leaf(NamedTuple):
    facet: Face
    joint: Face | None  # None when the leaf is the only facet


def _joint_among(F: frozenset, others: Sequence[frozenset]) -> frozenset | None | bool:
    """Joint of F among ``others``; True if there are no others; None if F is no leaf."""
    if not others:
        return True
    union = frozenset().union(*(F & H for H in others))
    for G in others:
        if union <= G:
            return G
    return None


def is_leaf(delta: SimplicialComplex, F: Iterable[Vertex]) -> Leaf | None:
    """Return ``Leaf(F, joint)`` if F is a leaf of delta, else None.

    The joint is the first facet in canonical order that contains every
    intersection of F with another facet.
    """
    Fs = frozenset(F)
    if Fs not in delta._fsets:
        raise ValueError(f"{tuple(F)} is not a facet")
    others = [H for H in delta._fsets if H != Fs]
    j = _joint_among(Fs, others)
    face = tuple(sorted(Fs))
    if j is True:
        return Leaf(face, None)
    if j is None:
        return None
    return Leaf(face, tuple(sorted(j)))


@dataclass
class LeafOrder:
    """A leaf order together with how it was found."""

    facets: list[Face]
    joints: list[Face | None]
    greedy: bool = True


def quasi_forest_order(delta: SimplicialComplex, strategy: str = "auto") -> list[Face] | None:
    """A facet order ``F_1..F_q`` with each F_i a leaf of ``<F_1..F_i>``, or None.

    ``strategy`` is ``"greedy"`` (repeatedly strip the last leaf in
    canonical order), ``"backtrack"`` (memoised search over all leaf
    choices) or ``"auto"`` (greedy, then backtracking if greedy dead-ends).
    """
    found = leaf_order(delta, strategy)
    return None if found is None else found.facets


def leaf_order(delta: SimplicialComplex, strategy: str = "auto") -> LeafOrder | None:
    if strategy not in ("auto", "greedy", "backtrack"):
        raise ValueError(f"unknown strategy {strategy!r}")
    fs = list(delta._fsets)
    if strategy in ("auto", "greedy"):
        res = _greedy_order(fs)
        if res is not None or strategy == "greedy":
            return res
    res = _backtrack_order(fs)
    if res is not None:
        res.greedy = False
    return res


def _as_order(stripped: list[tuple[frozenset, frozenset | bool]]) -> LeafOrder:
    stripped = stripped[::-1]
    return LeafOrder(
        facets=[tuple(sorted(F)) for F, _ in stripped],
        joints=[None if j is True else tuple(sorted(j)) for _, j in stripped],
    )


def _greedy_order(fs: list[frozenset]) -> LeafOrder | None:
    # strip the last leaf in canonical order, so the order reads forwards
    remaining = list(fs)
    stripped = []
    while remaining:
        for i in range(len(remaining) - 1, -1, -1):
            F = remaining[i]
            others = remaining[:i] + remaining[i + 1:]
            j = _joint_among(F, others)
            if j is not None:
                stripped.append((F, j))
                del remaining[i]
                break
        else:
            return None
    return _as_order(stripped)


def _backtrack_order(fs: list[frozenset]) -> LeafOrder | None:
    dead: set[frozenset] = set()

    def search(remaining: frozenset) -> list | None:
        if not remaining:
            return []
        if remaining in dead:
            return None
        idx = sorted(remaining)
        for i in reversed(idx):
            others = [fs[k] for k in idx if k != i]
            j = _joint_among(fs[i], others)
            if j is None:
                continue
            rest = search(remaining - {i})
            if rest is not None:
                return [(fs[i], j)] + rest
        dead.add(remaining)
        return None

    found = search(frozenset(range(len(fs))))
    return None if found is None else _as_order(found)


def is_quasi_forest(delta: SimplicialComplex) -> bool:
    return quasi_forest_order(delta) is not None


def is_quasi_tree(delta: SimplicialComplex) -> bool:
    if delta.is_void() or delta.is_empty():
        return False
    return is_connected(delta) and quasi_forest_order(delta) is not None


# -- connectivity -------------------------------------------------------------


def _components(delta: SimplicialComplex) -> list[set]:
    parent = {v: v for v in delta.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for f in delta.facets:
        for v in f[1:]:
            a, b = find(f[0]), find(v)
            if a != b:
                parent[a] = b
    groups: dict = {}
    for v in delta.vertices:
        groups.setdefault(find(v), set()).add(v)
    return sorted(groups.values(), key=lambda g: min(g))


def is_connected(delta: SimplicialComplex) -> bool:
    """Connectivity of the 1-skeleton.

    The empty complex ``{∅}`` has no vertices and reports False; callers
    that mean "empty or connected" test ``is_empty()`` first.
    """
    if delta.is_void():
        raise ValueError("connectivity of the void complex is undefined")
    if delta.is_empty():
        return False
    return len(_components(delta)) == 1


def connected_components(delta: SimplicialComplex) -> list[SimplicialComplex]:
    if delta.is_void() or delta.is_empty():
        return []
    return [delta.induced_subcomplex(c) for c in _components(delta)]


# -- collapses ----------------------------------------------------------------


class CollapseStep(NamedTuple):
    free_face: Face
    facet: Face


def apply_collapse(delta: SimplicialComplex, free_face: Iterable[Vertex], facet: Iterable[Vertex]) -> SimplicialComplex:
    """Remove every face between ``free_face`` and ``facet``.

    Raises ``ValueError`` unless ``free_face`` is properly contained in
    ``facet`` and in no other facet.
    """
    s, F = frozenset(free_face), frozenset(facet)
    if F not in delta._fsets:
        raise ValueError(f"{sorted(F)} is not a facet")
    if not s < F:
        raise ValueError("free face must be a proper subset of the facet")
    if any(s <= H for H in delta._fsets if H != F):
        raise ValueError(f"{sorted(s)} is not a free face: it lies in another facet")
    rest = [H for H in delta._fsets if H != F]
    return SimplicialComplex(rest + [F - {u} for u in s])


def replay_collapses(delta: SimplicialComplex, steps: Iterable[tuple]) -> SimplicialComplex:
    for sigma, F in steps:
        delta = apply_collapse(delta, sigma, F)
    return delta


def _is_point(delta: SimplicialComplex) -> bool:
    return len(delta.facets) == 1 and len(delta.facets[0]) == 1


def collapse_sequence(delta: SimplicialComplex, budget: int = 20000) -> list[CollapseStep] | None:
    """Collapses reducing ``delta`` to a single vertex, or None.

    Complexes with a leaf order are collapsed leaf by leaf in reverse order
    (each leaf down to its intersection with its joint). Anything else gets a
    memoised search over free faces limited to ``budget`` visited states.
    """
    if delta.is_void() or delta.is_empty():
        return None
    if _is_point(delta):
        return []
    if not is_connected(delta):
        return None
    order = quasi_forest_order(delta)
    if order is not None:
        return _collapse_by_leaves(order)
    if delta.reduced_euler_characteristic() != 0:
        return None
    return _collapse_search(delta, budget)


def _collapse_by_leaves(order: list[Face]) -> list[CollapseStep]:
    steps: list[CollapseStep] = []
    fs = [frozenset(F) for F in order]
    for k in range(len(fs) - 1, 0, -1):
        F = fs[k]
        inter = frozenset().union(*(F & H for H in fs[:k]))
        cur = set(F)
        for v in sorted(F - inter):
            steps.append(CollapseStep((v,), tuple(sorted(cur))))
            cur.discard(v)
    last = sorted(fs[0])
    cur = set(last)
    for v in last[1:]:
        steps.append(CollapseStep((v,), tuple(sorted(cur))))
        cur.discard(v)
    return steps


def _collapse_search(delta: SimplicialComplex, budget: int) -> list[CollapseStep] | None:
    seen: set = set()
    visits = 0

    def moves(cx: SimplicialComplex):
        for F in cx.facets:
            Fs = frozenset(F)
            others = [H for H in cx._fsets if H != Fs]
            for k in range(1, len(F)):
                for sigma in combinations(F, k):
                    s = frozenset(sigma)
                    if not any(s <= H for H in others):
                        yield CollapseStep(sigma, F)

    def search(cx: SimplicialComplex):
        nonlocal visits
        if _is_point(cx):
            return []
        if cx.facets in seen or visits >= budget:
            return None
        seen.add(cx.facets)
        visits += 1
        for step in moves(cx):
            nxt = apply_collapse(cx, step.free_face, step.facet)
            if nxt.is_empty():
                continue
            rest = search(nxt)
            if rest is not None:
                return [step] + rest
        return None

    return search(delta)


# -- homology -----------------------------------------------------------------


@dataclass(frozen=True)
class HomologyProfile:
    """Ranks of reduced homology; indices not listed have rank 0."""

    ranks: dict[int, int]
    field: Field = field(default_factory=default_field)

    def rank(self, i: int) -> int:
        return self.ranks.get(i, 0)

    def is_acyclic(self) -> bool:
        return not any(self.ranks.values())

    def alternating_sum(self) -> int:
        return sum((-1) ** i * r for i, r in self.ranks.items())

    def to_json(self) -> dict:
        return {"field": str(self.field), "ranks": {str(i): r for i, r in sorted(self.ranks.items())}}


def nerve_faces(facets: Sequence[frozenset]) -> dict[int, list[tuple[int, ...]]]:
    """Faces of the nerve of a facet cover, grouped by dimension."""
    out: dict[int, list[tuple[int, ...]]] = {}

    def walk(face, inter):
        out.setdefault(len(face) - 1, []).append(face)
        for j in range(face[-1] + 1, len(facets)):
            nxt = inter & facets[j]
            if nxt:
                walk(face + (j,), nxt)

    for i, f in enumerate(facets):
        if f:
            walk((i,), f)
    return out


def _faces_by_dim(delta: SimplicialComplex) -> dict[int, list[Face]]:
    out: dict[int, list[Face]] = {}
    top = max(len(f) for f in delta.facets)
    for k in range(1, top + 1):
        out[k - 1] = sorted(delta.faces_of_size(k))
    return out


def chain_homology(faces: dict[int, list[Face]], field: Field) -> dict[int, int]:
    """Reduced homology ranks of a non-void complex given by all its faces."""
    if not faces or not faces.get(0):
        return {-1: 1}
    top = max(faces)
    index = {d: {f: i for i, f in enumerate(fl)} for d, fl in faces.items()}
    ranks = {0: 1}  # augmentation C_0 -> C_{-1} = k
    for d in range(1, top + 1):
        lower = index[d - 1]
        rows = []
        for f in faces[d]:
            rows.append({lower[f[:j] + f[j + 1:]]: (-1) ** j for j in range(len(f))})
        ranks[d] = rank(rows, field)
    out = {}
    for d in range(0, top + 1):
        h = len(faces[d]) - ranks[d] - ranks.get(d + 1, 0)
        if h:
            out[d] = h
    return out


def reduced_homology(
    delta: SimplicialComplex,
    field: Field | str | None = None,
    method: str = "auto",
    max_faces: int | None = None,
) -> HomologyProfile:
    """Reduced simplicial homology by exact rank computation.

    ``method="chain"`` uses the boundary matrices of ``delta`` itself;
    ``"nerve"`` uses those of the nerve of its facets (same homotopy type,
    often far smaller); ``"auto"`` picks the smaller of the two.
    """
    field = Field.parse(field)
    if method not in ("auto", "chain", "nerve"):
        raise ValueError(f"unknown homology method {method!r}")
    if delta.is_void():
        return HomologyProfile({}, field)
    if delta.is_empty():
        return HomologyProfile({-1: 1}, field)
    fs = delta._fsets
    if method == "auto":
        if len(fs) == 1 or frozenset.intersection(*fs):
            return HomologyProfile({}, field)  # simplex or cone
        chain_size = sum(2 ** len(f) for f in fs)
        method = "nerve" if 2 ** len(fs) < chain_size else "chain"
    if method == "nerve":
        faces = nerve_faces(fs)
    else:
        faces = _faces_by_dim(delta)
    total = sum(len(v) for v in faces.values())
    if max_faces is not None and total > max_faces:
        raise InfeasibleError(f"homology needs {total} faces, guard is {max_faces}")
    return HomologyProfile(chain_homology(faces, field), field)
