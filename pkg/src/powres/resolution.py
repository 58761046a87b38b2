"""Labeled complexes as supports of free resolutions, and Betti numbers.

A labeled complex assigns a monomial to every vertex; faces carry the lcm of
their vertex labels. Homogenizing its chain complex gives a complex of free
modules, which is a resolution exactly when every subcomplex cut out by the
divisors of an lcm-lattice element is empty or acyclic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import InfeasibleError
from .linalg import Field
from .monomial import Monomial, MonomialIdeal, VariableSet, divides, lcm, lcm_all, minimalize
from .simplicial import SimplicialComplex, is_connected, is_quasi_tree, reduced_homology

DEFAULT_MAX_FACES = 2**16


@dataclass(frozen=True)
class LabeledComplex:
    complex: SimplicialComplex
    labels: Mapping[Hashable, Monomial]
    vars: VariableSet

    def __post_init__(self):
        missing = [v for v in self.complex.vertices if v not in self.labels]
        if missing:
            raise ValueError(f"unlabeled vertices: {missing[:5]}")
        labels = {v: self.labels[v] for v in self.complex.vertices}
        for m in labels.values():
            if m.vars != self.vars:
                raise ValueError(f"label {m} is not over {self.vars}")
        object.__setattr__(self, "labels", labels)

    @property
    def vertices(self):
        return self.complex.vertices

    def label(self, face: Iterable) -> Monomial:
        return lcm_all((self.labels[v] for v in face), self.vars)

    def generators(self) -> list[Monomial]:
        """Distinct vertex labels in vertex order."""
        return list(dict.fromkeys(self.labels[v] for v in self.vertices))

    def f_vector(self):
        return self.complex.f_vector()

    def to_json(self) -> dict:
        out = self.complex.to_json()
        out["labels"] = [[_jsonable(v), str(self.labels[v])] for v in self.vertices]
        out["vars"] = list(self.vars.names)
        return out


def _jsonable(v):
    return list(v) if isinstance(v, tuple) else v


# -- lcm lattice --------------------------------------------------------------


@dataclass(frozen=True)
class LcmLattice:
    """lcms of all non-empty subsets of ``generators``, ordered by divisibility."""

    generators: tuple[Monomial, ...]
    elements: tuple[Monomial, ...]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, m):
        return m in set(self.elements)

    def below(self, M: Monomial) -> list[Monomial]:
        return [m for m in self.elements if divides(m, M)]


def lcm_lattice(gens: Sequence[Monomial], limit: int | None = None) -> LcmLattice:
    """Closure of ``gens`` under lcm; elements sorted by degree then lex."""
    gens = list(dict.fromkeys(gens))
    if not gens:
        raise ValueError("lcm lattice of no generators")
    elements = set(gens)
    frontier = list(gens)
    while frontier:
        new = set()
        for a in frontier:
            for g in gens:
                m = lcm(a, g)
                if m not in elements:
                    new.add(m)
        elements |= new
        if limit is not None and len(elements) > limit:
            raise InfeasibleError(f"lcm lattice exceeds {limit} elements")
        frontier = list(new)
    return LcmLattice(tuple(gens), tuple(sorted(elements, key=lambda m: (m.degree, m))))


def restrict_to_divisors(L: LabeledComplex, M: Monomial) -> SimplicialComplex:
    """Induced subcomplex on vertices whose label divides M."""
    return L.complex.induced_subcomplex(v for v in L.vertices if divides(L.labels[v], M))


# -- support criteria ---------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """Outcome of a check; truthy iff it passed.

    On failure ``witness`` is the offending lattice monomial (or face label)
    and ``degree`` the homology degree or face that shows it.
    """

    ok: bool
    check: str
    witness: Monomial | None = None
    degree: int | None = None
    face: tuple | None = None
    checked: int = 0
    detail: str = ""

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        out = {"check": self.check, "ok": self.ok, "checked": self.checked}
        if self.witness is not None:
            out["witness"] = str(self.witness)
        if self.degree is not None:
            out["degree"] = self.degree
        if self.face is not None:
            out["face"] = [_jsonable(v) for v in self.face]
        if self.detail:
            out["detail"] = self.detail
        return out


def _divisor_sets(L: LabeledComplex, lattice: LcmLattice):
    """Yield (M, vertex set of Delta_M), skipping vertex sets already seen."""
    labels = [(v, L.labels[v].exps) for v in L.vertices]
    seen = set()
    for M in lattice:
        me = M.exps
        V = frozenset(v for v, e in labels if all(a <= b for a, b in zip(e, me)))
        if V in seen:
            continue
        seen.add(V)
        yield M, V


def supports_resolution_bps(
    L: LabeledComplex,
    field: Field | str | None = None,
    lattice: LcmLattice | None = None,
    max_faces: int | None = DEFAULT_MAX_FACES,
) -> Certificate:
    """Every Delta_M, M in the lcm lattice, is empty or acyclic over ``field``."""
    field = Field.parse(field)
    if L.complex.is_void():
        return Certificate(True, "bps", detail="void complex")
    lattice = lattice or lcm_lattice(L.generators())
    n = 0
    for M, V in _divisor_sets(L, lattice):
        n += 1
        if not V:
            continue
        sub = L.complex.induced_subcomplex(V)
        h = reduced_homology(sub, field, max_faces=max_faces)
        if not h.is_acyclic():
            deg = min(i for i, r in h.ranks.items() if r)
            return Certificate(False, "bps", witness=M, degree=deg, checked=n,
                               detail=f"reduced homology in degree {deg} over {field}")
    return Certificate(True, "bps", checked=n, detail=f"over {field}")


def supports_resolution_quasitree(L: LabeledComplex, lattice: LcmLattice | None = None) -> Certificate:
    """Every Delta_M is empty or connected; only valid for quasi-tree supports."""
    if not is_quasi_tree(L.complex):
        raise ValueError("the connectivity criterion needs a quasi-tree")
    lattice = lattice or lcm_lattice(L.generators())
    n = 0
    for M, V in _divisor_sets(L, lattice):
        n += 1
        if len(V) <= 1:
            continue
        sub = L.complex.induced_subcomplex(V)
        if not is_connected(sub):
            return Certificate(False, "quasitree", witness=M, degree=0, checked=n,
                               detail="disconnected restriction")
    return Certificate(True, "quasitree", checked=n)


def is_minimal_support(L: LabeledComplex, max_faces: int | None = None) -> Certificate:
    """No face has the same label as one of its codimension-one faces.

    Faces are scanned by increasing size so that small failures show up
    first. A label equality between a face and any smaller subface already
    forces one at codimension one, since labels only grow along chains.
    """
    cx = L.complex
    if cx.is_void() or cx.is_empty():
        return Certificate(True, "minimal")
    exps = {v: L.labels[v].exps for v in cx.vertices}
    top = max(len(f) for f in cx.facets)
    seen = 0
    for k in range(2, top + 1):
        faces = cx.faces_of_size(k)
        seen += len(faces)
        if max_faces is not None and seen > max_faces:
            raise InfeasibleError(f"minimality check exceeds {max_faces} faces")
        for face in sorted(faces):
            for j in range(k):
                rest = face[:j] + face[j + 1:]
                mv = exps[face[j]]
                m_rest = [max(col) for col in zip(*(exps[u] for u in rest))]
                if all(a <= b for a, b in zip(mv, m_rest)):
                    return Certificate(False, "minimal", witness=L.label(face), face=face, degree=k - 1,
                                       checked=seen, detail=f"label unchanged after removing {face[j]}")
    return Certificate(True, "minimal", checked=seen)


def is_minimal_support_bruteforce(L: LabeledComplex) -> bool:
    """Compare every face with every proper non-empty subface. Small inputs only."""
    for face in L.complex.faces():
        if len(face) < 2:
            continue
        M = L.label(face)
        for k in range(1, len(face)):
            for sub in combinations(face, k):
                if L.label(sub) == M:
                    return False
    return True


# -- homogenization -----------------------------------------------------------


@dataclass(frozen=True)
class Entry:
    row: int
    col: int
    scalar: int
    monomial: Monomial

    def to_json(self) -> list:
        return [self.row, self.col, self.scalar, str(self.monomial)]


@dataclass
class HomogenizedResolution:
    """Free modules indexed by faces and the homogenized simplicial differential.

    ``bases[i]`` lists the faces with i+1 vertices; ``differentials[i]`` maps
    degree i to degree i-1 (i >= 1) with rows indexing ``bases[i-1]``.
    """

    vars: VariableSet
    field: Field
    bases: list[list[tuple]]
    multidegrees: list[list[Monomial]]
    differentials: dict[int, list[Entry]] = field(default_factory=dict)

    @property
    def ranks(self) -> list[int]:
        return [len(b) for b in self.bases]

    def matrix(self, i: int) -> list[list[str]]:
        """Dense matrix of ``differentials[i]`` with entries like ``-x*z``."""
        rows, cols = len(self.bases[i - 1]), len(self.bases[i])
        out = [["0"] * cols for _ in range(rows)]
        for e in self.differentials.get(i, []):
            m = str(e.monomial)
            if e.scalar == 1:
                out[e.row][e.col] = m
            elif e.scalar == -1:
                out[e.row][e.col] = "-" + m
            else:
                out[e.row][e.col] = f"{e.scalar}*{m}"
        return out

    def check_complex(self) -> bool:
        """Symbolically verify that consecutive differentials compose to zero."""
        for i in range(2, len(self.bases)):
            upper = self.differentials.get(i, [])
            lower_by_col: dict[int, list[Entry]] = {}
            for e in self.differentials.get(i - 1, []):
                lower_by_col.setdefault(e.col, []).append(e)
            acc: dict[tuple[int, int, Monomial], int] = {}
            for e in upper:
                for d in lower_by_col.get(e.row, []):
                    key = (d.row, e.col, e.monomial * d.monomial)
                    acc[key] = acc.get(key, 0) + e.scalar * d.scalar
            if any(v for v in acc.values()):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "field": str(self.field),
            "ranks": self.ranks,
            "multidegrees": [[str(m) for m in mds] for mds in self.multidegrees],
            "differentials": {str(i): [e.to_json() for e in es] for i, es in sorted(self.differentials.items())},
        }


def homogenize(L: LabeledComplex, field: Field | str | None = None,
               max_faces: int | None = DEFAULT_MAX_FACES) -> HomogenizedResolution:
    """``d(e_s) = sum_j (-1)^j (M_s / M_{s - v_j}) e_{s - v_j}`` with s sorted increasingly."""
    field = Field.parse(field)
    cx = L.complex
    if cx.is_void() or cx.is_empty():
        return HomogenizedResolution(L.vars, field, [], [])
    total = cx.num_faces()
    if max_faces is not None and total > max_faces:
        raise InfeasibleError(f"homogenization needs {total} basis elements, guard is {max_faces}")
    top = max(len(f) for f in cx.facets)
    bases = [sorted(cx.faces_of_size(k)) for k in range(1, top + 1)]
    mds = [[L.label(f) for f in b] for b in bases]
    res = HomogenizedResolution(L.vars, field, bases, mds)
    for i in range(1, len(bases)):
        index = {f: n for n, f in enumerate(bases[i - 1])}
        entries = []
        for col, (face, M) in enumerate(zip(bases[i], mds[i])):
            for j in range(len(face)):
                row = index[face[:j] + face[j + 1:]]
                entries.append(Entry(row, col, (-1) ** j, M / mds[i - 1][row]))
        res.differentials[i] = entries
    return res


# -- Betti numbers ------------------------------------------------------------


@dataclass
class BettiTable:
    """Multigraded Betti numbers ``beta_{i,M}`` keyed by ``(i, M)``."""

    entries: dict[tuple[int, Monomial], int]
    field: Field

    def __post_init__(self):
        self.entries = {k: v for k, v in self.entries.items() if v}

    @property
    def totals(self) -> tuple[int, ...]:
        if not self.entries:
            return ()
        top = max(i for i, _ in self.entries)
        out = [0] * (top + 1)
        for (i, _), v in self.entries.items():
            out[i] += v
        return tuple(out)

    @property
    def projective_dimension(self) -> int:
        return len(self.totals) - 1

    def graded(self) -> dict[tuple[int, int], int]:
        """Ranks by (homological degree, total degree)."""
        out: dict[tuple[int, int], int] = {}
        for (i, M), v in self.entries.items():
            out[(i, M.degree)] = out.get((i, M.degree), 0) + v
        return out

    def to_text(self) -> str:
        """Grid with one row per homological degree and one column per total degree."""
        g = self.graded()
        if not g:
            return "(zero)"
        degs = sorted({d for _, d in g})
        width = max(4, *(len(str(v)) for v in g.values()), *(len(str(d)) for d in degs))
        head = "    " + "".join(f"{d:>{width + 1}}" for d in degs) + f" {'total':>{width + 1}}"
        lines = [head]
        for i, tot in enumerate(self.totals):
            cells = "".join(f"{(g.get((i, d)) or '.'):>{width + 1}}" for d in degs)
            lines.append(f"{i:>3}:" + cells + f" {tot:>{width + 1}}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "field": str(self.field),
            "totals": list(self.totals),
            "entries": [
                {"i": i, "multidegree": str(M), "exponents": list(M.exps), "rank": v}
                for (i, M), v in sorted(self.entries.items(), key=lambda kv: (kv[0][0], kv[0][1].degree, kv[0][1]))
            ],
        }


def upper_koszul_complex(gens: Sequence[Monomial], M: Monomial) -> SimplicialComplex:
    """Subsets of the generators dividing M whose lcm strictly divides M, on generator indices.

    Built as the union over variables x in supp(M) of the simplices on the
    generators dividing M/x.
    """
    me = M.exps
    facets = []
    for k, e in enumerate(me):
        if not e:
            continue
        cap = list(me)
        cap[k] -= 1
        facets.append(tuple(i for i, g in enumerate(gens) if all(a <= b for a, b in zip(g.exps, cap))))
    if not facets:
        facets = [()]
    return SimplicialComplex(facets)


def betti_of_generators(gens: Sequence[Monomial], field: Field | str | None = None,
                        lattice_limit: int | None = None, max_faces: int | None = None) -> BettiTable:
    """Betti numbers of the ideal minimally generated by ``minimalize(gens)``."""
    field = Field.parse(field)
    gens = minimalize(gens)
    lattice = lcm_lattice(gens, limit=lattice_limit)
    entries: dict[tuple[int, Monomial], int] = {}
    for M in lattice:
        K = upper_koszul_complex(gens, M)
        h = reduced_homology(K, field, max_faces=max_faces)
        for d, rk in h.ranks.items():
            if rk:
                entries[(d + 1, M)] = rk
    return BettiTable(entries, field)


def multigraded_betti(ideal: MonomialIdeal, r: int = 1, field: Field | str | None = None,
                      lattice_limit: int | None = None, max_faces: int | None = None) -> BettiTable:
    """``beta_{i,M}(I^r) = dim H~_{i-1}(K_{<M})`` over the lcm lattice of I^r."""
    if r < 1:
        raise ValueError("r must be positive")
    return betti_of_generators(ideal.power_generators(r), field, lattice_limit, max_faces)


# -- minimization -------------------------------------------------------------


class _Differential:
    __slots__ = ("cols", "rows")

    def __init__(self):
        self.cols: dict[int, dict[int, object]] = {}
        self.rows: dict[int, set[int]] = {}

    def set(self, f, e, v):
        self.cols.setdefault(e, {})[f] = v
        self.rows.setdefault(f, set()).add(e)

    def drop_row(self, f):
        for e in self.rows.pop(f, ()):
            self.cols[e].pop(f, None)

    def drop_col(self, e):
        for f in self.cols.pop(e, {}):
            self.rows[f].discard(e)


def minimize_resolution(R: HomogenizedResolution, order: str = "default",
                        rng: random.Random | None = None) -> BettiTable:
    """Cancel unit entries (scalar times monomial 1) until none are left.

    With ``order="random"`` the next unit is drawn with ``rng``; the
    resulting ranks do not depend on the order.
    """
    if order not in ("default", "random"):
        raise ValueError(f"unknown order {order!r}")
    rng = rng or random.Random(0)
    fld = R.field
    p = fld.characteristic

    def norm(x):
        return x % p if p else Fraction(x)

    alive = [set(range(len(b))) for b in R.bases]
    mds = R.multidegrees
    diffs: dict[int, _Differential] = {}
    for i, entries in R.differentials.items():
        D = _Differential()
        for e in entries:
            top, bottom = mds[i][e.col].exps, mds[i - 1][e.row].exps
            if any(a - b != c for a, b, c in zip(top, bottom, e.monomial.exps)):
                raise ValueError(f"entry ({e.row},{e.col}) in degree {i} is not a scalar times the degree quotient")
            v = norm(e.scalar)
            if v:
                D.set(e.row, e.col, v)
        diffs[i] = D

    for i in sorted(diffs, reverse=True):
        D = diffs[i]
        work = list(D.cols)
        pending = set(work)
        while work:
            if order == "random":
                k = rng.randrange(len(work))
                work[k], work[-1] = work[-1], work[k]
            e = work.pop()
            pending.discard(e)
            if e not in D.cols:
                continue
            units = [f for f, v in D.cols[e].items() if mds[i - 1][f] == mds[i][e]]
            if not units:
                continue
            f = rng.choice(units) if order == "random" else min(units)
            c = D.cols[e][f]
            cinv = fld.inv(c)
            col_e = dict(D.cols[e])
            touched = [e2 for e2 in D.rows.get(f, ()) if e2 != e]
            for e2 in touched:
                factor = D.cols[e2][f] * cinv
                for f2, v in col_e.items():
                    if f2 == f:
                        continue
                    nv = D.cols[e2].get(f2, 0) - factor * v
                    nv = nv % p if p else nv
                    if nv:
                        D.set(f2, e2, nv)
                    elif f2 in D.cols[e2]:
                        del D.cols[e2][f2]
                        D.rows[f2].discard(e2)
            D.drop_row(f)
            D.drop_col(e)
            alive[i].discard(e)
            alive[i - 1].discard(f)
            if i + 1 in diffs:
                diffs[i + 1].drop_row(e)
            if i - 1 in diffs:
                diffs[i - 1].drop_col(f)
            for e2 in touched:
                if e2 not in pending:
                    pending.add(e2)
                    work.append(e2)

    entries: dict[tuple[int, Monomial], int] = {}
    for i, idx in enumerate(alive):
        for n in idx:
            key = (i, mds[i][n])
            entries[key] = entries.get(key, 0) + 1
    return BettiTable(entries, fld)
