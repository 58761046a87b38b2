"""The complexes L^r_q and L^r(I) on exponent points, plus Taylor complexes."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Callable, Sequence

from .monomial import ExponentPoint, Monomial, MonomialIdeal, divides, power_product
from .resolution import LabeledComplex
from .simplicial import SimplicialComplex


@dataclass(frozen=True)
class PowerParameters:
    r: int
    q: int

    def __post_init__(self):
        if self.r < 1 or self.q < 1:
            raise ValueError(f"need r, q >= 1, got r={self.r}, q={self.q}")

    @property
    def s(self) -> int:
        return (self.r + 1) // 2


@lru_cache(maxsize=64)
def _points(r: int, q: int) -> tuple[ExponentPoint, ...]:
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(ExponentPoint(prefix + [left]))
            return
        for c in range(left, -1, -1):
            rec(prefix + [c], left - c, slots - 1)

    rec([], r, q)
    return tuple(out)


def enumerate_points(r: int, q: int) -> list[ExponentPoint]:
    """All points of Z_{>=0}^q with coordinate sum r, largest first coordinate first."""
    PowerParameters(r, q)
    pts = list(_points(r, q))
    assert len(pts) == comb(q + r - 1, r)
    return pts


def base_layer(r: int, q: int) -> frozenset[ExponentPoint]:
    s = PowerParameters(r, q).s
    return frozenset(a for a in _points(r, q) if max(a) <= s)


def first_layer(r: int, q: int) -> list[frozenset[ExponentPoint]]:
    s = PowerParameters(r, q).s
    B = base_layer(r, q)
    return [B | {a for a in _points(r, q) if s + 1 <= a[i] <= r - 1} for i in range(q)]


def second_layer(r: int, q: int) -> list[frozenset[ExponentPoint]]:
    out = []
    for i in range(q):
        layer = set()
        for j in range(q):
            c = [0] * q
            c[i] += r - 1
            c[j] += 1
            layer.add(ExponentPoint(c))
        out.append(frozenset(layer))
    return out


def expected_facets(r: int, q: int) -> list[frozenset[ExponentPoint]]:
    """Distinct facets of L^r_q by the four-way case split on (r, q)."""
    if r == 1 or q == 1:
        return [frozenset(_points(r, q))]
    G = second_layer(r, q)
    if r == 2 and q == 2:
        return G
    if r in (2, 3):
        return [base_layer(r, q)] + G
    return first_layer(r, q) + G


@dataclass(frozen=True)
class LrqComplex:
    params: PowerParameters
    points: tuple[ExponentPoint, ...]
    base: frozenset
    first_layer: tuple[frozenset, ...]
    second_layer: tuple[frozenset, ...]
    complex: SimplicialComplex
    leaf_order: tuple[tuple, ...]

    @property
    def r(self) -> int:
        return self.params.r

    @property
    def q(self) -> int:
        return self.params.q

    def to_json(self) -> dict:
        def pts(S):
            return [list(a) for a in sorted(S)]

        return {
            "r": self.r,
            "q": self.q,
            "s": self.params.s,
            "points": pts(self.points),
            "base": pts(self.base),
            "first_layer": [pts(F) for F in self.first_layer],
            "second_layer": [pts(G) for G in self.second_layer],
            "leaf_order": [[list(a) for a in F] for F in self.leaf_order],
            "complex": self.complex.to_json(),
        }


@lru_cache(maxsize=64)
def build_lrq(r: int, q: int) -> LrqComplex:
    params = PowerParameters(r, q)
    B = base_layer(r, q)
    F = first_layer(r, q)
    G = second_layer(r, q)
    cx = SimplicialComplex(F + G)
    order = [tuple(sorted(X)) for X in _explicit_leaf_order(r, q, B, F, G)]
    return LrqComplex(params, _points(r, q), B, tuple(F), tuple(G), cx, tuple(order))


def _explicit_leaf_order(r, q, B, F, G):
    if r == 1 or q == 1:
        return [frozenset(_points(r, q))]
    if r == 2 and q == 2:
        return G
    if r in (2, 3):
        return [B] + G
    return F + G


# -- L^r(I) -------------------------------------------------------------------

Policy = Callable[[Sequence[ExponentPoint]], ExponentPoint]


def _lex_policy(members: Sequence[ExponentPoint]) -> ExponentPoint:
    return min(members)


def _balanced_policy(members: Sequence[ExponentPoint]) -> ExponentPoint:
    # smallest largest coordinate, then lex
    return min(members, key=lambda a: (max(a), [-c for c in a]))


POLICIES: dict[str, Policy] = {"balanced": _balanced_policy, "lex": _lex_policy}


def _policy(policy: str | Policy) -> tuple[str, Policy]:
    if callable(policy):
        return getattr(policy, "__name__", "custom"), policy
    try:
        return policy, POLICIES[policy]
    except KeyError:
        raise ValueError(f"unknown representative policy {policy!r}; choose from {sorted(POLICIES)}") from None


@dataclass(frozen=True)
class ClassRecord:
    members: tuple[ExponentPoint, ...]
    representative: ExponentPoint
    label: Monomial
    survivor: bool

    def to_json(self) -> dict:
        return {
            "members": [list(a) for a in self.members],
            "representative": list(self.representative),
            "survivor": self.survivor,
            "label": str(self.label),
        }


@dataclass(frozen=True)
class EquivalenceClasses:
    """Points of N^r_q grouped by equal power product, with chosen representatives."""

    r: int
    q: int
    policy: str
    classes: tuple[ClassRecord, ...]
    _survivors: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_survivors", tuple(c.representative for c in self.classes if c.survivor))

    @property
    def representatives(self) -> list[ExponentPoint]:
        return [c.representative for c in self.classes]

    @property
    def survivors(self) -> list[ExponentPoint]:
        return list(self._survivors)

    def nontrivial(self) -> list[ClassRecord]:
        return [c for c in self.classes if len(c.members) > 1]

    def labels(self) -> dict[ExponentPoint, Monomial]:
        return {c.representative: c.label for c in self.classes if c.survivor}

    def to_json(self) -> dict:
        return {"r": self.r, "q": self.q, "policy": self.policy, "classes": [c.to_json() for c in self.classes]}


def equivalence_classes(ideal: MonomialIdeal, r: int, policy: str | Policy = "balanced") -> EquivalenceClasses:
    """Group points by ``m^a``, pick one representative each, drop divisible ones.

    A representative lies in the base B^r whenever its class meets B^r. Among
    the eligible members the policy decides: ``"balanced"`` takes the member
    with the smallest largest coordinate (ties broken lexicographically),
    ``"lex"`` takes the lexicographically first. A callable receives the
    eligible members and returns one of them.
    """
    ideal.require_squarefree_minimal()
    name, choose = _policy(policy)
    q = ideal.q
    B = base_layer(r, q)
    groups: dict[Monomial, list[ExponentPoint]] = {}
    for a in _points(r, q):
        groups.setdefault(power_product(ideal, a), []).append(a)

    chosen = []
    for mono, members in groups.items():
        eligible = [a for a in members if a in B] or members
        rep = choose(eligible)
        if rep not in eligible:
            raise ValueError(f"policy {name!r} returned {rep}, which is not an eligible member")
        chosen.append((rep, mono, tuple(members)))

    # a strict divisor has strictly smaller total degree
    by_degree = sorted(chosen, key=lambda t: t[1].degree)
    records = []
    for rep, mono, members in chosen:
        survivor = True
        for _, other, _ in by_degree:
            if other.degree >= mono.degree:
                break
            if divides(other, mono):
                survivor = False
                break
        records.append(ClassRecord(members, rep, mono, survivor))
    records.sort(key=lambda c: c.representative)
    return EquivalenceClasses(r, q, name, tuple(records))


def label_lrq(ideal: MonomialIdeal, r: int) -> LabeledComplex:
    """L^r_q with every point a labeled ``m^a``."""
    lrq = build_lrq(r, ideal.q)
    labels = {a: power_product(ideal, a) for a in lrq.points}
    return LabeledComplex(lrq.complex, labels, ideal.vars)


def build_lri(ideal: MonomialIdeal, r: int, policy: str | Policy = "balanced") -> LabeledComplex:
    """The induced subcomplex of L^r_q on surviving representatives, labeled by ``m^c``."""
    classes = equivalence_classes(ideal, r, policy)
    lrq = build_lrq(r, ideal.q)
    cx = lrq.complex.induced_subcomplex(classes.survivors)
    return LabeledComplex(cx, classes.labels(), ideal.vars)


def verify_irredundant_vertices(ideal: MonomialIdeal, r: int, policy: str | Policy = "balanced") -> bool:
    """Every ``r e_i`` survives and, for q >= 2, some ``(r-1) e_i + e_j`` with j != i does too."""
    q = ideal.q
    survivors = set(equivalence_classes(ideal, r, policy).survivors)
    for i in range(q):
        if ExponentPoint.unit(q, i, r) not in survivors:
            return False
        if q >= 2:
            near = (ExponentPoint.unit(q, i, r - 1) + ExponentPoint.unit(q, j) for j in range(q) if j != i)
            if not any(a in survivors for a in near):
                return False
    return True


def taylor_complex(gens: Sequence[Monomial]) -> LabeledComplex:
    """The full simplex on ``range(len(gens))``, vertex i labeled ``gens[i]``.

    Generators need not be minimal or square-free.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("Taylor complex needs at least one generator")
    idx = tuple(range(len(gens)))
    return LabeledComplex(SimplicialComplex([idx]), dict(zip(idx, gens)), gens[0].vars)
