"""Extremal ideals and their specialization onto arbitrary square-free ideals.

For q generators the extremal ideal lives in one variable x_A per non-empty
A of {1..q}; its i-th generator is the product of the x_A with i in A. Any
square-free ideal with q generators is the image of it under a substitution
of variables, which preserves lcms.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .errors import InfeasibleError
from .linalg import Field
from .monomial import Monomial, MonomialIdeal, VariableSet, divides, minimalize, power_product

MAX_Q = 5


def extremal_subsets(q: int) -> list[tuple[int, ...]]:
    """Non-empty subsets of 1..q ordered by size, then lexicographically."""
    return [A for k in range(1, q + 1) for A in combinations(range(1, q + 1), k)]


def subset_variable(A) -> str:
    return "x" + "".join(str(i) for i in sorted(A))


@lru_cache(maxsize=None)
def build_extremal(q: int) -> MonomialIdeal:
    if not 1 <= q <= MAX_Q:
        raise ValueError(f"extremal ideals are supported for 1 <= q <= {MAX_Q}, got {q}")
    subsets = extremal_subsets(q)
    vs = VariableSet(subset_variable(A) for A in subsets)
    gens = tuple(vs.monomial(subset_variable(A) for A in subsets if i in A) for i in range(1, q + 1))
    return MonomialIdeal(vs, gens)


def extremal_divisibility(a, b, check: bool = True) -> bool:
    """Whether eps^b divides eps^a, via ``b <= a`` componentwise.

    With ``check`` the answer is confirmed by dividing the monomials.
    """
    if len(a) != len(b):
        raise ValueError("exponent points of different length")
    crit = all(x >= y for x, y in zip(a, b))
    if check:
        E = build_extremal(len(a))
        direct = divides(power_product(E, b), power_product(E, a))
        if direct != crit:
            raise AssertionError(f"divisibility criterion disagrees with division for a={a}, b={b}")
    return crit


@dataclass(frozen=True)
class PsiMap:
    """Substitution x_A -> product of the x_k whose generator support set is A."""

    q: int
    source: VariableSet
    target: VariableSet
    assignment: dict[str, Monomial]

    def __call__(self, m: Monomial) -> Monomial:
        return apply_psi(self, m)

    def to_json(self) -> dict:
        return {name: str(m) for name, m in self.assignment.items()}


def build_psi(ideal: MonomialIdeal) -> PsiMap:
    if not ideal.is_squarefree():
        raise ValueError("the specialization map needs a square-free ideal")
    q = ideal.q
    E = build_extremal(q)
    support_sets: dict[tuple[int, ...], list[int]] = {}
    for k in range(len(ideal.vars)):
        A = tuple(j + 1 for j, g in enumerate(ideal.generators) if g.exps[k])
        if A:
            support_sets.setdefault(A, []).append(k)
    assignment = {}
    for A in extremal_subsets(q):
        exps = [0] * len(ideal.vars)
        for k in support_sets.get(A, ()):
            exps[k] = 1
        assignment[subset_variable(A)] = Monomial(ideal.vars, exps)
    return PsiMap(q, E.vars, ideal.vars, assignment)


def apply_psi(psi: PsiMap, m: Monomial) -> Monomial:
    if m.vars != psi.source:
        raise ValueError("monomial is not in the extremal ring")
    exps = [0] * len(psi.target)
    for name, e in zip(psi.source.names, m.exps):
        if e:
            for k, t in enumerate(psi.assignment[name].exps):
                exps[k] += e * t
    return Monomial(psi.target, exps)


def psi_image(psi: PsiMap, gens) -> list[Monomial]:
    """Images of ``gens``, re-minimalized."""
    return minimalize(apply_psi(psi, g) for g in gens)


def extremal_minimality_predicate(r: int, q: int) -> bool:
    if r < 1 or q < 1:
        raise ValueError("need r, q >= 1")
    return q == 1 or (q == 2 and r <= 4) or (q >= 3 and r <= 2)


@lru_cache(maxsize=32)
def _extremal_betti(q: int, r: int, field: Field):
    from .resolution import multigraded_betti

    return multigraded_betti(build_extremal(q), r, field)


@dataclass(frozen=True)
class MaximalityReport:
    ideal: str
    r: int
    field: str
    ideal_betti: tuple[int, ...]
    extremal_betti: tuple[int, ...]

    @property
    def holds(self) -> bool:
        n = max(len(self.ideal_betti), len(self.extremal_betti))
        a = self.ideal_betti + (0,) * (n - len(self.ideal_betti))
        b = self.extremal_betti + (0,) * (n - len(self.extremal_betti))
        return all(x <= y for x, y in zip(a, b))

    def to_json(self) -> dict:
        return {
            "ideal": self.ideal,
            "r": self.r,
            "field": self.field,
            "ideal_betti": list(self.ideal_betti),
            "extremal_betti": list(self.extremal_betti),
            "holds": self.holds,
        }


def verify_extremal_maximality(ideal: MonomialIdeal, r: int, field=None, allow_large: bool = False) -> MaximalityReport:
    """Compare Betti totals of I^r with those of the extremal ideal's r-th power.

    The extremal side is limited to q <= 4 unless ``allow_large``.
    """
    ideal.require_squarefree_minimal()
    field = Field.parse(field)
    q = ideal.q
    if q > 4 and not allow_large:
        raise InfeasibleError(f"extremal Betti numbers for q={q} need allow_large")
    from .resolution import multigraded_betti

    mine = multigraded_betti(ideal, r, field).totals
    ext = _extremal_betti(q, r, field).totals
    return MaximalityReport(str(ideal), r, str(field), mine, ext)
