"""Exact monomial arithmetic, monomial ideals and power products.

Monomials are immutable exponent vectors over a fixed, named variable set.
Exponents are Python ints, so powers never overflow.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Mapping, Sequence


class VariableSet:
    """An ordered tuple of distinct variable names."""

    __slots__ = ("names", "_index", "_hash")

    def __init__(self, names: Iterable[str]):
        names = tuple(str(n) for n in names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}
        self._hash = hash(names)

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, VariableSet) and self.names == other.names

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"VariableSet({list(self.names)!r})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def one(self) -> Monomial:
        return Monomial(self, (0,) * len(self.names))

    def monomial(self, powers: Mapping[str, int] | Iterable[str]) -> Monomial:
        """Build a monomial from ``{"x": 2, "y": 1}`` or a list of names."""
        exps = [0] * len(self.names)
        if isinstance(powers, Mapping):
            items = powers.items()
        else:
            items = ((name, 1) for name in powers)
        for name, e in items:
            exps[self.index(name)] += int(e)
        return Monomial(self, tuple(exps))

    def variable(self, name: str) -> Monomial:
        return self.monomial({name: 1})


class Monomial:
    """A monomial ``x^e`` with non-negative integer exponents.

    Sorting follows the lex monomial order with the first variable largest,
    reversed so that ``sorted`` lists ``x^2, xy, y^2`` in that order.
    """

    __slots__ = ("vars", "exps", "_hash")

    def __init__(self, vars: VariableSet, exps: Sequence[int]):
        exps = tuple(exps)
        if len(exps) != len(vars):
            raise ValueError(f"expected {len(vars)} exponents, got {len(exps)}")
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        self.vars = vars
        self.exps = exps
        self._hash = hash(exps)

    def _check(self, other: Monomial):
        if self.vars is not other.vars and self.vars != other.vars:
            raise ValueError("monomials live over different variable sets")

    def __eq__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.exps == other.exps and (self.vars is other.vars or self.vars == other.vars)

    def __hash__(self):
        return self._hash

    def __lt__(self, other: Monomial):
        self._check(other)
        return self.exps > other.exps

    def __le__(self, other: Monomial):
        self._check(other)
        return self.exps >= other.exps

    def __gt__(self, other: Monomial):
        self._check(other)
        return self.exps < other.exps

    def __ge__(self, other: Monomial):
        self._check(other)
        return self.exps <= other.exps

    def __mul__(self, other: Monomial) -> Monomial:
        self._check(other)
        return Monomial(self.vars, tuple(a + b for a, b in zip(self.exps, other.exps)))

    def __truediv__(self, other: Monomial) -> Monomial:
        """Exact quotient; raises ``ValueError`` if ``other`` does not divide ``self``."""
        self._check(other)
        exps = tuple(a - b for a, b in zip(self.exps, other.exps))
        if any(e < 0 for e in exps):
            raise ValueError(f"{other} does not divide {self}")
        return Monomial(self.vars, exps)

    def __pow__(self, k: int) -> Monomial:
        if k < 0:
            raise ValueError("negative power of a monomial")
        return Monomial(self.vars, tuple(a * k for a in self.exps))

    @property
    def degree(self) -> int:
        return sum(self.exps)

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(n for n, e in zip(self.vars.names, self.exps) if e)

    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self.exps)

    def is_one(self) -> bool:
        return not any(self.exps)

    def divides(self, other: Monomial) -> bool:
        return divides(self, other)

    def as_dict(self) -> dict[str, int]:
        return {n: e for n, e in zip(self.vars.names, self.exps) if e}

    def __str__(self):
        parts = []
        for n, e in zip(self.vars.names, self.exps):
            if e == 1:
                parts.append(n)
            elif e > 1:
                parts.append(f"{n}^{e}")
        return "*".join(parts) if parts else "1"

    def __repr__(self):
        return f"Monomial({self})"


def lcm(a: Monomial, b: Monomial) -> Monomial:
    a._check(b)
    return Monomial(a.vars, tuple(map(max, a.exps, b.exps)))


def gcd(a: Monomial, b: Monomial) -> Monomial:
    a._check(b)
    return Monomial(a.vars, tuple(map(min, a.exps, b.exps)))


def lcm_all(monomials: Iterable[Monomial], vars: VariableSet | None = None) -> Monomial:
    monomials = list(monomials)
    if not monomials:
        if vars is None:
            raise ValueError("lcm of no monomials needs an explicit variable set")
        return vars.one()
    return reduce(lcm, monomials)


def divides(a: Monomial, b: Monomial) -> bool:
    a._check(b)
    return all(x <= y for x, y in zip(a.exps, b.exps))


def minimalize(gens: Iterable[Monomial]) -> list[Monomial]:
    """Drop duplicates and generators divisible by another generator.

    Keeps the earliest of equal monomials and preserves input order.
    """
    gens = list(gens)
    kept: list[Monomial] = []
    seen: set[Monomial] = set()
    for i, g in enumerate(gens):
        if g in seen:
            continue
        if any(h != g and divides(h, g) for h in gens):
            continue
        seen.add(g)
        kept.append(g)
    return kept


def is_minimal_generating_set(gens: Sequence[Monomial]) -> bool:
    return len(minimalize(gens)) == len(gens)


class ExponentPoint(tuple):
    """A point of Z_{>=0}^q; ``r`` is its coordinate sum.

    Points compare in lex order with a larger leading coordinate first, so
    sorting (3,0),(0,3),(2,1),(1,2) gives (3,0),(2,1),(1,2),(0,3).
    """

    __slots__ = ()

    def __new__(cls, coords: Iterable[int]):
        coords = tuple(int(c) for c in coords)
        if not coords:
            raise ValueError("exponent point needs q >= 1 coordinates")
        if any(c < 0 for c in coords):
            raise ValueError(f"negative coordinate in {coords}")
        return super().__new__(cls, coords)

    @classmethod
    def unit(cls, q: int, i: int, times: int = 1) -> ExponentPoint:
        """``times * e_i`` with 0-based ``i``."""
        coords = [0] * q
        coords[i] = times
        return cls(coords)

    @property
    def coords(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def q(self) -> int:
        return len(self)

    @property
    def r(self) -> int:
        return sum(self)

    def __add__(self, other):
        if len(other) != len(self):
            raise ValueError("exponent points of different length")
        return ExponentPoint(a + b for a, b in zip(self, other))

    def __lt__(self, other):
        return tuple.__gt__(self, other)

    def __le__(self, other):
        return tuple.__ge__(self, other)

    def __gt__(self, other):
        return tuple.__lt__(self, other)

    def __ge__(self, other):
        return tuple.__le__(self, other)

    def __hash__(self):
        return tuple.__hash__(self)

    def __eq__(self, other):
        return tuple.__eq__(self, other)

    def __ne__(self, other):
        return tuple.__ne__(self, other)

    def __repr__(self):
        return f"ExponentPoint({tuple(self)})"

    def __str__(self):
        """Sum-of-basis-vectors form, e.g. ``2e1+e3``."""
        terms = []
        for i, c in enumerate(self, start=1):
            if c == 1:
                terms.append(f"e{i}")
            elif c > 1:
                terms.append(f"{c}e{i}")
        return "+".join(terms) if terms else "0"


@dataclass(frozen=True)
class MonomialIdeal:
    """An ordered list of monomial generators over ``vars``.

    ``minimal`` records whether the list is a minimal generating set; it is
    computed, not trusted.
    """

    vars: VariableSet
    generators: tuple[Monomial, ...]
    minimal: bool = field(init=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise ValueError("a monomial ideal needs at least one generator")
        for g in gens:
            if g.vars != self.vars:
                raise ValueError(f"generator {g} is not over {self.vars}")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "minimal", is_minimal_generating_set(gens))

    @classmethod
    def from_names(cls, gens: Iterable[Iterable[str]], vars: Iterable[str] | None = None) -> MonomialIdeal:
        """``MonomialIdeal.from_names(["xy", "yz"])`` with one-letter names,
        or lists of names for longer ones."""
        gens = [list(g) for g in gens]
        if vars is None:
            vars = _names_in_order(gens)
        vs = VariableSet(vars)
        return cls(vs, tuple(vs.monomial(g) for g in gens))

    @property
    def q(self) -> int:
        return len(self.generators)

    def is_squarefree(self) -> bool:
        return all(g.is_squarefree() for g in self.generators)

    def minimalized(self) -> MonomialIdeal:
        return MonomialIdeal(self.vars, tuple(minimalize(self.generators)))

    def require_squarefree_minimal(self):
        if not self.is_squarefree():
            raise ValueError("ideal is not square-free")
        if not self.minimal:
            raise ValueError("generators do not form a minimal generating set")

    def power_generators(self, r: int) -> list[Monomial]:
        """Minimal generators of the r-th power."""
        from .power_complex import enumerate_points

        return minimalize(power_product(self, a) for a in enumerate_points(r, self.q))

    def to_json(self) -> dict:
        if self.is_squarefree():
            gens = [list(g.support) for g in self.generators]
        else:
            gens = [g.as_dict() for g in self.generators]
        return {"vars": list(self.vars.names), "generators": gens}

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


def _names_in_order(gens) -> list[str]:
    names: list[str] = []
    for g in gens:
        keys = g.keys() if isinstance(g, Mapping) else g
        for n in keys:
            if n not in names:
                names.append(n)
    return names


def power_product(ideal: MonomialIdeal, a: Sequence[int]) -> Monomial:
    """``m_1^{a_1} ... m_q^{a_q}`` for the generators of ``ideal``."""
    if len(a) != ideal.q:
        raise ValueError(f"exponent point has {len(a)} coordinates, ideal has {ideal.q} generators")
    exps = [0] * len(ideal.vars)
    for ai, g in zip(a, ideal.generators):
        if ai:
            for k, e in enumerate(g.exps):
                if e:
                    exps[k] += ai * e
    return Monomial(ideal.vars, tuple(exps))


def ideal_from_json(data: dict | str) -> MonomialIdeal:
    """Parse the ideal JSON format.

    ``{"vars": [...], "generators": [["x","y"], ...]}`` for square-free
    generators, or ``{"generators": [{"x": 2, "y": 1}, ...]}`` for general
    exponents. ``vars`` is optional and defaults to first-appearance order.
    """
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict) or "generators" not in data:
        raise ValueError("ideal JSON must be an object with a 'generators' list")
    raw = data["generators"]
    if not isinstance(raw, list) or not raw:
        raise ValueError("'generators' must be a non-empty list")
    for g in raw:
        if isinstance(g, Mapping):
            if any(not isinstance(e, int) or e < 0 for e in g.values()):
                raise ValueError(f"bad exponents in generator {g}")
        elif isinstance(g, list):
            if len(set(g)) != len(g):
                raise ValueError(f"repeated variable in square-free generator {g}; use the exponent form")
        else:
            raise ValueError(f"generator must be a list of names or a name->exponent map, got {g!r}")
    names = data.get("vars") or _names_in_order(raw)
    vs = VariableSet(names)
    gens = []
    for g in raw:
        for n in (g.keys() if isinstance(g, Mapping) else g):
            if n not in vs:
                raise ValueError(f"generator uses undeclared variable {n!r}")
        gens.append(vs.monomial(g))
    return MonomialIdeal(vs, tuple(gens))


def load_ideal(path) -> MonomialIdeal:
    with open(path, encoding="utf-8") as fh:
        return ideal_from_json(json.load(fh))
