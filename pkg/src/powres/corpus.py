"""Small square-free ideals used by the tests and the selftest command."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .monomial import MonomialIdeal, VariableSet


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    ideal: MonomialIdeal
    max_r: int  # largest power the support checks run on


def edge_ideal(n: int, edges) -> MonomialIdeal:
    vs = VariableSet(f"x{i}" for i in range(1, n + 1))
    return MonomialIdeal(vs, tuple(vs.monomial([f"x{i}", f"x{j}"]) for i, j in edges))


def path_ideal(n: int) -> MonomialIdeal:
    return edge_ideal(n, [(i, i + 1) for i in range(1, n)])


def cycle_ideal(n: int) -> MonomialIdeal:
    return edge_ideal(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def complete_graph_ideal(n: int) -> MonomialIdeal:
    return edge_ideal(n, combinations(range(1, n + 1), 2))


def square_ideal() -> MonomialIdeal:
    return MonomialIdeal.from_names(["xy", "yz", "zw", "xw"], vars="xyzw")


def three_path_ideal() -> MonomialIdeal:
    return MonomialIdeal.from_names(["xy", "yz", "zu"], vars="xyzu")


def nine_generator_ideal() -> MonomialIdeal:
    return MonomialIdeal.from_names(
        ["xyz", "abc", "def", "xza", "xzb", "xyc", "xyd", "yze", "yzf"], vars="abcdefxyz"
    )


def random_squarefree_ideal(rng: random.Random, q: int, n: int) -> MonomialIdeal:
    """q minimal square-free generators in n variables, drawn until minimal."""
    # largest antichain of subsets of an n-set
    if q > comb(n, n // 2):
        raise ValueError("too many generators for the number of variables")
    vs = VariableSet(f"x{i}" for i in range(1, n + 1))
    while True:
        gens = []
        for _ in range(q):
            k = rng.randint(1, max(1, n - 1))
            gens.append(vs.monomial(rng.sample(vs.names, k)))
        ideal = MonomialIdeal(vs, tuple(gens))
        if ideal.minimal:
            return ideal


def default_corpus(seed: int = 2024, randoms: int = 8) -> list[CorpusEntry]:
    out = []
    for n in range(2, 7):
        out.append(CorpusEntry(f"path{n}", path_ideal(n), 3))
    for n in range(3, 7):
        out.append(CorpusEntry(f"cycle{n}", cycle_ideal(n), 3))
    for n, r in ((3, 3), (4, 3), (5, 3), (6, 3)):
        out.append(CorpusEntry(f"complete{n}", complete_graph_ideal(n), r))
    out.append(CorpusEntry("square", square_ideal(), 3))
    out.append(CorpusEntry("nine", nine_generator_ideal(), 2))
    rng = random.Random(seed)
    for k in range(randoms):
        q = rng.randint(2, 5)
        n = rng.randint(max(3, q), 8)
        out.append(CorpusEntry(f"random{k}", random_squarefree_ideal(rng, q, n), 3))
    return out
