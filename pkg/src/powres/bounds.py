"""Closed-form Betti and projective-dimension bounds for powers, and comparison tables."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from math import comb

from .monomial import MonomialIdeal


def coefficient_b(r: int, q: int) -> int:
    """Coefficient of x^r in (1 + x + ... + x^s)^q with s = ceil(r/2)."""
    if r < 1 or q < 1:
        raise ValueError("need r, q >= 1")
    s = (r + 1) // 2
    poly = [1]
    for _ in range(q):
        nxt = [0] * min(len(poly) + s, r + 1)
        for i, c in enumerate(poly):
            if c:
                for j in range(s + 1):
                    if i + j > r:
                        break
                    nxt[i + j] += c
        poly = nxt
    return poly[r] if r < len(poly) else 0


def f_value(r: int, q: int) -> int:
    """Size of each first-layer facet: (C(q+r-1, r) - b - q)/q + b."""
    b = coefficient_b(r, q)
    num = comb(q + r - 1, r) - b - q
    quot, rem = divmod(num, q)
    if rem:
        raise ArithmeticError(f"inexact division {num}/{q} for r={r}, q={q}")
    return quot + b


@dataclass(frozen=True)
class BoundParameters:
    q: int
    r: int
    s: int
    b: int
    f: int

    @classmethod
    def of(cls, r: int, q: int) -> BoundParameters:
        return cls(q, r, (r + 1) // 2, coefficient_b(r, q), f_value(r, q))


def _c(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


def betti_bound(t: int, r: int, q: int) -> int:
    """q (C(q-1,t) + C(f,t+1) - C(b,t+1)) + C(b,t+1); needs r >= 2."""
    if r < 2:
        raise ValueError("the bound is stated for r >= 2")
    if t < 0 or q < 1:
        raise ValueError("need t >= 0 and q >= 1")
    b, f = coefficient_b(r, q), f_value(r, q)
    return q * (_c(q - 1, t) + _c(f, t + 1) - _c(b, t + 1)) + _c(b, t + 1)


def pd_bound(r: int, q: int) -> int:
    if r < 2:
        raise ValueError("the bound is stated for r >= 2")
    return max(q - 1, f_value(r, q) - 1)


def check_f_gt_q(r: int, q: int) -> bool:
    """Whether (r, q) is in the range where f > q holds; raises if f fails it there."""
    pred = (q == 2 and r >= 5) or (q == 3 and r >= 3) or (q >= 4 and r >= 2)
    if pred and not f_value(r, q) > q:
        raise ArithmeticError(f"f = {f_value(r, q)} is not > q = {q} for r = {r}")
    return pred


def lri_face_bound(ideal: MonomialIdeal, r: int, policy="balanced") -> tuple[int, ...]:
    """f-vector of L^r(I)."""
    from .power_complex import build_lri

    return tuple(build_lri(ideal, r, policy).f_vector())


# -- tables -------------------------------------------------------------------


@dataclass
class BoundColumn:
    title: str
    values: list[int]
    pd: int
    note: str = ""


@dataclass
class BoundTable:
    """Bound columns for one (q, r) setting; rows are beta_0..beta_{t_max} and pd."""

    heading: str
    t_max: int
    columns: list[BoundColumn] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def column(self, title: str) -> BoundColumn:
        for c in self.columns:
            if c.title == title:
                return c
        raise KeyError(title)

    def to_json(self) -> dict:
        return {
            "heading": self.heading,
            "t_max": self.t_max,
            "columns": [
                {"title": c.title, "betti": c.values, "pd": c.pd, **({"note": c.note} if c.note else {})}
                for c in self.columns
            ],
            "notes": self.notes,
        }


def _simplex_column(n: int, t_max: int) -> BoundColumn:
    return BoundColumn(f"{n - 1}-simplex", [_c(n, t + 1) for t in range(t_max + 1)], n - 1)


def _formula_column(r: int, q: int, t_max: int) -> BoundColumn:
    if r < 2:
        col = _simplex_column(comb(q + r - 1, r), t_max)
        return BoundColumn(f"L^{r}_{q} formula", col.values, col.pd, note="r=1: Taylor binomials")
    return BoundColumn(f"L^{r}_{q} formula", [betti_bound(t, r, q) for t in range(t_max + 1)], pd_bound(r, q))


def generic_table(q: int, r: int, t_max: int = 2) -> BoundTable:
    """Formula bound against the Taylor simplex on all C(q+r-1, r) products."""
    table = BoundTable(f"q={q}, r={r}", t_max)
    table.columns.append(_formula_column(r, q, t_max))
    table.columns.append(_simplex_column(comb(q + r - 1, r), t_max))
    table.notes = [c.note for c in table.columns if c.note]
    return table


def comparison_table(ideal: MonomialIdeal, r: int, field=None, t_max: int = 2,
                     with_betti: bool = False, policy="balanced") -> BoundTable:
    """L^r(I) face counts, Taylor on minimal generators, formula, Taylor on all products.

    ``with_betti`` appends the true Betti numbers over ``field``.
    """
    from .power_complex import build_lri

    ideal.require_squarefree_minimal()
    q = ideal.q
    lri = build_lri(ideal, r, policy)
    fv = lri.f_vector()
    table = BoundTable(f"r={r}", t_max)
    table.columns.append(BoundColumn(f"L^{r}(I)", [fv.get(t) for t in range(t_max + 1)], fv.dim))
    table.columns.append(_simplex_column(fv.get(0), t_max))
    table.columns.append(_formula_column(r, q, t_max))
    table.columns.append(_simplex_column(comb(q + r - 1, r), t_max))
    if with_betti:
        from .resolution import multigraded_betti

        bt = multigraded_betti(ideal, r, field)
        tot = bt.totals
        table.columns.append(BoundColumn("true beta", [tot[t] if t < len(tot) else 0 for t in range(t_max + 1)],
                                         bt.projective_dimension, note=f"over {bt.field}"))
    table.notes = [c.note for c in table.columns if c.note]
    return table


def _rows(tables: list[BoundTable]):
    t_max = max(t.t_max for t in tables)
    header = [""] + [f"{t.heading}: {c.title}" for t in tables for c in t.columns]
    body = []
    for i in range(t_max + 1):
        row = [f"beta_{i} <="]
        for t in tables:
            row += [str(c.values[i]) if i < len(c.values) else "" for c in t.columns]
        body.append(row)
    body.append(["pd <="] + [str(c.pd) for t in tables for c in t.columns])
    return header, body


def render_markdown(tables: list[BoundTable], title: str = "Bound comparisons") -> str:
    header, body = _rows(tables)
    lines = [f"### {title}", "", "| " + " | ".join(header) + " |",
             "|---" + "|---:" * (len(header) - 1) + "|"]
    lines += ["| " + " | ".join(row) + " |" for row in body]
    notes = [n for t in tables for n in t.notes]
    if notes:
        lines.append("")
        lines += [f"* {n}" for n in dict.fromkeys(notes)]
    return "\n".join(lines) + "\n"


def render_csv(tables: list[BoundTable]) -> str:
    header, body = _rows(tables)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(body)
    return buf.getvalue()
