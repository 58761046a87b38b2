"""Field descriptors and exact rank of sparse integer matrices."""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """The rationals (``characteristic == 0``) or the prime field GF(p)."""

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if c != 0 and not _is_prime(c):
            raise ValueError(f"unsupported field: characteristic {c} is not 0 or a prime")

    @classmethod
    def parse(cls, text: str | int | Field | None) -> Field:
        """Accepts ``QQ``, ``0``, ``GF(p)``, ``ZZ/p`` or a bare prime."""
        if text is None:
            return default_field()
        if isinstance(text, Field):
            return text
        if isinstance(text, int):
            return cls(text)
        s = str(text).strip().upper().replace(" ", "")
        if s in ("QQ", "Q", "0", "CHAR0", "RATIONALS"):
            return cls(0)
        m = re.fullmatch(r"(?:GF\((\d+)\)|GF(\d+)|ZZ/(\d+)|(\d+))", s)
        if not m:
            raise ValueError(f"unsupported field descriptor {text!r}")
        p = int(next(g for g in m.groups() if g is not None))
        return cls(p)

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    def coerce(self, x):
        if self.characteristic == 0:
            return Fraction(x)
        return int(x) % self.characteristic

    def inv(self, x):
        if self.characteristic == 0:
            if x == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / Fraction(x)
        x %= self.characteristic
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.characteristic)

    def is_zero(self, x) -> bool:
        if self.characteristic == 0:
            return x == 0
        return x % self.characteristic == 0


QQ = Field(0)


def default_field() -> Field:
    """QQ unless the ``POWRES_FIELD`` environment variable says otherwise."""
    env = os.environ.get("POWRES_FIELD")
    return Field.parse(env) if env else QQ


def rank(rows: Iterable[Mapping[int, int]], field: Field = QQ) -> int:
    """Rank of a sparse integer matrix given as ``{column: entry}`` rows.

    Over QQ this is fraction-free elimination with content removal, so it
    is exact; over GF(p) entries are reduced mod p.
    """
    p = field.characteristic
    pivots: dict[int, dict[int, int]] = {}
    for raw in rows:
        if p:
            row = {c: v % p for c, v in raw.items() if v % p}
        else:
            row = {c: v for c, v in raw.items() if v}
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                if p:
                    inv = pow(row[lead], -1, p)
                    row = {c: v * inv % p for c, v in row.items()}
                pivots[lead] = row
                break
            row = _eliminate(row, piv, lead, p)
    return len(pivots)


def _eliminate(row: dict[int, int], piv: dict[int, int], lead: int, p: int) -> dict[int, int]:
    if p:
        f = row[lead]  # pivot rows are monic
        out = dict(row)
        for c, v in piv.items():
            nv = (out.get(c, 0) - f * v) % p
            if nv:
                out[c] = nv
            else:
                out.pop(c, None)
        return out
    a, b = piv[lead], row[lead]
    g = gcd(a, b)
    a, b = a // g, b // g
    out = {c: a * v for c, v in row.items()}
    for c, v in piv.items():
        nv = out.get(c, 0) - b * v
        if nv:
            out[c] = nv
        else:
            out.pop(c, None)
    if out:
        content = 0
        for v in out.values():
            content = gcd(content, v)
            if content == 1:
                break
        if content > 1:
            out = {c: v // content for c, v in out.items()}
    return out
