"""Fast sanity checks behind ``powres selftest``."""

from __future__ import annotations

from .bounds import betti_bound, pd_bound
from .corpus import square_ideal, three_path_ideal
from .extremal import build_extremal
from .power_complex import build_lri, build_lrq, label_lrq
from .resolution import homogenize, is_minimal_support, minimize_resolution, multigraded_betti, supports_resolution_bps


def _checks():
    yield "bounds q=3 r=4", lambda: [betti_bound(t, 4, 3) for t in range(3)] == [15, 60, 131] and pd_bound(4, 3) == 7
    yield "L^3_2 is a path", lambda: build_lrq(3, 2).complex.f_vector() == (4, 3)
    yield "L^2 of the 4-cycle", lambda: build_lri(square_ideal(), 2).f_vector()[:3] == (9, 20, 18)
    yield "betti (xy,yz,zu)", lambda: multigraded_betti(three_path_ideal()).totals == (3, 2)
    yield "betti E_3^2 by strands", lambda: multigraded_betti(build_extremal(3), 2).totals == (6, 9, 4)
    yield "betti E_3^2 by cancellation", lambda: minimize_resolution(homogenize(label_lrq(build_extremal(3), 2))).totals == (6, 9, 4)
    yield "E_3^2 support is minimal", lambda: bool(is_minimal_support(label_lrq(build_extremal(3), 2)))
    yield "L^2 of the 4-cycle supports", lambda: bool(supports_resolution_bps(build_lri(square_ideal(), 2)))


def run() -> tuple[list[str], bool]:
    lines, ok = [], True
    for name, fn in _checks():
        try:
            passed = bool(fn())
        except Exception as e:  # report, keep going
            passed = False
            name = f"{name} ({type(e).__name__}: {e})"
        ok &= passed
        lines.append(f"{'PASS' if passed else 'FAIL'}  {name}")
    return lines, ok
