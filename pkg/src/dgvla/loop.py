"""The mode Lie algebra L(U).

Elements are finite combinations of modes a_n (a a generator, n any integer)
and K_{-1} for centrals K; every other central mode vanishes because D K = 0.
The bracket is

    [u_n, v_p] = sum_{i >= 0} C(n, i) (u_(i) v)_{n+p-i}

which is finite by truncation. Signs use generator parities only.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, NamedTuple, Optional

from .combination import Combination
from .errors import NotInMinusPart
from .graded import binomial, falling_factorial, koszul_sign, sign_power
from .report import AxiomReport
from .vla import (
    CENTRAL,
    GEN,
    UElement,
    VlaPresentation,
    apply_differential,
    format_linear,
    half_skew_defect,
)


class Mode(NamedTuple):
    """a_n for a generator (kind 0), or K_{-1} for a central (kind 1)."""

    kind: int
    name: str
    n: int

    @classmethod
    def gen(cls, name: str, n: int) -> "Mode":
        return cls(GEN, name, n)

    @classmethod
    def central(cls, name: str) -> "Mode":
        return cls(CENTRAL, name, -1)

    def __str__(self) -> str:
        return f"{self.name}_{self.n}"


class LElement(Combination):
    """Finite combination of modes in canonical (sorted, zero-free) form."""

    __slots__ = ()

    @staticmethod
    def _key(key) -> Mode:
        return Mode(*key)

    @classmethod
    def mode(cls, m: Mode, coeff=1) -> "LElement":
        return cls({m: coeff})

    def __str__(self) -> str:
        return format_linear((c, str(m)) for m, c in self.items())


def _accumulate(out: Dict[Mode, Fraction], m: Mode, c: Fraction) -> None:
    out[m] = out.get(m, 0) + c


def mode_normal_form(u: UElement, n: int) -> LElement:
    """(D^k a)_n = (-1)^k n(n-1)...(n-k+1) a_{n-k}; K_n = 0 unless n = -1."""
    out: Dict[Mode, Fraction] = {}
    for (kind, name, k), c in u.items():
        if kind == CENTRAL:
            if n == -1:
                _accumulate(out, Mode(CENTRAL, name, -1), c)
            continue
        f = falling_factorial(n, k)
        if f:
            _accumulate(out, Mode(GEN, name, n - k), c * sign_power(k) * f)
    return LElement(out)


def mode_parity(p: VlaPresentation, m: Mode) -> int:
    return p.degree_of(m.kind, m.name) & 1


def mode_degree(p: VlaPresentation, m: Mode) -> int:
    """Unshifted degree |a| - 2Nn (centrals: |K|, since K_{-1} is K itself)."""
    if m.kind == CENTRAL:
        return p.central(m.name).degree
    return p.generator(m.name).degree - 2 * p.N * m.n


def shifted_degree(p: VlaPresentation, m: Mode) -> int:
    """|a_n|_[2N] = |a| - 2N(n+1)."""
    if m.kind == CENTRAL:
        return p.central(m.name).degree
    return p.generator(m.name).degree - 2 * p.N * (m.n + 1)


def mode_weight(p: VlaPresentation, m: Mode) -> Fraction:
    """Delta_a - n - 1; K_{-1} has weight 0."""
    if m.kind == CENTRAL:
        return Fraction(0)
    return p.generator(m.name).weight - m.n - 1


def mode_bracket(p: VlaPresentation, x: Mode, y: Mode) -> LElement:
    """[x, y] on single modes, memoized per presentation."""
    if x.kind == CENTRAL or y.kind == CENTRAL:
        return LElement()
    cache = p._cache.setdefault("mode_bracket", {})
    key = (x, y)
    hit = cache.get(key)
    if hit is not None:
        return hit
    a, n, b, q = x.name, x.n, y.name, y.n
    out: Dict[Mode, Fraction] = {}
    for i in range(0, p.max_product_index() + 1):
        prod = p.product(a, i, b)
        if not prod:
            continue
        coeff = binomial(n, i)
        if not coeff:
            continue
        for m, c in mode_normal_form(prod, n + q - i).items():
            _accumulate(out, m, coeff * c)
    res = LElement(out)
    cache[key] = res
    return res


def loop_bracket(p: VlaPresentation, x: LElement, y: LElement) -> LElement:
    out: Dict[Mode, Fraction] = {}
    for mx, cx in x.items():
        for my, cy in y.items():
            for m, c in mode_bracket(p, mx, my).items():
                _accumulate(out, m, cx * cy * c)
    return LElement(out)


def split_pm(x: LElement) -> tuple[LElement, LElement]:
    """(part with n >= 0, part with n < 0); K_{-1} lands in the minus part."""
    plus = {m: c for m, c in x.items() if m.n >= 0}
    minus = {m: c for m, c in x.items() if m.n < 0}
    return LElement(plus), LElement(minus)


def iota(u: UElement) -> LElement:
    """u -> u_{-1}."""
    return mode_normal_form(u, -1)


def iota_inverse(x: LElement) -> UElement:
    """Inverse of :func:`iota` on the minus part: a_{-k-1} = (1/k!) (D^k a)_{-1}."""
    out: Dict[tuple, Fraction] = {}
    for m, c in x.items():
        if m.n >= 0:
            raise NotInMinusPart(f"{m} has non-negative index")
        if m.kind == CENTRAL:
            out[(CENTRAL, m.name, 0)] = out.get((CENTRAL, m.name, 0), 0) + c
            continue
        k = -m.n - 1
        key = (GEN, m.name, k)
        out[key] = out.get(key, 0) + c / factorial(k)
    return UElement(out)


def mode_differential(p: VlaPresentation, x: LElement) -> LElement:
    """d(a_n) = (d a)_n."""
    out: Dict[Mode, Fraction] = {}
    for m, c in x.items():
        if m.kind == CENTRAL:
            continue
        for m2, c2 in mode_normal_form(apply_differential(p, UElement.gen(m.name)), m.n).items():
            _accumulate(out, m2, c * c2)
    return LElement(out)


def mode_translate(x: LElement) -> LElement:
    """D(a_n) = (D a)_n = -n a_{n-1}; D K_{-1} = 0."""
    out: Dict[Mode, Fraction] = {}
    for m, c in x.items():
        if m.kind == CENTRAL or m.n == 0:
            continue
        _accumulate(out, Mode(GEN, m.name, m.n - 1), -m.n * c)
    return LElement(out)


def _modes_in_window(p: VlaPresentation, window: tuple[int, int]) -> list[Mode]:
    lo, hi = window
    modes = [Mode(GEN, g, n) for g in p.generator_ids for n in range(lo, hi + 1)]
    modes += [Mode(CENTRAL, c, -1) for c in p.central_ids]
    return modes


def check_dg_lie(
    p: VlaPresentation, window: tuple[int, int] = (-5, 5)
) -> AxiomReport:
    """Check the dg Lie axioms of L(U) on all modes with index in ``window``.

    A finite window cannot prove a polynomial identity in the indices, so the
    report records the window used. Half skew-symmetry on generator pairs is
    checked as well.
    """
    report = AxiomReport(subject=f"L({p.name})", window=window)
    modes = _modes_in_window(p, window)
    par = {m: mode_parity(p, m) for m in modes}
    single = {m: LElement.mode(m) for m in modes}

    anti = report.check("antisymmetry")
    for x in modes:
        for y in modes:
            d = mode_bracket(p, x, y) + mode_bracket(p, y, x) * koszul_sign(par[x], par[y])
            anti.record(f"[{x},{y}]", d)

    jac = report.check("jacobi")
    gen_modes = [m for m in modes if m.kind == GEN]
    for x in gen_modes:
        for y in gen_modes:
            xy = mode_bracket(p, x, y)
            s = koszul_sign(par[x], par[y])
            for z in gen_modes:
                lhs = loop_bracket(p, single[x], mode_bracket(p, y, z))
                rhs = loop_bracket(p, xy, single[z])
                rhs = rhs + loop_bracket(p, single[y], mode_bracket(p, x, z)) * s
                jac.record(f"({x},{y},{z})", lhs - rhs)

    leib = report.check("d-leibniz")
    for x in modes:
        dx = mode_differential(p, single[x])
        sx = -1 if par[x] else 1
        for y in modes:
            lhs = mode_differential(p, mode_bracket(p, x, y))
            rhs = loop_bracket(p, dx, single[y]) + loop_bracket(p, single[x], mode_differential(p, single[y])) * sx
            leib.record(f"d[{x},{y}]", lhs - rhs)

    dder = report.check("D-derivation")
    for x in modes:
        for y in modes:
            lhs = mode_translate(mode_bracket(p, x, y))
            rhs = loop_bracket(p, mode_translate(single[x]), single[y]) + loop_bracket(
                p, single[x], mode_translate(single[y])
            )
            dder.record(f"D[{x},{y}]", lhs - rhs)

    dsq = report.check("d-squared")
    for x in modes:
        dsq.record(f"dd({x})", mode_differential(p, mode_differential(p, single[x])))

    hs = report.check("half-skew-symmetry")
    for a in p.generator_ids:
        for b in p.generator_ids:
            defects = half_skew_defect(p, UElement.gen(a), UElement.gen(b))
            if not defects:
                hs.record(f"({a},{b})", None)
            for n, d in sorted(defects.items()):
                hs.record(f"{a}_({n}){b}", d)
    return report


def bracket_of(p: VlaPresentation, u: str, m: int, v: str, n: int) -> LElement:
    """[u_m, v_n] for generator (or central) ids; central modes off n = -1 vanish."""
    x, y = _as_mode(p, u, m), _as_mode(p, v, n)
    if x is None or y is None:
        return LElement()
    return mode_bracket(p, x, y)


def _as_mode(p: VlaPresentation, name: str, n: int) -> Optional[Mode]:
    if p.is_central(name):
        return Mode(CENTRAL, name, -1) if n == -1 else None
    p.generator(name)
    return Mode(GEN, name, n)


def lelement_weights(p: VlaPresentation, x: LElement) -> set[Fraction]:
    return {mode_weight(p, m) for m, _ in x.items()}


def lelement_shifted_degrees(p: VlaPresentation, x: LElement) -> set[int]:
    return {shifted_degree(p, m) for m, _ in x.items()}


def sum_elements(elements: Iterable[LElement]) -> LElement:
    out = LElement()
    for e in elements:
        out = out + e
    return out
