"""The enveloping dg vertex algebra V(U) on a weight-truncated PBW basis.

V(U) is the vacuum module induced from L(U)_+, with every central mode K_{-1}
specialized to a level. Vectors are combinations of PBW monomials

    a1_{n1} a2_{n2} ... ar_{nr} |0>,   n_i <= -1,

sorted ascending by (n, generator id). Odd modes occur at most once in a
monomial: x x = 1/2 [x, x] is applied as soon as two equal odd modes meet.

All mode actions preserve conformal weight up to the shift of the mode, so a
vector of negative weight is zero; this is what makes every recursion below
finite. Results returned by public functions never exceed the context's weight
cap; a term that would is reported as :class:`WeightOverflow`.
"""

from __future__ import annotations

import sys
from fractions import Fraction
from math import factorial, floor
from typing import Dict, Iterable, Mapping, Optional, Sequence

from .combination import Combination
from .errors import (
    DegreeMismatch,
    InputError,
    MissingLevel,
    UnknownGenerator,
    WeightMismatch,
    WeightOverflow,
    WindowExceeded,
)
from .graded import ScalarLike, binomial, format_scalar, koszul_sign, parse_scalar, sign_power
from .linalg import rank
from .loop import LElement, Mode, mode_bracket, mode_normal_form
from .vla import CENTRAL, GEN, UElement, VlaPresentation, format_linear

# A PBW mode is (n, generator id): the natural tuple order is the PBW order.
PMode = tuple[int, str]
PbwMonomial = tuple[PMode, ...]
Terms = Dict[PbwMonomial, Fraction]

VACUUM: PbwMonomial = ()

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class VVector(Combination):
    """Element of V(U): combination of PBW monomials."""

    __slots__ = ()

    @staticmethod
    def _key(key) -> PbwMonomial:
        return tuple((int(n), str(a)) for n, a in key)

    @classmethod
    def vacuum(cls) -> "VVector":
        return cls({VACUUM: 1})

    @classmethod
    def monomial(cls, *modes: tuple[str, int], coeff=1) -> "VVector":
        """``VVector.monomial(("a", -2), ("b", -1))`` is a_{-2} b_{-1}|0>.

        The modes must already be in PBW order; use :func:`normal_order`
        for arbitrary words.
        """
        mono = tuple((n, a) for a, n in modes)
        if list(mono) != sorted(mono) or any(n > -1 for n, _ in mono):
            raise ValueError("monomial modes must be PBW ordered with n <= -1")
        return cls({mono: coeff})

    def __str__(self) -> str:
        return format_linear((c, format_monomial(m)) for m, c in self.items())


def format_monomial(mono: PbwMonomial) -> str:
    if not mono:
        return "|0>"
    return " ".join(f"{a}_{n}" for n, a in mono) + " |0>"


class EnvelopeContext:
    """V(U) for a fixed presentation, central levels and weight cap."""

    def __init__(
        self,
        presentation: VlaPresentation,
        levels: Optional[Mapping[str, ScalarLike]] = None,
        weight_cap: ScalarLike = 8,
    ) -> None:
        p = presentation
        levels = dict(levels or {})
        for name in levels:
            if not p.is_central(name):
                raise UnknownGenerator(f"level given for unknown central {name!r}")
        resolved: Dict[str, Fraction] = {}
        for c in p.centrals:
            if c.id not in levels:
                raise MissingLevel(f"central {c.id!r} needs a level (--level {c.id}=p/q)")
            k = parse_scalar(levels[c.id])
            if k and c.degree != 0:
                raise DegreeMismatch(
                    f"central {c.id!r} has degree {c.degree}; only level 0 is homogeneous"
                )
            resolved[c.id] = k
        for g in p.generators:
            if g.weight <= 0:
                raise WeightMismatch(
                    f"generator {g.id!r} has weight {format_scalar(g.weight)}; "
                    "the envelope needs positive weights"
                )
        cap = parse_scalar(weight_cap)
        if cap < 0:
            raise InputError("weight cap must be >= 0")
        self.presentation = p
        self.levels = resolved
        self.weight_cap = cap
        self._wt = {g.id: g.weight for g in p.generators}
        self._deg = {g.id: g.degree for g in p.generators}
        self._par = {g.id: g.degree & 1 for g in p.generators}
        self._apply_cache: Dict[tuple[PMode, PbwMonomial], Terms] = {}
        self._vm_cache: Dict[tuple[PbwMonomial, int, PbwMonomial], Terms] = {}
        self._translate_cache: Dict[PbwMonomial, Terms] = {}
        self._d_cache: Dict[PbwMonomial, Terms] = {}
        self._basis_cache: Dict[Fraction, list[PbwMonomial]] = {}

    # -- bookkeeping -------------------------------------------------------
    def mode_weight(self, x: PMode) -> Fraction:
        return self._wt[x[1]] - x[0] - 1

    def monomial_weight(self, mono: PbwMonomial) -> Fraction:
        return sum((self._wt[a] - n - 1 for n, a in mono), Fraction(0))

    def monomial_degree(self, mono: PbwMonomial) -> int:
        N = self.presentation.N
        return sum(self._deg[a] - 2 * N * (n + 1) for n, a in mono)

    def monomial_parity(self, mono: PbwMonomial) -> int:
        return sum(self._par[a] for _, a in mono) & 1

    def parity_of(self, v: VVector) -> int:
        pars = {self.monomial_parity(m) for m in v.keys()}
        if len(pars) > 1:
            raise ValueError("vector is not of homogeneous parity")
        return pars.pop() if pars else 0

    def weights_of(self, v: VVector) -> set[Fraction]:
        return {self.monomial_weight(m) for m in v.keys()}

    def _check_cap(self, v: VVector, what: str) -> VVector:
        for m in v.keys():
            w = self.monomial_weight(m)
            if w > self.weight_cap:
                raise WeightOverflow(
                    f"{what}: a term of weight {format_scalar(w)} exceeds the cap "
                    f"{format_scalar(self.weight_cap)}; raise --cap"
                )
        return v

    # -- straightening -----------------------------------------------------
    def _apply(self, x: PMode, mono: PbwMonomial) -> Terms:
        """x . mono as PBW terms (internal, uncapped, cached)."""
        key = (x, mono)
        hit = self._apply_cache.get(key)
        if hit is not None:
            return hit
        res = self._apply_uncached(x, mono)
        self._apply_cache[key] = res
        return res

    def _apply_uncached(self, x: PMode, mono: PbwMonomial) -> Terms:
        if self.mode_weight(x) + self.monomial_weight(mono) < 0:
            return {}
        if not mono:
            return {} if x[0] >= 0 else {(x,): Fraction(1)}
        y, rest = mono[0], mono[1:]
        if x[0] < 0 and x < y:
            return {(x,) + mono: Fraction(1)}
        if x == y:
            if not self._par[x[1]]:
                return {(x,) + mono: Fraction(1)}
            # x x = 1/2 [x, x] for odd x
            return _scale(self._apply_l(self._bracket(x, x), rest), Fraction(1, 2))
        # x y rest = (-1)^{|x||y|} y (x rest) + [x, y] rest
        out: Terms = {}
        sign = koszul_sign(self._par[x[1]], self._par[y[1]])
        for m, c in self._apply(x, rest).items():
            _add_into(out, self._apply(y, m), sign * c)
        _add_into(out, self._apply_l(self._bracket(x, y), rest), Fraction(1))
        return out

    def _bracket(self, x: PMode, y: PMode) -> LElement:
        return mode_bracket(self.presentation, Mode(GEN, x[1], x[0]), Mode(GEN, y[1], y[0]))

    def _apply_l(self, elem: LElement, mono: PbwMonomial) -> Terms:
        out: Terms = {}
        for m, c in elem.items():
            if m.kind == CENTRAL:
                level = self.levels[m.name]
                if level:
                    _add_into(out, {mono: Fraction(1)}, c * level)
            else:
                _add_into(out, self._apply((m.n, m.name), mono), c)
        return out

    def _apply_to_terms(self, x: PMode, terms: Terms) -> Terms:
        out: Terms = {}
        for m, c in terms.items():
            _add_into(out, self._apply(x, m), c)
        return out

    def _word_terms(self, word: Sequence[PMode], terms: Terms) -> Terms:
        for x in reversed(word):
            terms = self._apply_to_terms(x, terms)
        return terms

    # -- translation and differential ----------------------------------------
    def _translate_mono(self, mono: PbwMonomial) -> Terms:
        hit = self._translate_cache.get(mono)
        if hit is not None:
            return hit
        out: Terms = {}
        if mono:
            (n, a), rest = mono[0], mono[1:]
            # D(a_n w) = -n a_{n-1} w + a_n D w
            _add_into(out, self._apply((n - 1, a), rest), Fraction(-n))
            _add_into(out, self._apply_to_terms((n, a), self._translate_mono(rest)), Fraction(1))
        self._translate_cache[mono] = out
        return out

    def _d_mono(self, mono: PbwMonomial) -> Terms:
        hit = self._d_cache.get(mono)
        if hit is not None:
            return hit
        out: Terms = {}
        if mono:
            (n, a), rest = mono[0], mono[1:]
            # d(a_n w) = (d a)_n w + (-1)^{|a|} a_n d w
            da = mode_normal_form(self.presentation.d_of(a), n)
            _add_into(out, self._apply_l(da, rest), Fraction(1))
            sign = -1 if self._par[a] else 1
            _add_into(out, self._apply_to_terms((n, a), self._d_mono(rest)), Fraction(sign))
        self._d_cache[mono] = out
        return out

    # -- vertex operators ----------------------------------------------------
    def _vertex_mode(self, u: PbwMonomial, m: int, v: PbwMonomial) -> Terms:
        """Mode m of Y(u, x) applied to v, for PBW monomials u and v."""
        if self.monomial_weight(u) + self.monomial_weight(v) - m - 1 < 0:
            return {}
        if not u:
            return {v: Fraction(1)} if m == -1 else {}
        key = (u, m, v)
        hit = self._vm_cache.get(key)
        if hit is not None:
            return hit
        (n, a), w = u[0], u[1:]
        if not w and n == -1:
            res = self._apply((m, a), v)
            self._vm_cache[key] = res
            return res
        # u = a_(n) w with a = a_{-1}|0>:
        # (a_(n) w)_m = sum_i (-1)^i C(n,i) [a_{n-i} w_{m+i} - (-1)^{|a||w|+n} w_{m+n-i} a_i]
        wt_a = self._wt[a]
        wt_w = self.monomial_weight(w)
        wt_v = self.monomial_weight(v)
        sign2 = -koszul_sign(self._par[a], self.monomial_parity(w)) * sign_power(n)
        out: Terms = {}
        # first sum: w_{m+i} v vanishes once m+i > wt_w + wt_v - 1
        top1 = floor(wt_w + wt_v - 1 - m)
        for i in range(0, top1 + 1):
            coeff = sign_power(i) * binomial(n, i)
            if not coeff:
                continue
            inner = self._vertex_mode(w, m + i, v)
            if inner:
                _add_into(out, self._apply_to_terms((n - i, a), inner), Fraction(coeff))
        # second sum: a_i v vanishes once i > wt_a + wt_v - 1
        top2 = floor(wt_a + wt_v - 1)
        for i in range(0, top2 + 1):
            coeff = sign_power(i) * binomial(n, i)
            if not coeff:
                continue
            inner = self._apply((i, a), v)
            if not inner:
                continue
            acc: Terms = {}
            for mono, c in inner.items():
                _add_into(acc, self._vertex_mode(w, m + n - i, mono), c)
            _add_into(out, acc, Fraction(coeff * sign2))
        self._vm_cache[key] = out
        return out

    def _vertex_terms(self, u: Terms, m: int, v: Terms) -> Terms:
        out: Terms = {}
        for mu, cu in u.items():
            for mv, cv in v.items():
                _add_into(out, self._vertex_mode(mu, m, mv), cu * cv)
        return out

    # -- basis enumeration -----------------------------------------------------
    def weight_grid_step(self) -> Fraction:
        """Weights of PBW monomials lie in step * Z."""
        den = 1
        for w in self._wt.values():
            den = den * w.denominator // _gcd(den, w.denominator)
        return Fraction(1, den)

    def basis(self, weight: Optional[ScalarLike] = None) -> list[PbwMonomial]:
        """PBW monomials of the given weight, or of every weight <= cap."""
        if weight is None:
            out: list[PbwMonomial] = []
            for w in self.weights():
                out.extend(self.basis(w))
            return out
        w = parse_scalar(weight)
        hit = self._basis_cache.get(w)
        if hit is None:
            hit = self._enumerate(w)
            self._basis_cache[w] = hit
        return list(hit)

    def weights(self) -> list[Fraction]:
        step = self.weight_grid_step()
        count = floor(self.weight_cap / step)
        return [step * i for i in range(count + 1)]

    def _enumerate(self, target: Fraction) -> list[PbwMonomial]:
        # available modes (n <= -1) with weight <= target, in PBW order
        modes: list[PMode] = []
        for g in sorted(self._wt):
            wt = self._wt[g]
            n = -1
            while wt - n - 1 <= target:
                modes.append((n, g))
                n -= 1
        modes.sort()
        out: list[PbwMonomial] = []

        def rec(start: int, remaining: Fraction, acc: list[PMode]) -> None:
            if remaining == 0:
                out.append(tuple(acc))
                return
            for idx in range(start, len(modes)):
                x = modes[idx]
                wx = self.mode_weight(x)
                if wx > remaining:
                    continue
                acc.append(x)
                # odd modes may appear at most once
                rec(idx + 1 if self._par[x[1]] else idx, remaining - wx, acc)
                acc.pop()

        rec(0, target, [])
        return sorted(out)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _add_into(out: Terms, terms: Mapping[PbwMonomial, Fraction], scale: Fraction) -> None:
    if not scale:
        return
    for m, c in terms.items():
        v = out.get(m, 0) + c * scale
        if v:
            out[m] = v
        else:
            out.pop(m, None)


def _scale(terms: Terms, s: Fraction) -> Terms:
    return {m: c * s for m, c in terms.items() if c * s}


def _terms(v: VVector) -> Terms:
    return dict(v.items())


def _vec(terms: Terms) -> VVector:
    return VVector._raw(terms)


def _pmode(ctx: EnvelopeContext, a: str, n: int) -> PMode:
    ctx.presentation.generator(a)
    return (n, a)


# -- public operations -----------------------------------------------------


def normal_order(word: Iterable[Mode], ctx: EnvelopeContext) -> VVector:
    """Straighten ``word |0>`` into PBW form; central modes become levels."""
    terms: Terms = {VACUUM: Fraction(1)}
    for m in reversed(list(word)):
        m = Mode(*m)
        if m.kind == CENTRAL:
            if m.n != -1:
                return VVector()
            terms = _scale(terms, ctx.levels[m.name]) if m.name in ctx.levels else {}
            continue
        terms = ctx._apply_to_terms(_pmode(ctx, m.name, m.n), terms)
    return ctx._check_cap(_vec(terms), "normal_order")


def mode_apply(a: str, n: int, v: VVector, ctx: EnvelopeContext) -> VVector:
    """a_n v."""
    return ctx._check_cap(_vec(ctx._apply_to_terms(_pmode(ctx, a, n), _terms(v))), "mode_apply")


def apply_lelement(x: LElement, v: VVector, ctx: EnvelopeContext) -> VVector:
    """Action of an element of L(U) on V(U)."""
    out: Terms = {}
    for mono, c in v.items():
        _add_into(out, ctx._apply_l(x, mono), c)
    return ctx._check_cap(_vec(out), "apply")


def translate(v: VVector, ctx: EnvelopeContext) -> VVector:
    """The translation operator D, a derivation with D|0> = 0."""
    out: Terms = {}
    for mono, c in v.items():
        _add_into(out, ctx._translate_mono(mono), c)
    return ctx._check_cap(_vec(out), "translate")


def differential_on_V(v: VVector, ctx: EnvelopeContext) -> VVector:
    """The differential of V(U), induced from d on generators."""
    out: Terms = {}
    for mono, c in v.items():
        _add_into(out, ctx._d_mono(mono), c)
    return ctx._check_cap(_vec(out), "differential")


def vertex_mode(u: VVector, m: int, v: VVector, ctx: EnvelopeContext) -> VVector:
    """u_m v: the coefficient of x^{-m-1} in Y(u, x) v."""
    return ctx._check_cap(_vec(ctx._vertex_terms(_terms(u), m, _terms(v))), "vertex_mode")


def kappa(a: str, ctx: EnvelopeContext) -> VVector:
    """The embedding of a generator as a_{-1}|0>."""
    return VVector({((-1, _pmode(ctx, a, -1)[1]),): 1})


def embed_u(u: UElement, ctx: EnvelopeContext) -> VVector:
    """U -> V(U), u -> u_{-1}|0>."""
    return normal_order_lelement(mode_normal_form(u, -1), ctx)


def normal_order_lelement(x: LElement, ctx: EnvelopeContext) -> VVector:
    return apply_lelement(x, VVector.vacuum(), ctx)


def _vertex_support_top(ctx: EnvelopeContext, u: VVector, v: VVector) -> int:
    """Largest m for which u_m v can be nonzero (weight positivity)."""
    wu = max(ctx.weights_of(u), default=Fraction(0))
    wv = max(ctx.weights_of(v), default=Fraction(0))
    return floor(wu + wv - 1)


def skew_symmetry_defect(
    u: VVector, v: VVector, ctx: EnvelopeContext, window: Optional[tuple[int, int]] = None
) -> Dict[int, VVector]:
    """Nonzero values of u_n v - (-1)^{|u||v|} sum_i (-1)^{n+1+i}/i! D^i(v_{n+i} u).

    n ranges over every index at which either side can be nonzero and whose
    output weight stays within the cap, intersected with ``window`` if given.
    """
    su = ctx.parity_of(u)
    sv = ctx.parity_of(v)
    sign = koszul_sign(su, sv)
    top = _vertex_support_top(ctx, u, v)
    low = _ceil_index(ctx.weight_cap, u, v, ctx)
    if window is not None:
        low, top = max(low, window[0]), min(top, window[1])
    tu, tv = _terms(u), _terms(v)
    full_top = _vertex_support_top(ctx, u, v)
    defects: Dict[int, VVector] = {}
    for n in range(low, top + 1):
        lhs = ctx._vertex_terms(tu, n, tv)
        # Horner: sum_i a_i D^i x_i = a_0 x_0 + D(a_1 x_1 + D(a_2 x_2 + ...))
        rhs: Terms = {}
        for i in range(full_top - n, -1, -1):
            rhs = _translate_terms(ctx, rhs) if rhs else {}
            _add_into(rhs, ctx._vertex_terms(tv, n + i, tu), Fraction(sign_power(n + 1 + i), factorial(i)) * sign)
        _add_into(lhs, rhs, Fraction(-1))
        if lhs:
            defects[n] = _vec(lhs)
    return defects


def _ceil_index(cap: Fraction, u: VVector, v: VVector, ctx: EnvelopeContext) -> int:
    """Smallest n with max output weight wt(u) + wt(v) - n - 1 <= cap."""
    wu = max(ctx.weights_of(u), default=Fraction(0))
    wv = max(ctx.weights_of(v), default=Fraction(0))
    n = wu + wv - 1 - cap
    return -floor(-n)


def _translate_terms(ctx: EnvelopeContext, terms: Terms) -> Terms:
    out: Terms = {}
    for mono, c in terms.items():
        _add_into(out, ctx._translate_mono(mono), c)
    return out


def supercommutator_coefficient(
    ctx: EnvelopeContext, u: VVector, v: VVector, k: int, m: int, n: int, w: VVector
) -> VVector:
    """Coefficient of x1^{-m-1} x2^{-n-1} in (x1 - x2)^k [Y(u,x1), Y(v,x2)]^s, applied to w."""
    tu, tv, tw = _terms(u), _terms(v), _terms(w)
    sign = koszul_sign(ctx.parity_of(u), ctx.parity_of(v))
    out: Terms = {}
    for j in range(k + 1):
        coeff = sign_power(j) * binomial(k, j)
        p, q = m + k - j, n + j
        a = ctx._vertex_terms(tu, p, ctx._vertex_terms(tv, q, tw))
        b = ctx._vertex_terms(tv, q, ctx._vertex_terms(tu, p, tw))
        _add_into(out, a, Fraction(coeff))
        _add_into(out, b, Fraction(-coeff * sign))
    return _vec(out)


def locality_order(
    u: VVector,
    v: VVector,
    ctx: EnvelopeContext,
    probes: Optional[Sequence[VVector]] = None,
    window: tuple[int, int] = (-3, 3),
    k_max: int = 10,
) -> int:
    """Least k such that (x1 - x2)^k [Y(u,x1), Y(v,x2)]^s kills every probe.

    Coefficients are probed for mode indices in ``window``; probes default to
    the PBW basis up to the cap.
    """
    if probes is None:
        probes = [VVector({m: 1}) for m in ctx.basis()]
    lo, hi = window
    cells = [(m, n, w) for m in range(lo, hi + 1) for n in range(lo, hi + 1) for w in probes]
    for k in range(0, k_max + 1):
        if all(not supercommutator_coefficient(ctx, u, v, k, m, n, w) for m, n, w in cells):
            return k
    raise WindowExceeded(f"no locality order <= {k_max} found")


def character(ctx: EnvelopeContext) -> list[tuple[Fraction, Dict[int, int]]]:
    """Per weight up to the cap: the number of PBW monomials in each degree."""
    out = []
    for w in ctx.weights():
        dims: Dict[int, int] = {}
        for mono in ctx.basis(w):
            d = ctx.monomial_degree(mono)
            dims[d] = dims.get(d, 0) + 1
        out.append((w, dict(sorted(dims.items()))))
    return out


def character_totals(ctx: EnvelopeContext) -> list[int]:
    return [sum(d.values()) for _, d in character(ctx)]


def differential_matrix(ctx: EnvelopeContext, weight: Fraction, degree: int) -> list[list[Fraction]]:
    """Matrix of d: V_{weight}^{degree} -> V_{weight}^{degree+1} (rows = target)."""
    basis = ctx.basis(weight)
    src = [m for m in basis if ctx.monomial_degree(m) == degree]
    tgt = [m for m in basis if ctx.monomial_degree(m) == degree + 1]
    index = {m: i for i, m in enumerate(tgt)}
    rows = [[Fraction(0)] * len(src) for _ in tgt]
    for j, m in enumerate(src):
        for t, c in ctx._d_mono(m).items():
            if t not in index:
                raise DegreeMismatch(f"differential leaves the graded piece at {format_monomial(m)}")
            rows[index[t]][j] = c
    return rows


def cohomology_dims(ctx: EnvelopeContext) -> list[tuple[Fraction, int, int]]:
    """(weight, degree, dim H) for every weight <= cap and every occupied degree."""
    out = []
    for w, dims in character(ctx):
        degrees = sorted(set(dims) | {d - 1 for d in dims} | {d + 1 for d in dims})
        ranks = {}
        for q in degrees:
            if dims.get(q, 0) and dims.get(q + 1, 0):
                ranks[q] = rank(differential_matrix(ctx, w, q))
            else:
                ranks[q] = 0
        for q in sorted(dims):
            h = dims[q] - ranks.get(q, 0) - ranks.get(q - 1, 0)
            out.append((w, q, h))
    return out


def euler_characteristics(ctx: EnvelopeContext) -> Dict[Fraction, tuple[int, int]]:
    """weight -> (alternating character sum, alternating cohomology sum)."""
    chi_v = {w: sum(sign_power(q) * n for q, n in dims.items()) for w, dims in character(ctx)}
    chi_h: Dict[Fraction, int] = {w: 0 for w in chi_v}
    for w, q, h in cohomology_dims(ctx):
        chi_h[w] += sign_power(q) * h
    return {w: (chi_v[w], chi_h[w]) for w in chi_v}


def vvector_to_record(v: VVector) -> list[dict]:
    return [
        {"coeff": format_scalar(c), "modes": [{"gen": a, "n": n} for n, a in mono]}
        for mono, c in v.items()
    ]


def straighten_by_inversions(word: Sequence[PMode], ctx: EnvelopeContext) -> VVector:
    """Independent straightener: rewrite the leftmost adjacent inversion first.

    Works on words rather than by recursive left action, so it exercises a
    different rewrite order from :func:`normal_order`. Intended for
    cross-checking; it is much slower.
    """
    pending: Dict[tuple[PMode, ...], Fraction] = {tuple(word): Fraction(1)}
    done: Terms = {}
    while pending:
        w, c = pending.popitem()
        if not c:
            continue
        # a trailing mode with n >= 0 kills the vacuum; negative weight is zero
        if w and w[-1][0] >= 0:
            continue
        if sum((ctx.mode_weight(x) for x in w), Fraction(0)) < 0:
            continue
        pos = next(
            (
                i
                for i in range(len(w) - 1)
                if w[i] > w[i + 1] or (w[i] == w[i + 1] and ctx._par[w[i][1]])
            ),
            None,
        )
        if pos is None:
            _add_into(done, {w: c}, Fraction(1))
            continue
        x, y = w[pos], w[pos + 1]
        head, tail = w[:pos], w[pos + 2 :]
        if x == y:
            # odd square: x x = 1/2 [x, x]
            for m, cm in ctx._bracket(x, x).items():
                _push_word(ctx, pending, head, m, tail, c * cm / 2)
            continue
        sign = koszul_sign(ctx._par[x[1]], ctx._par[y[1]])
        key = head + (y, x) + tail
        pending[key] = pending.get(key, 0) + sign * c
        for m, cm in ctx._bracket(x, y).items():
            _push_word(ctx, pending, head, m, tail, c * cm)
    return _vec(done)


def _push_word(ctx, pending, head, m: Mode, tail, coeff: Fraction) -> None:
    if not coeff:
        return
    if m.kind == CENTRAL:
        coeff = coeff * ctx.levels[m.name]
        if not coeff:
            return
        key = head + tail
    else:
        key = head + ((m.n, m.name),) + tail
    pending[key] = pending.get(key, 0) + coeff
