"""Builders for the standard examples and the affine conformal structure.

The Virasoro and Neveu-Schwarz presentations, affine presentations built from a
dg Lie algebra with an invariant form, the Casimir eigenvalue, the Sugawara
vector, and a checker for the Virasoro relations of its modes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Mapping, Optional, Sequence

from .envelope import (
    EnvelopeContext,
    VVector,
    _add_into,
    _terms,
    _vec,
)
from .errors import (
    CriticalLevel,
    Degenerate,
    FormInvariantViolation,
    InputError,
    InvalidDgLie,
    NotScalar,
)
from .graded import ScalarLike, format_scalar, koszul_sign, parse_scalar, sign_power
from .linalg import inverse
from .report import AxiomReport
from .vla import (
    BilinearFormData,
    Central,
    Generator,
    UElement,
    VlaPresentation,
    validate_presentation,
)

Vector = Dict[str, Fraction]


def _clean(v: Mapping[str, ScalarLike]) -> Vector:
    out = {k: parse_scalar(c) for k, c in v.items()}
    return {k: c for k, c in sorted(out.items()) if c}


def _vadd(acc: Vector, v: Mapping[str, Fraction], s: Fraction) -> None:
    for k, c in v.items():
        x = acc.get(k, 0) + s * c
        if x:
            acc[k] = x
        else:
            acc.pop(k, None)


@dataclass
class DgLieData:
    """A finite-dimensional dg Lie algebra with bracket of degree -2N.

    ``bracket`` may list each unordered pair once; the other order is filled in
    by graded antisymmetry. Construction checks antisymmetry, the Jacobi
    identity, d^2 = 0 and that d is a derivation.
    """

    generators: Sequence[tuple[str, int]]
    bracket: Mapping[tuple[str, str], Mapping[str, ScalarLike]] = field(default_factory=dict)
    differential: Mapping[str, Mapping[str, ScalarLike]] = field(default_factory=dict)
    N: int = 0

    def __post_init__(self) -> None:
        self.generators = tuple((g, int(d)) for g, d in self.generators)
        self.degree = dict(self.generators)
        if len(self.degree) != len(self.generators):
            raise InvalidDgLie("duplicate generator id")
        table: Dict[tuple[str, str], Vector] = {}
        for (a, b), val in self.bracket.items():
            for x in (a, b, *val):
                if x not in self.degree:
                    raise InvalidDgLie(f"unknown generator {x!r} in bracket table")
            v = _clean(val)
            sign = -koszul_sign(self.degree[a], self.degree[b])
            flipped = {k: sign * c for k, c in v.items()}
            if (a, b) in table and table[(a, b)] != v:
                raise InvalidDgLie(f"[{a},{b}] is not graded antisymmetric")
            if (b, a) in table and table[(b, a)] != flipped:
                raise InvalidDgLie(f"[{a},{b}] is not graded antisymmetric")
            table[(a, b)] = v
            table[(b, a)] = flipped
        self.table = {k: v for k, v in table.items() if v}
        self.d = {}
        for a, val in self.differential.items():
            for x in (a, *val):
                if x not in self.degree:
                    raise InvalidDgLie(f"unknown generator {x!r} in differential")
            v = _clean(val)
            if v:
                self.d[a] = v
        self._validate()

    @property
    def ids(self) -> list[str]:
        return [g for g, _ in self.generators]

    def br(self, x: Mapping[str, Fraction], y: Mapping[str, Fraction]) -> Vector:
        out: Vector = {}
        for a, ca in x.items():
            for b, cb in y.items():
                _vadd(out, self.table.get((a, b), {}), ca * cb)
        return out

    def apply_d(self, x: Mapping[str, Fraction]) -> Vector:
        out: Vector = {}
        for a, c in x.items():
            _vadd(out, self.d.get(a, {}), c)
        return out

    def _validate(self) -> None:
        p = -2 * self.N
        for (a, b), v in self.table.items():
            for c in v:
                if self.degree[c] != self.degree[a] + self.degree[b] + p:
                    raise InvalidDgLie(f"[{a},{b}] is not of degree {p}")
        for a, v in self.d.items():
            for c in v:
                if self.degree[c] != self.degree[a] + 1:
                    raise InvalidDgLie(f"d({a}) is not of degree 1")
        for a in self.ids:
            if self.apply_d(self.apply_d({a: Fraction(1)})):
                raise InvalidDgLie(f"d(d({a})) != 0")
        e = {a: {a: Fraction(1)} for a in self.ids}
        for a in self.ids:
            for b in self.ids:
                # d[a,b] = [da,b] + (-1)^{|a|}[a,db]
                lhs = self.apply_d(self.br(e[a], e[b]))
                rhs = self.br(self.apply_d(e[a]), e[b])
                _vadd(rhs, self.br(e[a], self.apply_d(e[b])), Fraction(sign_power(self.degree[a])))
                if lhs != rhs:
                    raise InvalidDgLie(f"d is not a derivation on ({a},{b})")
                for c in self.ids:
                    # [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|}[b,[a,c]]
                    lhs = self.br(e[a], self.br(e[b], e[c]))
                    rhs = self.br(self.br(e[a], e[b]), e[c])
                    _vadd(rhs, self.br(e[b], self.br(e[a], e[c])), Fraction(koszul_sign(self.degree[a], self.degree[b])))
                    if lhs != rhs:
                        raise InvalidDgLie(f"Jacobi identity fails on ({a},{b},{c})")


@dataclass
class BilinearForm:
    """Bilinear form on generators; missing entries are zero."""

    entries: Mapping[tuple[str, str], ScalarLike] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.entries = {k: parse_scalar(v) for k, v in self.entries.items() if parse_scalar(v)}

    def __call__(self, x: Mapping[str, Fraction], y: Mapping[str, Fraction]) -> Fraction:
        return sum(
            (cx * cy * self.entries.get((a, b), Fraction(0)) for a, cx in x.items() for b, cy in y.items()),
            Fraction(0),
        )

    def matrix(self, ids: Sequence[str]) -> list[list[Fraction]]:
        return [[self.entries.get((a, b), Fraction(0)) for b in ids] for a in ids]


def validate_form(g: DgLieData, form: BilinearForm) -> None:
    """Raise :class:`FormInvariantViolation` naming the first failing condition."""
    for a, b in form.entries:
        if a not in g.degree or b not in g.degree:
            raise FormInvariantViolation("support", f"unknown generator in <{a},{b}>")
    e = {a: {a: Fraction(1)} for a in g.ids}
    deg = g.degree
    for (a, b), val in form.entries.items():
        if deg[a] + deg[b] != 4 * g.N:
            raise FormInvariantViolation(
                "support", f"<{a},{b}> = {format_scalar(val)} but |{a}|+|{b}| != {4 * g.N}"
            )
    for a in g.ids:
        for b in g.ids:
            sa = -1 if deg[a] & 1 else 1
            if form(g.apply_d(e[a]), e[b]) + sa * form(e[a], g.apply_d(e[b])):
                raise FormInvariantViolation("d-invariance", f"fails on ({a},{b})")
            if form(e[a], e[b]) != sa * form(e[b], e[a]):
                raise FormInvariantViolation("graded-symmetry", f"fails on ({a},{b})")
            for c in g.ids:
                if form(g.br(e[a], e[b]), e[c]) != form(e[a], g.br(e[b], e[c])):
                    raise FormInvariantViolation("invariance", f"fails on ({a},{b},{c})")


def sdim(g: DgLieData) -> int:
    """Even-degree dimension minus odd-degree dimension."""
    return sum(-1 if d & 1 else 1 for _, d in g.generators)


# -- presentations ---------------------------------------------------------------


def _u(*terms) -> UElement:
    """``_u((coeff, gen, dpower), ...)``; a gen name starting with '!' is a central."""
    out = {}
    for c, name, k in terms:
        if name.startswith("!"):
            out[(1, name[1:], 0)] = Fraction(c)
        else:
            out[(0, name, k)] = Fraction(c)
    return UElement(out)


def build_virasoro(N: int = 0) -> VlaPresentation:
    """Generator ω (degree 4N, weight 2) and central c."""
    w = "ω"
    products = {
        (w, 0, w): _u((1, w, 1)),
        (w, 1, w): _u((2, w, 0)),
        (w, 3, w): _u((Fraction(1, 2), "!c", 0)),
    }
    p = VlaPresentation(
        name=f"virasoro:{N}",
        N=N,
        generators=(Generator(w, 4 * N, Fraction(2)),),
        centrals=(Central("c", 0),),
        products=products,
    )
    return validate_presentation(p)


def build_neveu_schwarz(N: int = 1) -> VlaPresentation:
    """Generators ω (degree 4N, weight 2), τ (degree 3N, weight 3/2), central c.

    τ must be odd for the mode algebra to be a Lie superalgebra, so N has to
    be odd; even N produces a presentation whose axiom check fails.
    """
    w, t = "ω", "τ"
    half = Fraction(1, 2)
    products = {
        (w, 0, w): _u((1, w, 1)),
        (w, 1, w): _u((2, w, 0)),
        (w, 3, w): _u((half, "!c", 0)),
        (w, 0, t): _u((1, t, 1)),
        (w, 1, t): _u((Fraction(3, 2), t, 0)),
        (t, 0, w): _u((half, t, 1)),
        (t, 1, w): _u((Fraction(3, 2), t, 0)),
        (t, 0, t): _u((2, w, 0)),
        (t, 2, t): _u((Fraction(2, 3), "!c", 0)),
    }
    p = VlaPresentation(
        name=f"neveu-schwarz:{N}",
        N=N,
        generators=(Generator(w, 4 * N, Fraction(2)), Generator(t, 3 * N, Fraction(3, 2))),
        centrals=(Central("c", 0),),
        products=products,
    )
    return validate_presentation(p)


def build_affine(
    g: DgLieData, form: BilinearForm, N: Optional[int] = None, name: str = "affine", central: str = "K"
) -> VlaPresentation:
    """a_(0)b = [a,b], a_(1)b = <a,b> K, all weights 1."""
    if N is None:
        N = g.N
    if N != g.N:
        raise InvalidDgLie(f"bracket has degree {-2 * g.N}, expected {-2 * N}")
    validate_form(g, form)
    products = {}
    for (a, b), v in g.table.items():
        products[(a, 0, b)] = UElement({(0, c, 0): x for c, x in v.items()})
    for (a, b), val in form.entries.items():
        products[(a, 1, b)] = UElement({(1, central, 0): val})
    diff = {a: UElement({(0, c, 0): x for c, x in v.items()}) for a, v in g.d.items()}
    p = VlaPresentation(
        name=name,
        N=N,
        generators=tuple(Generator(a, d, Fraction(1)) for a, d in g.generators),
        centrals=(Central(central, 0),),
        differential=diff,
        products=products,
        form=BilinearFormData(central, dict(form.entries)),
    )
    return validate_presentation(p)


def dglie_from_affine(p: VlaPresentation) -> tuple[DgLieData, BilinearForm]:
    """Recover (g, form) from an affine presentation."""
    if p.form is None:
        raise InputError(f"{p.name} carries no invariant form; not an affine presentation")
    bracket = {}
    for (a, n, b), v in p.products.items():
        if n == 0:
            bracket[(a, b)] = {c: x for (kind, c, k), x in v.items()}
    diff = {a: {c: x for (kind, c, k), x in v.items()} for a, v in p.differential.items()}
    g = DgLieData([(x.id, x.degree) for x in p.generators], bracket, diff, N=p.N)
    return g, BilinearForm(dict(p.form.entries))


def sl2_data(N: int = 0) -> tuple[DgLieData, BilinearForm]:
    """sl2 in degree 0 with <e,f> = <f,e> = 1, <h,h> = 2 (so 2h∨ = 4)."""
    if N != 0:
        raise InvalidDgLie("sl2 in degree 0 needs N = 0")
    g = DgLieData(
        [("e", 0), ("f", 0), ("h", 0)],
        {("e", "f"): {"h": 1}, ("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}},
    )
    form = BilinearForm({("e", "f"): 1, ("f", "e"): 1, ("h", "h"): 2})
    return g, form


def build_affine_sl2() -> VlaPresentation:
    g, form = sl2_data()
    return build_affine(g, form, 0, name="affine-sl2")


def build_heisenberg() -> VlaPresentation:
    """Rank one: a_(1)a = K."""
    g = DgLieData([("a", 0)])
    return build_affine(g, BilinearForm({("a", "a"): 1}), 0, name="heisenberg")


def build_acyclic_pair() -> VlaPresentation:
    """Abelian a (degree 0), b (degree 1), d(a) = b, zero form."""
    g = DgLieData([("a", 0), ("b", 1)], differential={"a": {"b": 1}})
    return build_affine(g, BilinearForm(), 0, name="acyclic")


def build_dg_heisenberg() -> VlaPresentation:
    """Abelian, four generators, nonzero differential and nondegenerate form.

    a, b, a', b' in degrees 0, 1, -1, 0 with d a = b, d a' = b'.
    """
    g = DgLieData(
        [("a", 0), ("b", 1), ("a'", -1), ("b'", 0)],
        differential={"a": {"b": 1}, "a'": {"b'": 1}},
    )
    form = BilinearForm({("a", "b'"): 1, ("b'", "a"): 1, ("b", "a'"): -1, ("a'", "b"): 1})
    return build_affine(g, form, 0, name="dg-heisenberg")


def sl2_cone_data() -> DgLieData:
    """sl2 ⊗ C[s] with |s| = -1, s^2 = 0 and d(s x) = x: acyclic, nonabelian."""
    base = {("e", "f"): {"h": 1}, ("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}}
    bracket: Dict[tuple[str, str], Mapping[str, ScalarLike]] = dict(base)
    for (a, b), v in base.items():
        bracket[(a, "s" + b)] = {"s" + c: x for c, x in v.items()}
        bracket[("s" + a, b)] = {"s" + c: x for c, x in v.items()}
    gens = [(x, 0) for x in "efh"] + [("s" + x, -1) for x in "efh"]
    return DgLieData(gens, bracket, {"s" + x: {x: 1} for x in "efh"})


def build_sl2_cone() -> VlaPresentation:
    return build_affine(sl2_cone_data(), BilinearForm(), 0, name="sl2-cone")


CATALOG = {
    "virasoro": build_virasoro,
    "neveu-schwarz": build_neveu_schwarz,
    "affine-sl2": build_affine_sl2,
    "heisenberg": build_heisenberg,
    "acyclic": build_acyclic_pair,
    "dg-heisenberg": build_dg_heisenberg,
    "sl2-cone": build_sl2_cone,
}
ALIASES = {"vir": "virasoro", "ns": "neveu-schwarz", "sl2": "affine-sl2"}
PARAMETRIZED = {"virasoro", "neveu-schwarz"}


def from_catalog(entry: str) -> VlaPresentation:
    """``"virasoro"``, ``"virasoro:1"``, ``"ns:3"``, ``"sl2"``, ..."""
    name, _, arg = entry.partition(":")
    name = ALIASES.get(name, name)
    if name not in CATALOG:
        raise InputError(f"unknown catalog entry {entry!r}; known: {', '.join(sorted(CATALOG))}")
    if arg:
        if name not in PARAMETRIZED:
            raise InputError(f"{name} takes no parameter")
        try:
            N = int(arg)
        except ValueError:
            raise InputError(f"bad N in {entry!r}") from None
        return CATALOG[name](N)
    return CATALOG[name]()


# -- Casimir and Sugawara ---------------------------------------------------------


def casimir_h_dual(g: DgLieData, form: BilinearForm) -> tuple[list[tuple[str, Vector]], Fraction]:
    """Dual bases (a_i, b^i) with <b^i, a_j> = δ_ij and the Casimir eigenvalue 2h∨."""
    ids = g.ids
    inv = inverse(form.matrix(ids))
    if inv is None:
        raise Degenerate("the invariant form is degenerate")
    duals = []
    for i, a in enumerate(ids):
        # b^i = sum_l inv[i][l] e_l satisfies sum_l inv[i][l] <e_l, e_j> = δ_ij
        duals.append((a, {ids[l]: inv[i][l] for l in range(len(ids)) if inv[i][l]}))
    scalar: Optional[Fraction] = None
    for x in ids:
        ex = {x: Fraction(1)}
        omega: Vector = {}
        for a, b in duals:
            _vadd(omega, g.br({a: Fraction(1)}, g.br(b, ex)), Fraction(1))
        lam = omega.get(x, Fraction(0))
        if any(k != x for k in omega) or (scalar is not None and lam != scalar):
            raise NotScalar("the Casimir does not act on the adjoint representation by a scalar")
        scalar = lam
    return duals, scalar if scalar is not None else Fraction(0)


def sugawara(ctx: EnvelopeContext, k: Optional[ScalarLike] = None) -> tuple[VVector, Fraction]:
    """The Sugawara vector and its central charge k sdim / (k + h∨).

    ``k`` defaults to the context's level for the affine central.
    """
    p = ctx.presentation
    g, form = dglie_from_affine(p)
    assert p.form is not None
    level = ctx.levels[p.form.central]
    if k is not None and parse_scalar(k) != level:
        raise InputError(
            f"k = {format_scalar(parse_scalar(k))} differs from the context level {format_scalar(level)}"
        )
    duals, two_h = casimir_h_dual(g, form)
    h_dual = two_h / 2
    if level + h_dual == 0:
        raise CriticalLevel(f"k = -h∨ = {format_scalar(-h_dual)} is the critical level")
    pref = 1 / (2 * (level + h_dual))
    out: Dict = {}
    for a, b in duals:
        for bl, cb in b.items():
            # a_{-1} bl_{-1} |0>
            inner = ctx._apply((-1, bl), ())
            _add_into(out, ctx._apply_to_terms((-1, a), inner), pref * cb)
    omega = _vec(out)
    degs = {ctx.monomial_degree(m) for m in omega.keys()}
    if degs - {4 * p.N}:
        raise InvalidDgLie(f"Sugawara vector has degrees {sorted(degs)}, expected {4 * p.N}")
    c = level * sdim(g) / (level + h_dual)
    return omega, c


def verify_virasoro_action(
    omega: VVector,
    ctx: EnvelopeContext,
    window: tuple[int, int] = (-3, 3),
    cap: Optional[ScalarLike] = None,
    c: Optional[ScalarLike] = None,
) -> AxiomReport:
    """Check that L(n) = ω_{n+1} satisfies the Virasoro relations on the basis.

    Vectors tested: the PBW basis up to ``cap`` (default: the context cap).
    Checks [L(m), L(n)] = (m-n) L(m+n) + δ_{m+n,0} (m^3-m)/12 c, L(-1) = D and
    L(0) v = weight(v) v. The central charge ``c`` is read off [L(2), L(-2)]|0>
    when not given. d(ω) is recorded, not judged.
    """
    cap_q = ctx.weight_cap if cap is None else parse_scalar(cap)
    basis = [m for m in ctx.basis() if ctx.monomial_weight(m) <= cap_q]
    tw = _terms(omega)
    report = AxiomReport(subject="virasoro action", window=window, scope=f"PBW basis of weight <= {format_scalar(cap_q)}")

    def L(n: int, terms):
        out: Dict = {}
        for mono, cv in terms.items():
            _add_into(out, ctx._vertex_terms(tw, n + 1, {mono: Fraction(1)}), cv)
        return out

    if c is None:
        vac = {(): Fraction(1)}
        val = L(2, L(-2, vac))
        c_q = 2 * val.get((), Fraction(0))
    else:
        c_q = parse_scalar(c)
    report.info["central charge"] = format_scalar(c_q)
    report.info["d(omega)"] = str(_vec(_d_terms(ctx, tw)))

    lo, hi = window
    comm = report.check("commutator")
    trans = report.check("L(-1) = D")
    grade = report.check("L(0) = weight")
    for mono in basis:
        v = {mono: Fraction(1)}
        label = _mono_label(mono)
        Lv = {n: L(n, v) for n in range(lo, hi + 1)}
        for m in range(lo, hi + 1):
            for n in range(lo, hi + 1):
                lhs = dict(L(m, Lv[n]))
                _add_into(lhs, L(n, Lv[m]), Fraction(-1))
                rhs: Dict = {}
                _add_into(rhs, L(m + n, v), Fraction(m - n))
                if m + n == 0:
                    _add_into(rhs, v, Fraction(m**3 - m, 12) * c_q)
                _add_into(lhs, rhs, Fraction(-1))
                comm.record(f"[L({m}),L({n})] {label}", _vec(lhs) if lhs else None)
        d = dict(Lv.get(-1) if -1 in Lv else L(-1, v))
        _add_into(d, ctx._translate_mono(mono), Fraction(-1))
        trans.record(f"L(-1) {label}", _vec(d) if d else None)
        g0 = dict(Lv.get(0) if 0 in Lv else L(0, v))
        _add_into(g0, v, -ctx.monomial_weight(mono))
        grade.record(f"L(0) {label}", _vec(g0) if g0 else None)
    return report


def _d_terms(ctx: EnvelopeContext, terms):
    out: Dict = {}
    for mono, c in terms.items():
        _add_into(out, ctx._d_mono(mono), c)
    return out


def _mono_label(mono) -> str:
    return " ".join(f"{a}_{n}" for n, a in mono) + " |0>" if mono else "|0>"
