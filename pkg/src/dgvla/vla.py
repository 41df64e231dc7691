"""Presentations of dg vertex Lie algebras and elements of U.

U is modelled as a free C[D]-module on finitely many generators plus a summand
of D-trivial central symbols. The n-th products a_(n)b (n >= 0) are given on
generator pairs only; everything else follows from sesquilinearity:

    (D u)_(n) v = -n u_(n-1) v
    u_(n) (D v) = D(u_(n) v) + n u_(n-1) v

and centrals annihilate and are annihilated. Conformal weights are part of the
data: every product entry must be weight homogeneous, which is what makes all
downstream computations finite.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .combination import Combination
from .errors import (
    DegreeMismatch,
    DifferentialNotSquareZero,
    DuplicateId,
    OddGenerator,
    TruncationViolation,
    UnknownGenerator,
    WeightMismatch,
)
from .graded import binomial, falling_factorial, format_scalar, koszul_sign, sign_power

GEN = 0
CENTRAL = 1

# (kind, id, dpower); centrals always carry dpower 0
UKey = Tuple[int, str, int]


class UElement(Combination):
    """Finite sum of c * D^k(gen) plus multiples of central symbols.

    Keys are ``(kind, id, dpower)`` with kind 0 for generators, 1 for centrals.
    """

    __slots__ = ()

    @classmethod
    def gen(cls, name: str, dpower: int = 0, coeff=1) -> "UElement":
        return cls({(GEN, name, dpower): Fraction(coeff)})

    @classmethod
    def central(cls, name: str, coeff=1) -> "UElement":
        return cls({(CENTRAL, name, 0): Fraction(coeff)})

    @property
    def dterms(self) -> list[tuple[Fraction, int, str]]:
        return [(c, k, g) for (kind, g, k), c in self._terms.items() if kind == GEN]

    @property
    def cterms(self) -> list[tuple[Fraction, str]]:
        return [(c, g) for (kind, g, _), c in self._terms.items() if kind == CENTRAL]

    def __str__(self) -> str:
        return format_u(self)


def _term_text(kind: int, name: str, k: int) -> str:
    if kind == CENTRAL or k == 0:
        return name
    if k == 1:
        return f"D{name}"
    return f"D^{k}{name}"


def format_linear(pairs: Iterable[tuple[Fraction, str]]) -> str:
    """Render ``[(coeff, symbol), ...]`` as ``"4*w_1 - 1/2*c_-1"``."""
    out = []
    for c, sym in pairs:
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = sym if mag == 1 else f"{format_scalar(mag)}*{sym}"
        if not out:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f"{sign} {body}")
    return " ".join(out) if out else "0"


def format_u(u: UElement) -> str:
    return format_linear((c, _term_text(*key)) for key, c in u.items())


@dataclass(frozen=True)
class Generator:
    id: str
    degree: int
    weight: Fraction


@dataclass(frozen=True)
class Central:
    id: str
    degree: int = 0


@dataclass(frozen=True)
class BilinearFormData:
    """Optional invariant-form annotation carried by affine presentations."""

    central: str
    entries: Mapping[tuple[str, str], Fraction]


@dataclass(frozen=True, eq=True)
class VlaPresentation:
    """Finite defining data of a dg vertex Lie algebra.

    ``products`` maps ``(a, n, b)`` to ``a_(n)b`` for generator ids ``a, b`` and
    ``n >= 0``; missing entries are zero. ``differential`` maps generator ids to
    ``d(a)``; missing entries are zero.
    """

    name: str
    N: int
    generators: tuple[Generator, ...]
    centrals: tuple[Central, ...] = ()
    differential: Mapping[str, UElement] = field(default_factory=dict)
    products: Mapping[tuple[str, int, str], UElement] = field(default_factory=dict)
    form: Optional[BilinearFormData] = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    # -- lookups -----------------------------------------------------------
    def generator(self, gid: str) -> Generator:
        try:
            return self._gen_index[gid]
        except KeyError:
            raise UnknownGenerator(f"unknown generator {gid!r}") from None

    @property
    def _gen_index(self) -> Dict[str, Generator]:
        idx = self._cache.get("gen_index")
        if idx is None:
            idx = {g.id: g for g in self.generators}
            self._cache["gen_index"] = idx
        return idx

    @property
    def generator_ids(self) -> tuple[str, ...]:
        return tuple(g.id for g in self.generators)

    @property
    def central_ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.centrals)

    def is_generator(self, name: str) -> bool:
        return name in self._gen_index

    def is_central(self, name: str) -> bool:
        return any(c.id == name for c in self.centrals)

    def central(self, cid: str) -> Central:
        for c in self.centrals:
            if c.id == cid:
                return c
        raise UnknownGenerator(f"unknown central {cid!r}")

    def degree_of(self, kind: int, name: str, dpower: int = 0) -> int:
        if kind == CENTRAL:
            return self.central(name).degree
        return self.generator(name).degree + 2 * self.N * dpower

    def weight_of(self, kind: int, name: str, dpower: int = 0) -> Fraction:
        if kind == CENTRAL:
            return Fraction(0)
        return self.generator(name).weight + dpower

    def product(self, a: str, n: int, b: str) -> UElement:
        return self.products.get((a, n, b), _ZERO)

    def max_product_index(self) -> int:
        """Largest n with some a_(n)b nonzero on generators (-1 if none)."""
        top = self._cache.get("max_n")
        if top is None:
            top = max((n for (_, n, _), v in self.products.items() if v), default=-1)
            self._cache["max_n"] = top
        return top

    def d_of(self, gid: str) -> UElement:
        return self.differential.get(gid, _ZERO)

    def has_differential(self) -> bool:
        return any(bool(v) for v in self.differential.values())


_ZERO = UElement()


# -- homogeneity helpers -------------------------------------------------


def element_degrees(p: VlaPresentation, u: UElement) -> set[int]:
    return {p.degree_of(kind, name, k) for (kind, name, k), _ in u.items()}


def element_weights(p: VlaPresentation, u: UElement) -> set[Fraction]:
    return {p.weight_of(kind, name, k) for (kind, name, k), _ in u.items()}


def homogeneous_degree(p: VlaPresentation, u: UElement) -> Optional[int]:
    degs = element_degrees(p, u)
    return degs.pop() if len(degs) == 1 else None


# -- operations ----------------------------------------------------------


def apply_D(u: UElement) -> UElement:
    """D^k a -> D^(k+1) a; centrals -> 0."""
    return UElement({(GEN, g, k + 1): c for (kind, g, k), c in u.items() if kind == GEN})


def apply_D_power(u: UElement, k: int) -> UElement:
    if k == 0:
        return u
    return UElement({(GEN, g, j + k): c for (kind, g, j), c in u.items() if kind == GEN})


def apply_differential(p: VlaPresentation, u: UElement) -> UElement:
    """Linear extension of the differential table, commuting with D."""
    out: Dict[UKey, Fraction] = {}
    for (kind, g, k), c in u.items():
        if kind == CENTRAL:
            continue
        for (kind2, g2, k2), c2 in p.d_of(g).items():
            if kind2 == CENTRAL:
                if k == 0:
                    key = (CENTRAL, g2, 0)
                    out[key] = out.get(key, 0) + c * c2
                continue
            key = (GEN, g2, k2 + k)
            out[key] = out.get(key, 0) + c * c2
    return UElement(out)


def _gen_product_dv(p: VlaPresentation, a: str, n: int, b: str, l: int) -> Dict[UKey, Fraction]:
    """a_(n)(D^l b) = sum_i C(n,i) l!/(l-i)! D^(l-i)(a_(n-i) b)."""
    out: Dict[UKey, Fraction] = {}
    for i in range(0, min(l, n) + 1):
        coeff = binomial(n, i) * falling_factorial(l, i)
        if not coeff:
            continue
        for (kind, g, k), c in p.product(a, n - i, b).items():
            if kind == CENTRAL:
                if l - i == 0:
                    key = (CENTRAL, g, 0)
                    out[key] = out.get(key, 0) + coeff * c
                continue
            key = (GEN, g, k + l - i)
            out[key] = out.get(key, 0) + coeff * c
    return out


def nth_product(p: VlaPresentation, u: UElement, n: int, v: UElement) -> UElement:
    """u_(n) v for arbitrary elements of U, n >= 0."""
    if n < 0:
        raise ValueError("nth_product: n must be >= 0")
    out: Dict[UKey, Fraction] = {}
    for (ka, a, k), ca in u.items():
        if ka == CENTRAL:
            continue
        # (D^k a)_(n) = (-1)^k n(n-1)...(n-k+1) a_(n-k)
        if k > n:
            continue
        left = sign_power(k) * falling_factorial(n, k)
        m = n - k
        for (kb, b, l), cb in v.items():
            if kb == CENTRAL:
                continue
            scale = ca * cb * left
            for key, c in _gen_product_dv(p, a, m, b, l).items():
                out[key] = out.get(key, 0) + scale * c
    return UElement(out)


def product_support(p: VlaPresentation, u: UElement, v: UElement) -> int:
    """An upper bound for {n : u_(n) v != 0} (inclusive); -1 if always zero."""
    top = p.max_product_index()
    if top < 0:
        return -1
    kmax = max((k for (kind, _, k), _ in u.items() if kind == GEN), default=0)
    return top + kmax


def half_skew_defect(p: VlaPresentation, u: UElement, v: UElement) -> Dict[int, UElement]:
    """Nonzero defects of half skew-symmetry, indexed by n.

    defect(n) = u_(n)v - (-1)^{|u||v|} sum_i (-1)^{n+1+i}/i! D^i(v_(n+i)u)
    """
    du = homogeneous_degree(p, u)
    dv = homogeneous_degree(p, v)
    if du is None or dv is None:
        raise ValueError("half_skew_defect needs homogeneous elements")
    sign = koszul_sign(du, dv)
    top = max(product_support(p, u, v), product_support(p, v, u))
    defects: Dict[int, UElement] = {}
    for n in range(0, top + 1):
        rhs = UElement()
        for i in range(0, top - n + 1):
            term = apply_D_power(nth_product(p, v, n + i, u), i)
            if term:
                rhs = rhs + term * Fraction(sign_power(n + 1 + i), factorial(i))
        defect = nth_product(p, u, n, v) - rhs * sign
        if defect:
            defects[n] = defect
    return defects


def zero_mode_bracket(p: VlaPresentation, u: UElement, v: UElement) -> UElement:
    """Representative of u_(0)v in U/DU: all D^k terms with k >= 1 dropped."""
    return coset_normal_form(nth_product(p, u, 0, v))


def coset_normal_form(u: UElement) -> UElement:
    return UElement({key: c for key, c in u.items() if key[0] == CENTRAL or key[2] == 0})


def derived_lie_bracket(p: VlaPresentation, u: UElement, v: UElement) -> UElement:
    """sum_i (-1)^i/(i+1)! D^(i+1)(u_(i) v): the Lie bracket U inherits from L(U)_-."""
    out = UElement()
    for i in range(0, product_support(p, u, v) + 1):
        term = nth_product(p, u, i, v)
        if term:
            out = out + apply_D_power(term, i + 1) * Fraction(sign_power(i), factorial(i + 1))
    return out


# -- validation ----------------------------------------------------------


def validate_presentation(p: VlaPresentation) -> VlaPresentation:
    """Check every structural invariant; return ``p`` unchanged on success."""
    ids = [g.id for g in p.generators] + [c.id for c in p.centrals]
    seen: set[str] = set()
    for i in ids:
        if i in seen:
            raise DuplicateId(f"duplicate id {i!r}")
        seen.add(i)
    if "D" in seen:
        raise DuplicateId("'D' is reserved for the translation operator")

    def check_element(u: UElement, where: str) -> None:
        for (kind, name, _), _c in u.items():
            if kind == GEN and not p.is_generator(name):
                raise UnknownGenerator(f"{where}: unknown generator {name!r}")
            if kind == CENTRAL and not p.is_central(name):
                raise UnknownGenerator(f"{where}: unknown central {name!r}")

    for (a, n, b), val in p.products.items():
        where = f"{a}_({n}){b}"
        ga, gb = p.generator(a), p.generator(b)
        if n < 0:
            raise TruncationViolation(f"{where}: product index must be >= 0")
        check_element(val, where)
        if not val:
            continue
        wt_bound = ga.weight + gb.weight - 1
        if n > wt_bound:
            raise TruncationViolation(
                f"{where}: n exceeds the weight bound {format_scalar(wt_bound)}"
            )
        if ga.weight <= 0 or gb.weight <= 0:
            raise WeightMismatch(f"{where}: generators with weight <= 0 cannot carry products")
        want_deg = ga.degree + gb.degree - 2 * p.N * (n + 1)
        for d in element_degrees(p, val):
            if d != want_deg:
                raise DegreeMismatch(f"{where}: degree {d} != {want_deg}")
        want_wt = ga.weight + gb.weight - n - 1
        for w in element_weights(p, val):
            if w != want_wt:
                raise WeightMismatch(
                    f"{where}: weight {format_scalar(w)} != {format_scalar(want_wt)}"
                )

    for gid, val in p.differential.items():
        g = p.generator(gid)
        check_element(val, f"d({gid})")
        for d in element_degrees(p, val):
            if d != g.degree + 1:
                raise DegreeMismatch(f"d({gid}): degree {d} != {g.degree + 1}")
        for w in element_weights(p, val):
            if w != g.weight:
                raise WeightMismatch(f"d({gid}): weight changes")
    for g in p.generators:
        dd = apply_differential(p, apply_differential(p, UElement.gen(g.id)))
        if dd:
            raise DifferentialNotSquareZero(f"d(d({g.id})) = {dd}")
    if p.form is not None and not p.is_central(p.form.central):
        raise UnknownGenerator(f"form central {p.form.central!r} not declared")
    return p


# -- the VLA functor on even dg Lie algebras -----------------------------


def build_vla_from_even_dglie(
    name: str,
    N: int,
    generators: Iterable[tuple[str, int]],
    bracket: Mapping[tuple[str, str], Mapping[str, Fraction]],
    differential: Optional[Mapping[str, Mapping[str, Fraction]]] = None,
) -> VlaPresentation:
    """Presentation with a_(0)b = [a, b] and all higher products zero.

    ``bracket`` must be the full table (both orders). Every generator must sit
    in even degree; weights are all 1, the only choice making a_(0)b weight
    homogeneous.
    """
    gens = tuple(generators)
    for gid, deg in gens:
        if deg % 2:
            raise OddGenerator(f"generator {gid!r} has odd degree {deg}")
    products = {}
    for (a, b), val in bracket.items():
        el = UElement({(GEN, c, 0): Fraction(x) for c, x in val.items()})
        if el:
            products[(a, 0, b)] = el
    diff = {}
    for a, val in (differential or {}).items():
        el = UElement({(GEN, c, 0): Fraction(x) for c, x in val.items()})
        if el:
            diff[a] = el
    p = VlaPresentation(
        name=name,
        N=N,
        generators=tuple(Generator(g, d, Fraction(1)) for g, d in gens),
        products=products,
        differential=diff,
    )
    return validate_presentation(p)


def with_products(
    p: VlaPresentation, updates: Mapping[tuple[str, int, str], UElement], name: Optional[str] = None
) -> VlaPresentation:
    """Copy of ``p`` with some product entries replaced (a zero value deletes)."""
    products = dict(p.products)
    for key, val in updates.items():
        if val:
            products[key] = val
        else:
            products.pop(key, None)
    return validate_presentation(replace(p, name=name or p.name, products=products, _cache={}))
