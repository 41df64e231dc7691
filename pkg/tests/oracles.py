"""Independent reference implementations used to cross-check the engine.

None of these import the package's algorithms: they are brute-force or
closed-form computations written separately.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb


def binomial_oracle(n: int, i: int) -> int:
    """C(n, i) via math.comb, using C(n, i) = (-1)^i C(i - n - 1, i) for n < 0."""
    if n >= 0:
        return comb(n, i)
    return (-1) ** i * comb(i - n - 1, i)


def partitions_min_part(total: int, min_part: int) -> int:
    """Brute-force count of multisets of integers >= min_part summing to total."""
    if total == 0:
        return 1
    count = 0
    parts = range(min_part, total + 1)
    for r in range(1, total // max(min_part, 1) + 1):
        for combo in combinations_with_replacement(parts, r):
            if sum(combo) == total:
                count += 1
    return count


# Closed-form mode brackets. Results are dicts {(name, n): coeff}, with the
# central recorded as (central, -1).


def virasoro_bracket(m: int, n: int) -> dict:
    out = {}
    if m != n:
        out[("ω", m + n - 1)] = Fraction(m - n)
    if m + n == 2:
        c = Fraction(m * (m - 1) * (m - 2), 12)
        if c:
            out[("c", -1)] = c
    return out


def ns_closed_form(x: str, m: int, y: str, n: int) -> dict:
    """Relations written in L_k, G_k, then shifted back: ω_m = L_{m-1}, τ_m = G_{m-1}."""
    out: dict = {}

    def add(key, val):
        if val:
            out[key] = out.get(key, 0) + Fraction(val)

    if x == "ω" and y == "ω":
        a, b = m - 1, n - 1
        # [L_a, L_b] = (a - b) L_{a+b} + (a^3 - a)/12 δ_{a+b,0} c
        add(("ω", a + b + 1), a - b)
        if a + b == 0:
            add(("c", -1), Fraction(a**3 - a, 12))
    elif x == "τ" and y == "ω":
        a, b = m - 1, n - 1
        # [G_a, L_b] = (a + (1 - b)/2) G_{a+b}
        add(("τ", a + b + 1), Fraction(a) + Fraction(1 - b, 2))
    elif x == "ω" and y == "τ":
        a, b = n - 1, m - 1
        add(("τ", a + b + 1), -(Fraction(a) + Fraction(1 - b, 2)))
    else:
        a, b = m - 1, n - 1
        # [G_a, G_b] = 2 L_{a+b+1} + a(a+1)/3 δ_{a+b+1,0} c
        add(("ω", a + b + 2), 2)
        if a + b + 1 == 0:
            add(("c", -1), Fraction(a * (a + 1), 3))
    return out


def affine_closed_form(lie: dict, form: dict, a: str, m: int, b: str, n: int) -> dict:
    """[a_m, b_n] = [a,b]_{m+n} + m <a,b> δ_{m+n,0} K_{-1}."""
    out = {}
    for c, x in lie.get((a, b), {}).items():
        out[(c, m + n)] = Fraction(x)
    if m + n == 0 and form.get((a, b)) and m:
        out[("K", -1)] = m * Fraction(form[(a, b)])
    return out


def lelement_as_dict(x) -> dict:
    return {(mode.name, mode.n): c for mode, c in x.items()}
