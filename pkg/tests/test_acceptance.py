"""The eight acceptance criteria, each with its runtime budget.

Every criterion prints one PASS/FAIL line (also collected into the terminal
summary). Exact equality throughout; the only tolerance is wall-clock time.
"""

from __future__ import annotations

import random
import time
from contextlib import contextmanager
from fractions import Fraction

from conftest import ACCEPTANCE_LINES
from dgvla.catalog import from_catalog, sugawara, verify_virasoro_action
from dgvla.envelope import (
    EnvelopeContext,
    VVector,
    character,
    character_totals,
    cohomology_dims,
    differential_on_V,
    embed_u,
    euler_characteristics,
    kappa,
    locality_order,
    mode_apply,
    skew_symmetry_defect,
    translate,
    vertex_mode,
)
from dgvla.loop import LElement, Mode, bracket_of, check_dg_lie, iota, iota_inverse, loop_bracket
from dgvla.vla import UElement, nth_product, with_products
from oracles import lelement_as_dict, ns_closed_form, partitions_min_part, virasoro_bracket

M = VVector.monomial
VAC = VVector.vacuum()


@contextmanager
def criterion(number: int, title: str, budget: float):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        within = elapsed < budget
        status = "PASS" if ok and within else "FAIL"
        line = f"criterion {number}: {status}  {title}  ({elapsed:.2f} s, budget {budget:g} s)"
        print(line)
        ACCEPTANCE_LINES.append(line)
    assert within, f"criterion {number} took {elapsed:.2f} s, budget {budget} s"


def basis_vectors(ctx, max_weight):
    return [VVector({m: 1}) for m in ctx.basis() if ctx.monomial_weight(m) <= max_weight]


def test_1_virasoro_bracket_table():
    with criterion(1, "Virasoro bracket table, m, n in [-6, 6]", 1):
        vir = from_catalog("virasoro")
        for m in range(-6, 7):
            for n in range(-6, 7):
                x = LElement.mode(Mode.gen("ω", m))
                y = LElement.mode(Mode.gen("ω", n))
                assert lelement_as_dict(loop_bracket(vir, x, y)) == virasoro_bracket(m, n)


def test_2_neveu_schwarz_table():
    with criterion(2, "Neveu-Schwarz relations, indices in [-4, 4]", 1):
        ns = from_catalog("ns")
        for x in ("ω", "τ"):
            for y in ("ω", "τ"):
                for m in range(-4, 5):
                    for n in range(-4, 5):
                        got = lelement_as_dict(bracket_of(ns, x, m, y, n))
                        assert got == ns_closed_form(x, m, y, n), (x, m, y, n)


def test_3_axiom_suite():
    with criterion(3, "dg Lie axioms on the catalog, three mutations rejected", 10):
        for name in ("virasoro", "ns", "sl2", "heisenberg", "dg-heisenberg"):
            report = check_dg_lie(from_catalog(name), (-5, 5))
            assert report.passed, report.to_text()
        mutations = [
            ("virasoro", ("ω", 1, "ω"), UElement.gen("ω", 0, 3), "jacobi"),
            ("sl2", ("e", 0, "f"), UElement.gen("h", 0, 2), "jacobi"),
            ("ns", ("τ", 2, "τ"), UElement.central("c"), "jacobi"),
        ]
        for name, key, value, check in mutations:
            report = check_dg_lie(with_products(from_catalog(name), {key: value}), (-5, 5))
            assert not report.passed
            defects = report.check(check).defects
            assert defects and all(d for _, d in defects)


def test_4_characters():
    with criterion(4, "characters against the partition oracle", 5):
        expected_vir = [partitions_min_part(w, 2) for w in range(11)]
        assert expected_vir == [1, 0, 1, 1, 2, 2, 4, 4, 7, 8, 12]
        vir = EnvelopeContext(from_catalog("virasoro"), {"c": Fraction(1, 2)}, 10)
        assert character_totals(vir) == expected_vir
        heis = EnvelopeContext(from_catalog("heisenberg"), {"K": 1}, 8)
        assert character_totals(heis) == [partitions_min_part(w, 1) for w in range(9)]


def test_5_sugawara():
    with criterion(5, "Sugawara for sl2 at k = 1: c = 1 and the Virasoro action", 60):
        ctx = EnvelopeContext(from_catalog("sl2"), {"K": 1}, 10)
        omega, c = sugawara(ctx, 1)
        assert c == Fraction(3 * 1, 1 + 2)
        report = verify_virasoro_action(omega, ctx, (-3, 3), cap=4)
        assert report.passed, report.to_text()
        assert report.info["central charge"] == "1"
        assert {ch.name for ch in report.checks} == {"commutator", "L(-1) = D", "L(0) = weight"}


def test_6_locality():
    with criterion(6, "locality orders 4 (Virasoro) and 2 (Heisenberg), probes of weight <= 6", 30):
        vir = EnvelopeContext(from_catalog("virasoro"), {"c": Fraction(1, 2)}, 6)
        assert locality_order(kappa("ω", vir), kappa("ω", vir), vir) == 4
        heis = EnvelopeContext(from_catalog("heisenberg"), {"K": 1}, 6)
        assert locality_order(kappa("a", heis), kappa("a", heis), heis) == 2


def test_7_differential_coherence():
    with criterion(7, "acyclic example: d^2 = 0, chain map, cohomology, Euler characteristic", 60):
        ctx = EnvelopeContext(from_catalog("acyclic"), {"K": 0}, 6)
        for v in basis_vectors(ctx, 6):
            assert not differential_on_V(differential_on_V(v, ctx), ctx)
        # products u_m v with m >= -3 stay below weight 3 + 3 + 2
        wide = EnvelopeContext(ctx.presentation, ctx.levels, 8)
        rng = random.Random(2024)
        small = basis_vectors(wide, 3)
        for _ in range(50):
            u, v, m = rng.choice(small), rng.choice(small), rng.randint(-3, 3)
            su = -1 if wide.parity_of(u) else 1
            lhs = differential_on_V(vertex_mode(u, m, v, wide), wide)
            rhs = vertex_mode(differential_on_V(u, wide), m, v, wide) + vertex_mode(
                u, m, differential_on_V(v, wide), wide
            ) * su
            assert lhs == rhs
        per_weight: dict = {}
        for w, _, h in cohomology_dims(ctx):
            per_weight[w] = per_weight.get(w, 0) + h
        assert [per_weight[w] for w in range(5)] == [1, 0, 0, 0, 0]
        alternating = {w: sum((-1) ** (q % 2) * n for q, n in dims.items()) for w, dims in character(ctx)}
        for w, (chi_v, chi_h) in euler_characteristics(ctx).items():
            assert chi_v == alternating[w] == chi_h


def test_8_structural_identities():
    with criterion(8, "skew-symmetry, translation, vacuum, kappa, iota; weight <= 6, window [-4, 4]", 120):
        for name, levels in (("virasoro", {"c": Fraction(1, 2)}), ("ns", {"c": 1}), ("sl2", {"K": 1})):
            p = from_catalog(name)
            # pairs of total weight <= 6 and modes >= -5 stay within weight 10
            ctx = EnvelopeContext(p, levels, 10)
            six = basis_vectors(ctx, 6)
            window = range(-4, 5)
            pairs = [
                (u, v)
                for u in six
                for v in six
                if max(ctx.weights_of(u)) + max(ctx.weights_of(v)) <= 6
            ]
            for u, v in pairs:
                assert skew_symmetry_defect(u, v, ctx, (-4, 4)) == {}
                for m in window:
                    assert vertex_mode(translate(u, ctx), m, v, ctx) == vertex_mode(u, m - 1, v, ctx) * (-m)
            for v in six:
                assert vertex_mode(VAC, -1, v, ctx) == v
                assert all(not vertex_mode(VAC, m, v, ctx) for m in window if m != -1)
                assert vertex_mode(v, -1, VAC, ctx) == v
                assert all(not vertex_mode(v, m, VAC, ctx) for m in window if m >= 0)
            for a in p.generator_ids:
                for b in p.generator_ids:
                    for n in range(0, 5):
                        assert vertex_mode(kappa(a, ctx), n, kappa(b, ctx), ctx) == embed_u(
                            nth_product(p, UElement.gen(a), n, UElement.gen(b)), ctx
                        )
                for m in window:
                    for v in basis_vectors(ctx, 4):
                        assert vertex_mode(kappa(a, ctx), m, v, ctx) == mode_apply(a, m, v, ctx)
            for a in p.generator_ids:
                for k in range(0, 5):
                    u = UElement.gen(a, k)
                    assert iota_inverse(iota(u)) == u
                for n in range(-4, 0):
                    x = LElement({Mode(0, a, n): 1})
                    assert iota(iota_inverse(x)) == x
            for cid in p.central_ids:
                assert iota_inverse(iota(UElement.central(cid))) == UElement.central(cid)
