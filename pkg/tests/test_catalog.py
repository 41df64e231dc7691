from __future__ import annotations

from fractions import Fraction

import pytest

from dgvla.catalog import (
    BilinearForm,
    DgLieData,
    build_affine,
    build_neveu_schwarz,
    build_virasoro,
    casimir_h_dual,
    dglie_from_affine,
    from_catalog,
    sdim,
    sl2_cone_data,
    sl2_data,
    sugawara,
    validate_form,
    verify_virasoro_action,
)
from dgvla.envelope import EnvelopeContext, VVector, character_totals, mode_apply, vertex_mode
from dgvla.errors import (
    CriticalLevel,
    Degenerate,
    FormInvariantViolation,
    InputError,
    InvalidDgLie,
    NotScalar,
)
from dgvla.vla import UElement, nth_product, zero_mode_bracket

M = VVector.monomial


# -- builders -----------------------------------------------------------------------


@pytest.mark.parametrize("N", [0, 1, 2, -1])
def test_virasoro_degrees(N):
    p = build_virasoro(N)
    assert p.generator("ω").degree == 4 * N
    assert p.product("ω", 3, "ω") == UElement.central("c", Fraction(1, 2))
    assert p.central("c").degree == 0


def test_neveu_schwarz_products():
    p = build_neveu_schwarz()
    tau = UElement.gen("τ")
    assert p.generator("τ").weight == Fraction(3, 2)
    assert p.generator("τ").degree % 2 == 1
    assert nth_product(p, tau, 2, tau) == UElement.central("c", Fraction(2, 3))
    assert nth_product(p, tau, 0, tau) == UElement.gen("ω", 0, 2)
    assert nth_product(p, tau, 0, UElement.gen("ω")) == UElement.gen("τ", 1, Fraction(1, 2))


def test_neveu_schwarz_rejects_even_shift_only_in_the_checker():
    # N = 0 builds, but the odd field then sits in even degree
    p = build_neveu_schwarz(0)
    assert p.generator("τ").degree % 2 == 0


def test_catalog_lookup():
    assert from_catalog("vir") == from_catalog("virasoro")
    assert from_catalog("virasoro:2").N == 2
    with pytest.raises(InputError):
        from_catalog("nope")
    with pytest.raises(InputError):
        from_catalog("sl2:1")
    with pytest.raises(InputError):
        from_catalog("virasoro:x")


def test_affine_round_trip():
    g, form = sl2_data()
    p = build_affine(g, form)
    g2, form2 = dglie_from_affine(p)
    assert g2.table == g.table and form2.entries == form.entries


def test_affine_zero_modes_recover_the_bracket():
    g, _ = sl2_data()
    p = from_catalog("sl2")
    for a in g.ids:
        for b in g.ids:
            expected = UElement({(0, c, 0): x for c, x in g.br({a: 1}, {b: 1}).items()})
            assert zero_mode_bracket(p, UElement.gen(a), UElement.gen(b)) == expected


def test_affine_weights_are_one():
    for name in ("sl2", "heisenberg", "acyclic", "dg-heisenberg", "sl2-cone"):
        assert {g.weight for g in from_catalog(name).generators} == {1}


# -- dg Lie data and forms ------------------------------------------------------------------


def test_dglie_rejects_bad_jacobi():
    with pytest.raises(InvalidDgLie):
        DgLieData([("x", 0), ("y", 0), ("z", 0)], {("x", "y"): {"z": 1}, ("y", "z"): {"y": 1}})


def test_dglie_rejects_non_derivation():
    with pytest.raises(InvalidDgLie):
        DgLieData([("x", 0), ("y", 0), ("dx", 1)], {("x", "y"): {"x": 1}}, {"x": {"dx": 1}})


def test_dglie_rejects_d_squared():
    with pytest.raises(InvalidDgLie):
        DgLieData([("x", 0), ("y", 1), ("z", 2)], {}, {"x": {"y": 1}, "y": {"z": 1}})


def test_sl2_cone_is_a_dg_lie_algebra():
    g = sl2_cone_data()
    assert g.apply_d({"se": Fraction(1)}) == {"e": 1}
    assert g.br({"e": 1}, {"sf": 1}) == {"sh": 1}


@pytest.mark.parametrize(
    "g,entries,condition",
    [
        (DgLieData([("a", 0)]), {("a", "z"): 1}, "support"),
        (DgLieData([("a", 0), ("b", 1)]), {("a", "b"): 1, ("b", "a"): 1}, "support"),
        (
            DgLieData([("a", 0), ("b", 1), ("c", -1)], differential={"a": {"b": 1}}),
            {("b", "c"): 1, ("c", "b"): -1},
            "d-invariance",
        ),
        (DgLieData([("a", 0), ("b", 0)]), {("a", "b"): 1, ("b", "a"): 2}, "graded-symmetry"),
        (sl2_data()[0], {("e", "f"): 1, ("f", "e"): 1, ("h", "h"): 1}, "invariance"),
    ],
)
def test_form_violations(g, entries, condition):
    with pytest.raises(FormInvariantViolation) as info:
        validate_form(g, BilinearForm(entries))
    assert info.value.condition == condition


def test_valid_forms_pass():
    g, form = sl2_data()
    validate_form(g, form)
    validate_form(sl2_cone_data(), BilinearForm())


def test_sdim():
    assert sdim(sl2_data()[0]) == 3
    assert sdim(sl2_cone_data()) == 0
    assert sdim(DgLieData([("a", 0), ("b", 1), ("c", 1)])) == -1


# -- Casimir ------------------------------------------------------------------------------------


def test_casimir_sl2():
    g, form = sl2_data()
    duals, two_h = casimir_h_dual(g, form)
    assert two_h == 4
    assert dict(duals) == {"e": {"f": 1}, "f": {"e": 1}, "h": {"h": Fraction(1, 2)}}


def test_casimir_abelian_is_zero():
    _, two_h = casimir_h_dual(DgLieData([("a", 0)]), BilinearForm({("a", "a"): 3}))
    assert two_h == 0


def test_casimir_not_scalar_on_sl2_plus_abelian():
    g, form = sl2_data()
    g2 = DgLieData(list(g.generators) + [("z", 0)], dict(g.bracket))
    f2 = BilinearForm({**form.entries, ("z", "z"): 1})
    with pytest.raises(NotScalar):
        casimir_h_dual(g2, f2)


def test_casimir_degenerate():
    with pytest.raises(Degenerate):
        casimir_h_dual(DgLieData([("a", 0), ("b", 0)]), BilinearForm({("a", "a"): 1}))


# -- Sugawara ------------------------------------------------------------------------------------


def test_sugawara_heisenberg():
    ctx = EnvelopeContext(from_catalog("heisenberg"), {"K": 1}, 8)
    omega, c = sugawara(ctx)
    assert omega == M(("a", -1), ("a", -1)) * Fraction(1, 2)
    assert c == 1
    assert verify_virasoro_action(omega, ctx, (-3, 3), cap=4).passed


def test_sugawara_heisenberg_central_charge_read_off():
    ctx = EnvelopeContext(from_catalog("heisenberg"), {"K": 2}, 8)
    omega, c = sugawara(ctx)
    report = verify_virasoro_action(omega, ctx, (-2, 2), cap=3)
    assert report.passed and report.info["central charge"] == "1" and c == 1


def test_sugawara_sl2_vector_and_charge():
    ctx = EnvelopeContext(from_catalog("sl2"), {"K": 1}, 8)
    omega, c = sugawara(ctx, 1)
    assert c == 1
    expected = (
        M(("h", -2)) * Fraction(-1, 6)
        + M(("e", -1), ("f", -1)) * Fraction(1, 3)
        + M(("h", -1), ("h", -1)) * Fraction(1, 12)
    )
    assert omega == expected


@pytest.mark.parametrize("k,c", [(1, 1), (2, Fraction(3, 2)), (Fraction(1, 2), Fraction(3, 5))])
def test_sugawara_sl2_small_window(k, c):
    ctx = EnvelopeContext(from_catalog("sl2"), {"K": k}, 6)
    omega, got = sugawara(ctx)
    assert got == c
    report = verify_virasoro_action(omega, ctx, (-2, 2), cap=2)
    assert report.passed, report.to_text()
    assert report.info["central charge"] == str(c)


def test_sugawara_l0_grades_by_weight():
    ctx = EnvelopeContext(from_catalog("sl2"), {"K": 1}, 6)
    omega, _ = sugawara(ctx)
    for mono in ctx.basis():
        if ctx.monomial_weight(mono) > 3:
            continue
        v = VVector({mono: 1})
        assert vertex_mode(omega, 1, v, ctx) == v * ctx.monomial_weight(mono)


def test_mutated_sugawara_fails():
    ctx = EnvelopeContext(from_catalog("heisenberg"), {"K": 1}, 8)
    omega, _ = sugawara(ctx)
    # coefficient 1/(k + h∨) instead of 1/(2(k + h∨))
    report = verify_virasoro_action(omega * 2, ctx, (-2, 2), cap=3)
    assert not report.passed
    assert not report.check("commutator").passed


def test_critical_level():
    ctx = EnvelopeContext(from_catalog("sl2"), {"K": -2}, 4)
    with pytest.raises(CriticalLevel):
        sugawara(ctx)


def test_sugawara_level_mismatch():
    ctx = EnvelopeContext(from_catalog("sl2"), {"K": 1}, 4)
    with pytest.raises(InputError):
        sugawara(ctx, 2)


def test_sugawara_on_dg_heisenberg_is_closed():
    ctx = EnvelopeContext(from_catalog("dg-heisenberg"), {"K": 1}, 6)
    omega, c = sugawara(ctx)
    assert c == 0
    report = verify_virasoro_action(omega, ctx, (-2, 2), cap=2)
    assert report.passed
    assert report.info["d(omega)"] == "0"


def test_sugawara_degree_on_shifted_virasoro_structure():
    # the Virasoro field itself sits in degree 4N
    for N in (0, 1, 2):
        p = build_virasoro(N)
        ctx = EnvelopeContext(p, {"c": 1}, 4)
        (mono,) = M(("ω", -1)).keys()
        assert ctx.monomial_degree(mono) == 4 * N


def test_virasoro_field_acts_as_its_own_conformal_vector():
    ctx = EnvelopeContext(from_catalog("virasoro"), {"c": Fraction(1, 2)}, 8)
    report = verify_virasoro_action(M(("ω", -1)), ctx, (-2, 2), cap=4)
    assert report.passed
    assert report.info["central charge"] == "1/2"


def test_l0_on_virasoro_character_basis():
    ctx = EnvelopeContext(from_catalog("virasoro"), {"c": 1}, 6)
    for mono in ctx.basis():
        v = VVector({mono: 1})
        assert mode_apply("ω", 1, v, ctx) == v * ctx.monomial_weight(mono)
    assert character_totals(ctx)[:3] == [1, 0, 1]
