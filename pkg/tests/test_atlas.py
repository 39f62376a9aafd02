import pytest

from jetalg.atlas import (
    AtlasSpec, InverseCheckFailed, JacobianNotInvertible, MissingTransition,
    TransitionPair, cocycle_check, compose_formula, filtration_check,
    identity_transition, jacobian_quotient_check, transition_l,
    transition_via_iso, transport_current, validate_transition,
)
from jetalg.fileio import loads_chart
from jetalg.liealg import CurrentElem


def test_builtin_atlases_validate(p1, p1_pair):
    p1.validate(jet_order=3)
    p1_pair.validate(jet_order=3)


def test_identity_transition_validates(loc_x):
    validate_transition(identity_transition(loc_x), jet_order=3)


def test_non_inverse_formulas_rejected(loc_x):
    # claimed coordinate change x = y^2 with claimed inverse y = x: the
    # formula composite is x^2, not the identity, so validation fails
    line = loads_chart({"name": "line", "params": ["t"], "gens": [],
                        "denominator": "1"})
    t = line.param(0)
    x = loc_x.param(0)
    bad = TransitionPair("a", "b", loc_x, [x], [x],
                         formulas=([t ** 2], [t]))
    with pytest.raises(InverseCheckFailed):
        validate_transition(bad)


def test_formula_value_mismatch_rejected(loc_x):
    # mutually inverse formulas (both t -> 1/t) that do not reproduce the
    # stored overlap values are rejected as well
    punct = loads_chart({"name": "punct", "params": ["t"], "gens": [],
                         "denominator": "t"})
    inv_t = punct.inv_denominator()
    x = loc_x.param(0)
    bad = TransitionPair("a", "b", loc_x, [x], [x],
                         formulas=([inv_t], [inv_t]))
    with pytest.raises(InverseCheckFailed):
        validate_transition(bad)


def test_compose_formula_geometric():
    line = loads_chart({"name": "aline", "params": ["t"], "gens": [],
                        "denominator": "t"})
    t = line.param(0)
    inv_t = line.inv_denominator()
    assert compose_formula(inv_t, [inv_t]) == t
    assert compose_formula((t + 1) * inv_t, [inv_t]) == t + 1
    assert compose_formula(t ** 2 + 1, [t + 1]) == t ** 2 + 2 * t + 2


def test_degenerate_jacobian_rejected():
    plain = loads_chart({"name": "plain", "params": ["x"], "gens": [],
                         "denominator": "1"})
    x = plain.param(0)
    bad = TransitionPair("a", "b", plain, [x ** 2], [x])
    with pytest.raises(JacobianNotInvertible):
        validate_transition(bad)


def test_projective_pair_values(p1_pair):
    """Across x -> 1/x the fibre generator X d/dX picks up a quadratic
    term: Y + x Y^2 (that is, Y + Y^2/y in the target coordinate), and
    X^2 d/dX maps to -x^2 Y^2 = -Y^2/y^2."""
    tp = p1_pair.transition("std", "inf")
    ov = tp.overlap
    x = ov.param(0)
    for r in (2, 3, 4):
        assert transition_l(tp, (1,), 0, r) == CurrentElem(
            ov, r, {((1,), 0): ov.one(), ((2,), 0): x})
        assert transition_l(tp, (2,), 0, r) == CurrentElem(
            ov, r, {((2,), 0): -(x ** 2)})


def test_identity_transition_is_identity_on_the_fibre(loc_x):
    tp = identity_transition(loc_x)
    for r in (2, 3):
        for m in [(1,), (2,), (3,)]:
            if sum(m) > r:
                continue
            assert transition_l(tp, m, 0, r) == CurrentElem(
                loc_x, r, {(m, 0): loc_x.one()})


def test_zero_degree_monomial_rejected(p1_pair):
    tp = p1_pair.transition("std", "inf")
    with pytest.raises(ValueError):
        transition_l(tp, (0,), 0, 3)


def test_both_routes_agree(p1, p1_pair):
    for atlas in (p1_pair, p1):
        for tp in atlas.transitions.values():
            for m in [(1,), (2,), (3,)]:
                assert transition_l(tp, m, 0, 4) == transition_via_iso(tp, m, 0, 4)


def test_via_iso_on_the_pair(p1_pair):
    tp = p1_pair.transition("std", "inf")
    ov = tp.overlap
    x = ov.param(0)
    assert transition_via_iso(tp, (1,), 0, 3) == CurrentElem(
        ov, 3, {((1,), 0): ov.one(), ((2,), 0): x})


def test_opposite_transitions_invert(p1_pair):
    tp = p1_pair.transition("std", "inf")
    back = p1_pair.transition("inf", "std")
    r = 4
    for m in [(1,), (2,), (3,)]:
        unit = CurrentElem(tp.overlap, r, {(m, 0): tp.overlap.one()})
        assert transport_current(back, transition_l(tp, m, 0, r), r) == unit


def test_filtration(p1_pair):
    tp = p1_pair.transition("std", "inf")
    for m in [(1,), (2,), (3,)]:
        assert filtration_check(tp, m, 0, 4)
    # explicit reading of the m=2 value: no Y^0 or Y^1 terms
    ce = transition_l(tp, (2,), 0, 4)
    assert ce.coeff((1,), 0).is_zero()


def test_jacobian_quotient(p1_pair, loc_x):
    tp = p1_pair.transition("std", "inf")
    assert jacobian_quotient_check(tp, (1,), 0, 3)
    assert jacobian_quotient_check(identity_transition(loc_x), (1,), 0, 3)


def test_cocycle_holds_on_triple_overlap(p1):
    for triple in (("std", "inf", "shift"), ("shift", "std", "inf"),
                   ("inf", "shift", "std")):
        for m in [(1,), (2,), (3,)]:
            assert cocycle_check(p1, triple, m, 0, 4)


def test_cocycle_negative_control(p1):
    """Replacing one leg by the identity breaks the composition law."""
    ov = p1.transition("std", "inf").overlap
    x = ov.param(0)
    tampered = AtlasSpec(
        "tampered",
        p1.charts,
        [p1.transition("std", "inf"),
         TransitionPair("inf", "shift", ov, [x], [x]),
         p1.transition("std", "shift")],
    )
    assert not cocycle_check(tampered, ("std", "inf", "shift"), (1,), 0, 3)


def test_degenerate_triple_with_identities(loc_x):
    ident = identity_transition(loc_x)
    atl = AtlasSpec("only", {loc_x.name: loc_x}, [ident])
    triple = (loc_x.name, loc_x.name, loc_x.name)
    assert cocycle_check(atl, triple, (1,), 0, 3)


def test_missing_transition(p1_pair):
    with pytest.raises(MissingTransition):
        p1_pair.transition("inf", "elsewhere")
