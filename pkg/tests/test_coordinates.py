import random
from fractions import Fraction

import pytest

from nilcontact.algebra import abelian
from nilcontact.coordinates import (GroupLaw, Poly, PolyForm, match_structure, one_form,
                                    parse_group_law, parse_one_form, poly_d, poly_wedge, pullback,
                                    verify_group_law, verify_left_invariance)
from nilcontact.errors import InvalidInput


def test_d_of_simple_forms():
    assert poly_d(parse_one_form("x1*dx2", 3)) == poly_wedge(parse_one_form("dx1", 3),
                                                             parse_one_form("dx2", 3))
    d = poly_d(parse_one_form("dx3 - x1*dx2", 3))
    assert d.to_form().terms == {(0, 1): -1}


def test_d_of_ex5d_fifth_form(ex5d):
    d = poly_d(ex5d.coframe[4])
    dx = [parse_one_form(f"dx{i}", 5) for i in range(1, 6)]
    x1 = Poly.var(5, 0)
    expected = (poly_wedge(dx[0], dx[3])
                - poly_wedge(dx[0], dx[2]).scale(x1)
                + poly_wedge(dx[0], dx[1]).scale(x1 * x1 * Poly.const(5, Fraction(1, 2)))
                + poly_wedge(dx[1], dx[2]))
    assert d == expected


@pytest.mark.parametrize("name", ["paper-ex5d", "paper-ex7d"])
def test_example_coordinate_models(name, entries):
    inp = entries[name]
    assert verify_group_law(inp.group_law).ok
    assert verify_left_invariance(inp.group_law, inp.coframe).ok
    assert match_structure(inp.group_law, inp.coframe, inp.algebra).ok


def test_additive_law():
    mu = GroupLaw.additive(5)
    assert verify_group_law(mu).ok
    frame = [parse_one_form(f"dx{i}", 5) for i in range(1, 6)]
    assert verify_left_invariance(mu, frame).ok
    assert match_structure(mu, frame, abelian(5)).ok


def test_deleting_a_term_breaks_associativity(ex5d):
    comps = [c.replace(" - x1*y4", "") for c in
             ["x1 + y1", "x2 + y2", "x3 + y3 + x1*y2", "x4 + y4 + x1*y3 + x1^2/2*y2",
              "x5 + y5 - x1*y4 - (x1^2/2 + x2)*y3 - x1/2*y2^2 - (x1^3/6 + x1*x2)*y2"]]
    assert parse_group_law(comps) != ex5d.group_law
    rep = verify_group_law(parse_group_law(comps))
    assert not rep.ok
    assert any("assoc" in label for label, _ in rep.failures)


def test_invariance_of_single_forms(ex5d):
    mu = ex5d.group_law
    assert verify_left_invariance(mu, [parse_one_form("dx1", 5)]).ok
    assert not verify_left_invariance(mu, [parse_one_form("dx3", 5)]).ok


def test_pullback_is_functorial():
    # pulling back along the identity changes nothing
    a = parse_one_form("x2*dx1 + x1^2*dx3", 3)
    ident = [Poly.var(3, i) for i in range(3)]
    assert pullback(a, ident, 0) == a


def test_parse_rejects_bad_input():
    with pytest.raises(InvalidInput):
        parse_group_law(["x1 + 0.5*y1"])
    with pytest.raises(InvalidInput):
        parse_one_form("dx1*dx2", 2)
    with pytest.raises(InvalidInput):
        parse_one_form("z*dx1", 2)


def random_poly(rng, nvars):
    p = Poly(nvars)
    for _ in range(rng.randint(1, 4)):
        mono = Poly.const(nvars, Fraction(rng.randint(-3, 3), rng.randint(1, 2)))
        for _ in range(rng.randint(0, 3)):
            mono = mono * Poly.var(nvars, rng.randrange(nvars))
        p = p + mono
    return p


def test_d_squared_vanishes_on_random_forms():
    rng = random.Random(7)
    for _ in range(100):
        m = rng.randint(2, 5)
        f = one_form([random_poly(rng, m) for _ in range(m)])
        assert poly_d(poly_d(f)).is_zero()
        g = one_form([random_poly(rng, m) for _ in range(m)])
        # Leibniz for 1-forms: d(f^g) = df^g - f^dg
        assert poly_d(poly_wedge(f, g)) == poly_wedge(poly_d(f), g) - poly_wedge(f, poly_d(g))
