import pytest

from nilcontact import catalog
from nilcontact.cohomology import parity_report
from nilcontact.errors import InvalidInput
from nilcontact.exterior import Form, ce_d
from nilcontact.lefschetz import (Outcome, Overall, Witness, admissible_space, hard_lefschetz_report,
                                  lefschetz_image, lefschetz_relation, lefschetz_verdict,
                                  replay_witness)
from nilcontact.linalg import Subspace

from helpers import a


def eta_of(inp):
    return next(iter(inp.contact_forms.values()))


def test_admissible_spaces(ex5d, ex7d):
    L5, L7 = ex5d.algebra, ex7d.algebra
    assert admissible_space(L5, a(5, 5), 0).space == Subspace.full(1)
    assert admissible_space(L5, a(5, 5), 1).basis == [a(5, 1), a(5, 2)]
    assert admissible_space(L7, a(7, 7), 1).basis == [a(7, 1), a(7, 2), a(7, 5), a(7, 6)]


def test_degree_out_of_range(ex5d):
    with pytest.raises(InvalidInput):
        admissible_space(ex5d.algebra, a(5, 5), 3)


def test_ex5d_images_are_exact(ex5d):
    L = ex5d.algebra
    img2 = lefschetz_image(L, a(5, 5), 1, a(5, 2))
    assert img2 == ce_d(L, a(5, 3, 4, 5, coef=-1))
    img1 = lefschetz_image(L, a(5, 5), 1, a(5, 1))
    assert img1 == ce_d(L, a(5, 2, 4, 5))


def test_heisenberg3_relation_is_a_graph(h3):
    rel = lefschetz_relation(h3.algebra, a(3, 3), 1)
    assert rel.relation.dim == 2
    assert rel.relation.project(range(2)).dim == 2
    assert rel.relation.project(range(2, 4)).dim == 2


def test_ex5d_degree_one_verdict(ex5d):
    v = lefschetz_verdict(ex5d.algebra, a(5, 5), 1)
    assert v.outcome is Outcome.SOUND_FAIL
    found = {(w.beta, w.primitive) for w in v.witnesses}
    assert (a(5, 2), a(5, 3, 4, 5, coef=-1)) in found


def test_ex7d_degree_one_verdict(ex7d):
    L = ex7d.algebra
    v = lefschetz_verdict(L, a(7, 7), 1)
    assert v.outcome is Outcome.SOUND_FAIL
    w = v.witness
    assert w.beta == a(7, 1) and w.primitive == a(7, 2, 4, 5, 6, 7, coef=2)
    assert w.image == a(7, 1, 2, 3, 5, 6, 7, coef=-2)


@pytest.mark.parametrize("name", ["heisenberg3", "heisenberg5", "heisenberg7"])
def test_heisenberg_controls_pass(name, entries):
    inp = entries[name]
    rep = hard_lefschetz_report(inp.algebra, eta_of(inp))
    assert rep.overall is Overall.LEFSCHETZ_INVARIANT_PASS
    assert all(v.outcome is Outcome.INVARIANT_PASS for v in rep.verdicts)


@pytest.mark.parametrize("name", ["paper-ex5d", "paper-ex7d"])
def test_example_entries_certified_at_degree_one(name, entries):
    inp = entries[name]
    rep = hard_lefschetz_report(inp.algebra, eta_of(inp))
    assert rep.overall is Overall.NON_SASAKIAN_CERTIFIED and rep.certified_degree == 1
    assert replay_witness(inp.algebra, eta_of(inp), rep.certificate)


@pytest.mark.parametrize("name", catalog.names())
def test_images_closed_and_verdicts_scale_invariant(name, entries):
    inp = entries[name]
    L, eta = inp.algebra, eta_of(inp)
    n = (L.dim - 1) // 2
    for p in range(n + 1):
        rel = lefschetz_relation(L, eta, p)
        for g in rel.generators:
            assert ce_d(L, g.image).is_zero()
        plain = lefschetz_verdict(L, eta, p)
        for c in (-3, "1/2", "1/%d" % 2 ** (n - p)):
            scaled = lefschetz_verdict(L, eta, p, c)
            assert scaled.outcome == plain.outcome
            assert scaled.diagnostics.as_tuple() == plain.diagnostics.as_tuple()
    base = [v.outcome for v in hard_lefschetz_report(L, eta).verdicts]
    assert [v.outcome for v in hard_lefschetz_report(L, eta, scale_images=True).verdicts] == base


@pytest.mark.parametrize("name", catalog.names())
def test_every_witness_replays(name, entries):
    inp = entries[name]
    L, eta = inp.algebra, eta_of(inp)
    for v in hard_lefschetz_report(L, eta).verdicts:
        for w in v.witnesses:
            assert replay_witness(L, eta, w)


@pytest.mark.parametrize("name", catalog.names())
def test_parity_obstruction_excludes_invariant_pass(name, entries):
    inp = entries[name]
    rep = hard_lefschetz_report(inp.algebra, eta_of(inp))
    for p in parity_report(inp.algebra)["obstructed_degrees"]:
        assert rep.verdicts[p].outcome is not Outcome.INVARIANT_PASS


def test_forged_witnesses_rejected(ex5d, h3):
    L = ex5d.algebra
    # wrong sign on the primitive
    bad = Witness("kernel", 1, a(5, 2), lefschetz_image(L, a(5, 5), 1, a(5, 2)), a(5, 3, 4, 5))
    assert not replay_witness(L, a(5, 5), bad)
    # beta not closed
    bad = Witness("kernel", 1, a(5, 3), Form.zero(5, 4), Form.zero(5, 3))
    assert not replay_witness(L, a(5, 5), bad)
    # Heisenberg image is not exact, so no kernel witness exists for alpha1
    img = lefschetz_image(h3.algebra, a(3, 3), 1, a(3, 1))
    assert not replay_witness(h3.algebra, a(3, 3), Witness("kernel", 1, a(3, 1), img, a(3, 2)))
