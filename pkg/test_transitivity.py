import numpy as np
import pytest

from quadratic_forms import Place
from quaternion import QuaternionAlgebra, SplitContext, split
from transitivity import (
    NotStronglyTransitive,
    PreconditionFailed,
    StronglyTransitive,
    VerifiedToRadius,
    admissibility,
    evaluate_word,
    iwahori_generators,
    nonstandard_apartment,
    reflection_witness,
    selfcheck,
    sphere_orbits,
    strong_transitivity_decide,
    theorem1_dichotomy,
    weyl_transitivity_check,
)
from tree import ball_enumerate, base_chamber, base_vertex, chambers_in


@pytest.fixture(scope="module")
def report():
    return weyl_transitivity_check(-2, -5, 3, 4, 2)


def test_generators_fix_the_base_chamber():
    ctx = SplitContext.build(QuaternionAlgebra(-2, -5), 3, 20)
    gens = iwahori_generators(ctx)
    assert [g.label for g in gens] == ["U(1)", "L(3)", "D(2)"]
    for g in gens:
        assert base_chamber(3).image(g.matrix) == base_chamber(3)
        (a, b), (c, d) = g.rows
        assert a * d - b * c == 1


def test_generator_depth():
    ctx = SplitContext.build(QuaternionAlgebra(-2, -5), 3, 20)
    gens = iwahori_generators(ctx, depth=2)
    assert len(gens) == 9 + 3 + 1
    assert all(base_chamber(3).image(g.matrix) == base_chamber(3) for g in gens)
    with pytest.raises(ValueError):
        iwahori_generators(ctx, depth=0)


def test_sphere_orbits():
    perms = [np.array([1, 0, 2, 3])]
    orbits = sphere_orbits([0, 1, 2, 3], perms)
    assert orbits == [{0: (), 1: (0,)}, {2: ()}, {3: ()}]
    with pytest.raises(ValueError):
        sphere_orbits([0, 1], [np.array([2, 1, 0])])


def test_weyl_spheres_are_single_orbits(report):
    assert isinstance(report.verdict, VerifiedToRadius)
    assert [s.size for s in report.spheres] == [1, 3, 3, 9, 9]
    assert all(s.transitive for s in report.spheres)
    frame = report.to_frame()
    assert list(frame["size"]) == [1, 3, 3, 9, 9]
    assert report.to_dict()["verdict"]["kind"] == "VerifiedToRadius"


def test_rational_generators_have_norm_one(report):
    assert set(report.rational_generators) == {g.label for g in report.generators}
    assert all(q.norm() == 1 for q in report.rational_generators.values())


def test_witness_words_map_chambers(report):
    algebra = QuaternionAlgebra(-2, -5)
    ctx = SplitContext.build(algebra, 3, 20)
    chambers = {str(c): c for c in chambers_in(ball_enumerate(base_vertex(3), 4))}
    for sphere in report.spheres[1:]:
        start = next(chambers[k] for k, word in sphere.witnesses.items() if not word)
        for key, word in sphere.witnesses.items():
            q = evaluate_word(word, report.rational_generators, algebra)
            assert q.norm() == 1
            assert start.image(split(q, ctx)) == chambers[key]


def test_weyl_check_needs_room_for_the_spheres():
    with pytest.raises(ValueError):
        weyl_transitivity_check(-2, -5, 3, 3, 2)
    with pytest.raises(ValueError):
        weyl_transitivity_check(-2, -5, 3, 4, -1)


def test_weyl_spheres_to_length_three():
    report = weyl_transitivity_check(-2, -5, 3, 6, 3)
    assert isinstance(report.verdict, VerifiedToRadius)
    assert [s.size for s in report.spheres] == [1, 3, 3, 9, 9, 27, 27]
    assert all(s.orbits_padic == s.orbits_rational == 1 for s in report.spheres)
    assert all(q.norm() == 1 for q in report.rational_generators.values())


def test_report_names_the_generator_set(report):
    assert report.to_dict()["generator_set"].startswith("topological")


def test_weyl_spheres_at_p5():
    report = weyl_transitivity_check(-1, -1, 5, 5, 2)
    assert isinstance(report.verdict, VerifiedToRadius)
    assert [s.size for s in report.spheres] == [1, 5, 5, 25, 25]


def test_strong_transitivity_verdicts():
    verdict = strong_transitivity_decide(-2, -5)
    assert isinstance(verdict, NotStronglyTransitive)
    assert verdict.certificate == [Place(5)]
    verdict = strong_transitivity_decide(-1, -1)
    assert isinstance(verdict, StronglyTransitive)
    assert verdict.witness == QuaternionAlgebra(-1, -1).e3()
    assert verdict.witness * verdict.witness == -QuaternionAlgebra(-1, -1).one()


def test_strong_verdict_depends_on_square_classes_only():
    assert strong_transitivity_decide(-8, -5).kind == "NotStronglyTransitive"
    assert strong_transitivity_decide(-2, -45).kind == "NotStronglyTransitive"
    assert strong_transitivity_decide(-4, -4).kind == "StronglyTransitive"


@pytest.mark.parametrize("alpha", [-2, -3, -6, -7])
def test_beta_minus_one_is_strongly_transitive(alpha):
    assert strong_transitivity_decide(alpha, -1).kind == "StronglyTransitive"


@pytest.mark.parametrize("p", [3, 7])
def test_reflection_witness(p):
    record = reflection_witness(-1, -1, p, 6)
    assert record.split_e3_is_standard
    assert record.reflects_standard
    assert record.fixed_vertex == "(0, 0)"
    assert record.square_acts_trivially
    assert abs(record.translation_shift) == 2
    assert record.stabilizer_transitive
    assert record.to_dict()["stabilizer_transitive"]


def test_reflection_witness_needs_beta_minus_one():
    with pytest.raises(PreconditionFailed) as e:
        reflection_witness(-2, -5, 3, 2)
    assert e.value.reason == "NotMinusOneBeta"


def test_nonstandard_apartment():
    record = nonstandard_apartment("0,-1;1,7/3", "2,3;-5/3,-2", 3, 6)
    assert record.passed
    assert record.nonstandard
    assert record.eigenvalue_valuation == -1
    assert record.sqrt_disc_leading_digit == 1
    assert record.discriminant == "13/9"
    assert not record.equals_standard
    assert record.to_dict()["passed"]


@pytest.mark.parametrize("A,B,reason", [
    ("2,0;0,1/2", "0,1;-1,0", "ReducibleCharPoly"),
    ("2,0;0,1", "0,1;-1,0", "DeterminantNotOne"),
    ("0,-1;1,7/3", "1,0;0,1", "ConjugationIdentityFails"),
])
def test_nonstandard_apartment_preconditions(A, B, reason):
    with pytest.raises(PreconditionFailed) as e:
        nonstandard_apartment(A, B, 3, 2)
    assert e.value.reason == reason


def test_admissibility():
    assert admissibility(-2, -5, 3) is None
    assert admissibility(-2, -5, 5) == "v_5(beta) != 0"
    assert admissibility(-2, -5, 2) is not None


def test_dichotomy_table():
    frame = theorem1_dichotomy(-2, -5, [3, 5, 7], radius=4, maxlen=2)
    assert list(frame["prime"]) == [3, 5, 7]
    rows = frame.set_index("prime")
    assert rows.loc[3, "weyl"] == "VerifiedToRadius"
    assert rows.loc[7, "weyl"] == "VerifiedToRadius"
    assert rows.loc[3, "sphere_sizes"] == "3,3,9,9"
    assert rows.loc[7, "sphere_sizes"] == "7,7,49,49"
    assert not rows.loc[5, "admissible"]
    assert rows.loc[5, "weyl"] == "skipped"
    assert set(frame["strong"]) == {"NotStronglyTransitive"}
    assert set(frame["certificate"]) == {"5"}


def test_selfcheck():
    result = selfcheck(seed=1, samples=5)
    assert result["passed"]
    assert result["density_certified"] == 5
