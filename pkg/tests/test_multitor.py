import pytest

from koszulkit import (
    Conclusion,
    FreeVector,
    PolyRing,
    SubquotientModule,
    check_cor_regular,
    check_prop_affine,
    check_pullback_square,
    check_tor_independence,
    is_regular_sequence,
    module_length,
    multitor_hypersurfaces,
    scaled_cohomology_model,
    serre_multiplicity,
    submodule_equal,
    tor_pair,
    verify_main_theorem_affine,
)
from koszulkit.errors import NotZeroDimensional, ZeroDivisorGenerator, ZeroScalar
from koszulkit.modmath import MapStatus, map_is_bijective, subquotient_equal
from koszulkit.multitor import (
    _koszul_pieces,
    _pullback_square,
    VerifierReport,
    expected_kernel_rank,
    kernel_generic_rank,
    multitor_by_tensoring,
    tor_report,
)

R2 = PolyRing(("x", "y"))
R3 = PolyRing(("x", "y", "z"))
R4 = PolyRing(("x", "y", "z", "w"))


def P(ring, *texts):
    return [ring(t) for t in texts]


def _v(ring, *texts):
    return FreeVector(ring, P(ring, *texts))


def test_regular_sequence_detection():
    assert is_regular_sequence(P(R3, "y", "z")) == (True, None)
    assert is_regular_sequence(P(R4, "y*z", "y*w")) == (False, 2)
    assert is_regular_sequence(P(R2, "x", "1 - x")) == (True, None)


def test_multitor_hypersurfaces():
    assert multitor_hypersurfaces(P(R3, "y", "z"), 1).is_zero()
    T1 = multitor_hypersurfaces(P(R3, "x*y", "x*z"), 1)
    assert T1.presentation.rows == 1
    assert submodule_equal(SubquotientModule(R3, 1, tuple(T1.presentation.columns())), SubquotientModule(R3, 1, P(R3, "x")))
    T = multitor_hypersurfaces(P(R4, "x*y*z", "x*y*w"), 1)
    assert subquotient_equal(T, SubquotientModule(R4, 2, (_v(R4, "w", "-z"),), (_v(R4, "x*y*w", "-x*y*z"),)))
    assert multitor_hypersurfaces(P(R3, "x"), 3).is_zero()
    with pytest.raises(ZeroDivisorGenerator):
        multitor_hypersurfaces([R3("x"), R3.zero], 0)


def test_two_multitor_paths_agree():
    f = P(R4, "x*y", "x*z", "y*w")
    for q in range(4):
        a, b = multitor_hypersurfaces(f, q), multitor_by_tensoring(f, q)
        assert module_length(a, local=False) == module_length(b, local=False)
        assert a.generic_rank() == b.generic_rank()


def test_tor_pair_examples():
    assert module_length(tor_pair(P(R2, "x"), P(R2, "y"), 0)) == 1
    assert tor_pair(P(R2, "x"), P(R2, "y"), 1).is_zero()
    T = tor_pair(P(R2, "x"), P(R2, "x"), 1)
    assert subquotient_equal(T, SubquotientModule.cyclic(R2, P(R2, "x")))


def test_two_planes():
    I = P(R4, "x*z", "x*w", "y*z", "y*w")
    J = P(R4, "x - z", "y - w")
    rep = tor_report(I, J)
    assert [rep.length(q) for q in range(4)] == [3, 1, 0, 0]
    assert serre_multiplicity(I, J) == 2
    assert serre_multiplicity(J, I) == 2


def test_serre_small_cases():
    assert serre_multiplicity(P(R2, "x"), P(R2, "y")) == 1
    assert serre_multiplicity(P(R2, "y - x^2"), P(R2, "y")) == 2
    with pytest.raises(NotZeroDimensional):
        serre_multiplicity(P(R3, "x"), P(R3, "y"))


def test_scaled_model_examples():
    x = R3("x")
    M = scaled_cohomology_model(P(R3, "y", "z"), x, 1)
    assert subquotient_equal(M, SubquotientModule(R3, 2, (_v(R3, "z", "-y"),), (_v(R3, "x*z", "-x*y"),)))
    M0 = scaled_cohomology_model(P(R3, "y", "z"), x, 0)
    assert subquotient_equal(M0, SubquotientModule.cyclic(R3, P(R3, "x*y", "x*z")))
    M = scaled_cohomology_model(P(R4, "y*z", "y*w"), R4("x"), 1)
    assert subquotient_equal(M, SubquotientModule(R4, 2, (_v(R4, "w", "-z"),), (_v(R4, "x*y*w", "-x*y*z"),)))
    with pytest.raises(ZeroScalar):
        scaled_cohomology_model(P(R3, "y"), R3.zero, 0)


def test_prop_affine_examples():
    assert check_prop_affine(P(R3, "y", "z"), R3("x"), 1).verified
    assert check_prop_affine(P(R4, "y*z", "y*w"), R4("x"), 1).verified
    assert check_prop_affine(P(R3, "y"), R3.one, 0).verified


def test_cor_regular_examples():
    assert check_cor_regular(P(R3, "y", "z"), R3("x"), 1).verified
    assert check_cor_regular(P(R3, "y"), R3("x"), 1).verified
    rep = check_cor_regular(P(R4, "y*z", "y*w"), R4("x"), 1)
    assert rep.conclusion is Conclusion.PRECONDITION_FAILED


def test_pullback_square_examples():
    rep = check_pullback_square(P(R4, "y*z", "y*w"), R4("x"), 1)
    assert rep.verified, rep.to_text()
    rep = check_pullback_square(P(R4, "y*z", "y*w"), R4("y"), 1)
    assert rep.conclusion is Conclusion.PRECONDITION_FAILED
    (name, detail), = rep.witnesses()
    assert "w, -z" in detail
    rep = check_pullback_square(P(R3, "y", "z"), R3("x"), 1)
    assert rep.verified
    assert any("bottom row vanishes" in n for n in rep.notes)


def test_tor_independence_examples():
    assert check_tor_independence(P(R3, "y"), R3("x")).verified
    rep = check_tor_independence(P(R3, "x*y"), R3("x"))
    assert rep.conclusion is Conclusion.REFUTED
    assert "y lies in" in rep.witnesses()[0][1]
    # each generator of the diagonal plane is a nonzerodivisor mod I
    I = P(R4, "x*z", "x*w", "y*z", "y*w")
    assert check_tor_independence(I, R4("x - z")).verified
    assert check_tor_independence(I, R4("y - w")).verified


def test_main_theorem_examples():
    for f, ring in ((P(R3, "y", "z"), R3), (P(R4, "y*z", "y*w"), R4), (P(R3, "y"), R3)):
        rep = verify_main_theorem_affine(f, ring("x"), len(f))
        assert rep.verified, rep.to_text()
        assert any("no twist factor" in n for n in rep.notes)


def test_main_theorem_precondition():
    rep = verify_main_theorem_affine(P(R4, "y*z", "y*w"), R4("y"), 1)
    assert rep.conclusion is Conclusion.PRECONDITION_FAILED


def test_kernel_rank():
    f = P(R4, "x", "y", "z", "w")
    for q in range(1, 5):
        assert kernel_generic_rank(f, q) == expected_kernel_rank(4, q)


def test_report_serialisation():
    rep = VerifierReport("demo", "inst")
    rep.add("a", True)
    rep.add("b", False, "witness 7")
    pairs = dict(rep.to_pairs())
    assert pairs["verdict"] == "Refuted"
    assert pairs["check.1.detail"] == "witness 7"
    assert "[FAIL] b: witness 7" in rep.to_text()


def test_square_detects_broken_precondition():
    # with x = y the canonical map to the pullback is not injective, so the check has teeth
    _, ker, im = _koszul_pieces(P(R4, "y*z", "y*w"), 1, R4)
    cert = map_is_bijective(_pullback_square(ker, im, R4("y")).canonical)
    assert cert.status is MapStatus.NOT_INJECTIVE
