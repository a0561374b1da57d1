import random
from fractions import Fraction

import pytest

from algebra.gaussrat import GaussRat
from algebra.sympoly import p
from generation.constraints import is_hamiltonian_dependent, numeric_spec, symbolic_spec
from verification.isochrony import (LINEARIZABLE_TRIVIALLY, NONISOCHRONOUS, UNDETERMINED, Verdict,
                                    check_isochronous)
from verification.theorems import random_spec


def rescale(spec, lam):
    """p[a,b] -> lam^(a-b) p[a,b] on the independent coefficients."""
    values = {}
    for r in spec.degrees:
        for var, value in spec.components[r].items():
            if not is_hamiltonian_dependent(var):
                values[var] = value * lam ** (var.a - var.b)
    return numeric_spec(values, degrees=spec.degrees)


def test_quadratic_witness():
    verdict = check_isochronous(numeric_spec({p(0, 1): GaussRat(2)}), 8)
    assert verdict.kind == NONISOCHRONOUS
    assert verdict.depth == 2
    assert verdict.witness == GaussRat(0, 6)
    assert verdict.table == [(2, GaussRat(0, 6))]


def test_nontrivial_quadratic_always_fails_at_depth_two():
    rng = random.Random(17)
    for _ in range(30):
        spec = random_spec([2], rng, forced=[2])
        verdict = check_isochronous(spec, 4)
        assert verdict.kind == NONISOCHRONOUS and verdict.depth == 2


def test_zero_perturbation():
    verdict = check_isochronous(numeric_spec({}, degrees=[2, 3]), 6)
    assert verdict.kind == LINEARIZABLE_TRIVIALLY
    assert verdict.table == []


def test_cubic_central_coefficient():
    verdict = check_isochronous(numeric_spec({p(1, 1): GaussRat(0, 1)}), 4)
    assert verdict.is_nonisochronous
    assert verdict.depth == 2
    assert verdict.witness == GaussRat(0, 1)


def test_cancelled_depth_two_is_undetermined():
    # p[1,1] = -3/2 i cancels (3/2 i)|p[0,1]|^2 at depth 2
    spec = numeric_spec({p(1, 1): GaussRat(0, Fraction(-3, 2)), p(0, 1): GaussRat(1)})
    verdict = check_isochronous(spec, 2)
    assert verdict.kind == UNDETERMINED
    assert verdict.depth == 2
    assert verdict.table == [(2, GaussRat())]
    assert verdict.describe() == "undetermined up to depth 2"


def test_check_arguments():
    with pytest.raises(ValueError):
        check_isochronous(symbolic_spec([2]), 4)
    with pytest.raises(ValueError):
        check_isochronous(numeric_spec({p(0, 1): GaussRat(1)}), 1)


def test_check_odd_depths():
    rng = random.Random(23)
    for _ in range(10):
        spec = random_spec([2, 3, 4], rng, forced=[3])
        assert check_isochronous(spec, 4, check_odd=True) == check_isochronous(spec, 4)


def test_non_hamiltonian_field_is_still_checked():
    spec = numeric_spec({p(0, 1): GaussRat(2), p(1, 0): GaussRat(1)}, hamiltonian=False)
    verdict = check_isochronous(spec, 2)
    assert verdict.kind in (NONISOCHRONOUS, UNDETERMINED)


def test_verdict_text_forms():
    verdict = check_isochronous(numeric_spec({p(0, 1): GaussRat(2)}), 4)
    assert verdict.describe() == f"nonisochronous at depth 2 (Ca_2 = {GaussRat(0, 6)})"
    assert verdict.to_dict() == {
        "kind": NONISOCHRONOUS,
        "depth": 2,
        "witness": str(GaussRat(0, 6)),
        "table": [{"depth": 2, "value": str(GaussRat(0, 6))}],
    }
    assert Verdict(LINEARIZABLE_TRIVIALLY).to_dict()["witness"] is None


def test_rescaling_invariance():
    # a unit-modulus lam keeps the rescaled field real Hamiltonian
    lam = GaussRat(Fraction(3, 5), Fraction(4, 5))
    rng = random.Random(29)
    for _ in range(10):
        spec = random_spec([2, 3, 4], rng, forced=[2])
        assert check_isochronous(rescale(spec, lam), 4) == check_isochronous(spec, 4)
    cancelled = numeric_spec({p(1, 1): GaussRat(0, Fraction(-3, 2)), p(0, 1): GaussRat(1)})
    assert check_isochronous(rescale(cancelled, lam), 2).kind == UNDETERMINED
