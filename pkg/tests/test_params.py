import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dunklext.errors import AdmissibilityError, DomainError
from dunklext.params import (
    SECTORS,
    ExtensionSpec,
    Parameters,
    QuantumNumbers,
    SectorLabel,
    admissible_n2,
    enumerate_states,
)

mus = st.fractions(min_value=Fraction(-9, 20), max_value=3, max_denominator=20)


def brute_force(p, cap):
    out = []
    for sec in SECTORS:
        for n2 in range(0, 40):
            for k in range(0, 20):
                if admissible_n2(sec, n2) and 2 * k + n2 + p.total + 1 <= cap:
                    out.append((sec, n2, k))
    return sorted(out, key=lambda t: (2 * t[2] + t[1], t[0].code, t[1]))


@pytest.mark.parametrize("mu1, mu2", [(-0.5, 0.0), (0.0, -0.7), (math.nan, 0.0), (0.0, math.inf)])
def test_invalid_parameters(mu1, mu2):
    with pytest.raises(DomainError):
        Parameters(mu1, mu2)


def test_error_names_parameter():
    with pytest.raises(DomainError, match="mu2"):
        Parameters(0.1, -0.6)


def test_exactness():
    assert Parameters(Fraction(3, 10), 1).exact
    assert not Parameters(0.3, 0.7).exact
    assert Parameters(Fraction(3, 10), Fraction(7, 10)).total == 1


def test_sector_roundtrip():
    for sec in SECTORS:
        assert SectorLabel.from_eigenvalues(sec.s1, sec.s2) == sec
        assert SectorLabel.parse(str(sec).strip("()")) == sec
    with pytest.raises(DomainError):
        SectorLabel(2, 0)


def test_quantum_numbers_reject_wrong_parity():
    with pytest.raises(DomainError):
        QuantumNumbers(SectorLabel(0, 0), 1, 0)
    with pytest.raises(DomainError):
        QuantumNumbers(SectorLabel(1, 1), 0, 0)


def test_extension_spec_parse():
    assert ExtensionSpec.parse("ii:2") == ExtensionSpec("II", 2)
    for bad in ("IV:1", "I:0", "III:3", "I", "I:x"):
        with pytest.raises(AdmissibilityError):
            ExtensionSpec.parse(bad)


@given(mus, mus, st.fractions(min_value=0, max_value=9, max_denominator=4))
def test_enumeration_matches_brute_force(mu1, mu2, cap):
    p = Parameters(mu1, mu2)
    got = [(q.sector, q.n2, q.k) for q in enumerate_states(p, cap)]
    assert got == brute_force(p, cap)


@given(mus, mus, st.integers(0, 8))
def test_level_degeneracy(mu1, mu2, level):
    p = Parameters(mu1, mu2)
    states = enumerate_states(p, level + p.total + 1)
    assert sum(1 for q in states if q.level == level) == level + 1
