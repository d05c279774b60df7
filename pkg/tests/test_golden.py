import pytest

from siegelscan.errors import VerificationError
from siegelscan.golden import COLUMNS, load_fixtures, verify_golden


def test_fixture_shape():
    fx = load_fixtures()
    assert len(fx) == 167
    assert min(fx) == 3 and max(fx) == 997
    assert fx[997]["c4"].startswith("0.02990739982056")
    assert fx[3]["L"] == "0.60459978807807261686"
    assert all(len(fx[q][c].replace(".", "").lstrip("0")) >= 18 for q in fx for c in COLUMNS)


def test_clean_run_passes():
    rep = verify_golden()
    assert rep.passed
    assert set(rep.worst) == set(COLUMNS)
    assert all(err < 1e-11 for err, _ in rep.worst.values())
    text = rep.as_text()
    assert "PASS" in text and "worst rel err" in text


def perturbed(q, col, digit_index):
    fx = load_fixtures()
    s = fx[q][col]
    i = digit_index
    fx[q][col] = s[:i] + str((int(s[i]) + 1) % 10) + s[i + 1:]
    return fx


def test_perturbed_digit_fails_naming_q():
    fx = perturbed(311, "c2", 8)
    rep = verify_golden(fx)
    assert not rep.passed
    assert [(q, c) for q, c, _, _ in rep.failures] == [(311, "c2")]
    assert "q=311" in rep.as_text()
    with pytest.raises(VerificationError):
        verify_golden(fx, strict=True)


def test_digit_beyond_tolerance_is_ignored():
    # the 16th significant digit is below the 1e-11 tolerance
    assert verify_golden(perturbed(101, "L", 17)).passed
