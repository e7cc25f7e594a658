import numpy as np
import pytest

from loewner import (Constant, DomainError, Lind, Sampled, Scaled, Sqrt,
                     load_sampled_csv, parse_term, write_sampled_csv)


def test_constant_eval():
    assert Constant(0.0).value(0.7) == 0.0
    assert Constant(2.5).value(0.0) == 2.5


def test_sqrt_eval():
    assert Sqrt(4.0).value(0.25) == pytest.approx(2.0, abs=1e-15)


def test_lind_eval():
    # 4 - 4*sqrt(1 - 0.75) = 4 - 4*0.5
    assert Lind(4.0).value(0.75) == pytest.approx(2.0, abs=1e-15)
    assert Lind(4.0).value(0.0) == 0.0
    assert Lind(4.0).value(1.0) == 4.0


def test_lind_domain_error():
    with pytest.raises(DomainError):
        Lind(4.0).value(1.5)
    with pytest.raises(DomainError):
        Constant(1.0).value(-0.3)


def test_offset_shifts_values():
    assert Sqrt(2.0, offset=1.5).value(0.25) == pytest.approx(2.5)


def test_scaled_is_loewner_scaling():
    base = Sqrt(3.0)
    r = 2.0
    sc = Scaled(base, r)
    for t in (0.0, 0.1, 1.0):
        assert sc.value(t) == pytest.approx(r * base.value(t / r**2), rel=1e-15)
    assert Scaled(Lind(4.0), 0.5).domain_end == pytest.approx(0.25)
    assert sc.exact_half_norm == base.exact_half_norm


def test_sampled_interpolates_linearly():
    term = Sampled([0.0, 1.0, 2.0], [0.0, 2.0, 2.0])
    assert term.value(0.5) == pytest.approx(1.0)
    assert term.value(1.5) == pytest.approx(2.0)
    assert np.allclose(term.values([0.0, 0.25, 2.0]), [0.0, 0.5, 2.0])


def test_sampled_validation():
    with pytest.raises(ValueError):
        Sampled([0.1, 0.2], [1.0, 2.0])  # must start at 0
    with pytest.raises(ValueError):
        Sampled([0.0, 0.0], [1.0, 2.0])  # strictly increasing
    with pytest.raises(ValueError):
        Sampled([0.0, 1.0], [1.0, float("nan")])


def test_parse_round_trips():
    for spec in ("constant:0.5", "sqrt:3.0", "lind:4.0", "tangent:1.0"):
        assert parse_term(spec).spec_string() == spec


def test_parse_rejects_malformed():
    for bad in ("bogus:1", "constant", "sqrt:abc"):
        with pytest.raises(ValueError):
            parse_term(bad)


def test_csv_round_trip(tmp_path):
    path = tmp_path / "term.csv"
    times = np.linspace(0.0, 1.0, 7)
    values = np.sin(times)
    write_sampled_csv(path, times, values)
    term = load_sampled_csv(path)
    assert np.array_equal(term.times, times)
    assert np.array_equal(term.table_values, values)
    assert parse_term(term.spec_string()).domain_end == 1.0


def test_csv_rejects_bad_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("time,val\n0,1\n1,2\n")
    with pytest.raises(ValueError):
        load_sampled_csv(path)
