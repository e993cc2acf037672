from fractions import Fraction

from leftstable.report import FAIL, PASS, VACUOUS, Report, format_value, parse_report


def test_format_value():
    assert format_value(True) == "true"
    assert format_value(Fraction(7, 30)) == "7/30"
    assert format_value((1, 2)) == "(1,2)"
    assert format_value(None) == "none"


def test_round_trip():
    rep = Report(FAIL, {"B": Fraction(1, 3), "OK": False})
    fields, result = parse_report(rep.to_text())
    assert fields == {"B": "1/3", "OK": "false"} and result == FAIL
    assert not rep.passed
    assert Report(VACUOUS, {}).passed and Report(PASS, {}).passed
