import pytest

from surfkit.errors import ScenarioError
from surfkit.lattice import DivisorClass
from surfkit.scenario import (
    load_scenario,
    parse_scenario,
    resolve_scenario,
    shipped_scenario,
    shipped_scenario_names,
)

GOOD = """
# leading comment
[lattice]
n = 4

[branch D1]
d = 3
m = 1, 1, 1, 3   # trailing comment

[family]
count conic = 2
count line = 1

[conic]
form = a1^2*y1^2 + y2^2
param a1 zeros = p, q
"""


def test_parse_good():
    scn = parse_scenario(GOOD)
    assert scn.section("lattice").require("n") == 4
    assert scn.section("branch", "D1").divisor_class() == DivisorClass(3, (1, 1, 1, 3))
    assert scn.section("family").named("count") == [("conic", 2), ("line", 1)]
    assert scn.section("conic").named("param") == [("a1", frozenset({"p", "q"}))]
    assert "branch D1" in scn and bool(scn)


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("[lattice]\nn = 4\n[lattice]\n", 3, "duplicate section"),
        ("[lattice]\nn = 4\nn = 5\n", 3, "duplicate key"),
        ("[lattice]\nsize = 4\n", 2, "unknown key"),
        ("[widget]\n", 1, "unknown section"),
        ("n = 4\n", 1, "outside any section"),
        ("[lattice]\n\nn = four\n", 3, "expected an integer"),
        ("[branch]\n", 1, "needs a name"),
        ("[lattice x]\n", 1, "takes no name"),
        ("[lattice]\nn 4\n", 2, "key = value"),
        ("[conic]\nparam a1 = p\n", 2, "param <name> zeros"),
        ("[conic]\nparam a1 zeros = none, p\n", 2, "cannot be combined"),
        ("[lattice\n", 1, "malformed section header"),
        ("[lattice]\nn =\n", 2, "empty value"),
        ("[logform V]\nresidue_at = 0:0\n", 2, "three coordinates"),
    ],
)
def test_parse_errors_carry_line(text, line, fragment):
    with pytest.raises(ScenarioError) as info:
        parse_scenario(text)
    assert info.value.line == line
    assert fragment in str(info.value)
    assert str(info.value).startswith(f"line {line}:")


def test_lenient_mode_skips_unknown_keys():
    scn = parse_scenario("[lattice]\nsize = 4\nn = 4\n", strict=False)
    assert scn.section("lattice").require("n") == 4


def test_require_missing():
    scn = parse_scenario("[branch D]\nd = 1\n")
    assert scn.section("branch", "D").divisor_class() == DivisorClass(1, ())
    with pytest.raises(ScenarioError):
        scn.section("branch", "D").require("m")


def test_load_from_disk(tmp_path):
    p = tmp_path / "s.scn"
    p.write_text(GOOD)
    assert load_scenario(p).source == str(p)
    assert resolve_scenario(str(p)).section("lattice").require("n") == 4
    with pytest.raises(ScenarioError, match="cannot read"):
        load_scenario(tmp_path / "missing.scn")


def test_shipped():
    assert shipped_scenario_names() == ["case_i.scn", "case_ii.scn", "construction.scn"]
    for name in shipped_scenario_names():
        scn = resolve_scenario(f"shipped:{name[:-4]}")
        assert scn.of_kind("expect")
    assert shipped_scenario("case_i").section("fiber").require("branch") == "D2"
    with pytest.raises(ScenarioError):
        shipped_scenario("nope")
