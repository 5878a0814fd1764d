import io
import json

import numpy as np
import pytest

from fairgame import LoadError, load_corpus, load_economy, save_economy
from fairgame.cli import main, run
from fairgame.io import corpus_names, dumps, loads, to_dict

MINIMAL = {
    "agents": ["A", "B"],
    "actions": [["a1", "a2"], ["b1", "b2"]],
    "reference": ["a1", "b1"],
    "surplus": [
        {"profile": {"A": "a1", "B": "b1"}, "value": 0},
        {"profile": {"A": "a1", "B": "b2"}, "value": 1},
        {"profile": {"A": "a2", "B": "b1"}, "value": 2},
        {"profile": {"A": "a2", "B": "b2"}, "value": 4},
    ],
}


def _doc(**changes):
    d = json.loads(json.dumps(MINIMAL))
    d.update(changes)
    return d


@pytest.mark.parametrize("name", corpus_names())
def test_corpus_roundtrip(name, tmp_path):
    d = load_corpus(name)
    path = tmp_path / f"{name}.econ"
    save_economy(d, path)
    back = load_economy(path)
    assert back.economy.actions == d.economy.actions
    assert back.economy.reference == d.economy.reference
    np.testing.assert_array_equal(back.economy.surplus, d.economy.surplus)
    assert str(back.scheme) == str(d.scheme)
    assert back.costs == d.costs
    assert dumps(back) == dumps(d)


def test_corpus_covers_examples():
    assert {"table1", "table2", "table3", "table4", "table5", "pd", "teamwork", "tax"} <= set(corpus_names())


def test_minimal_document():
    d = loads(json.dumps(MINIMAL))
    assert d.economy.f((1, 1)) == 4.0
    assert str(d.scheme) == "shapley"
    assert d.costs is None


def test_missing_entry_names_profile():
    doc = _doc(surplus=MINIMAL["surplus"][:3])
    with pytest.raises(LoadError, match=r"A=a2, B=b2"):
        loads(json.dumps(doc))


@pytest.mark.parametrize(
    "changes, match",
    [
        (dict(reference=["a9", "b1"]), "reference action"),
        (dict(reference=["a1"]), "one action per agent"),
        (dict(costs={"A": {"a1": 2}}), "nonzero cost at its reference"),
        (dict(costs={"C": {}}), "unknown agents"),
        (dict(costs={"A": {"a2": -1}}), "negative"),
        (dict(scheme="table"), "payoff table"),
        (dict(scheme="banzhaf"), "unknown scheme"),
        (dict(actions=[["a1", "a2"]]), "one action list per agent"),
    ],
)
def test_validation_errors(changes, match):
    with pytest.raises(LoadError, match=match):
        loads(json.dumps(_doc(**changes)))


def test_duplicate_and_unknown_entries():
    dup = _doc(surplus=MINIMAL["surplus"] + [MINIMAL["surplus"][0]])
    with pytest.raises(LoadError, match="duplicate"):
        loads(json.dumps(dup))
    bad = _doc(surplus=[{"profile": {"A": "zz", "B": "b1"}, "value": 0}])
    with pytest.raises(LoadError, match="unknown action"):
        loads(json.dumps(bad))


def test_parse_error_reports_line():
    with pytest.raises(LoadError, match="line 2"):
        loads('{\n  "agents": [,]\n}')


def test_costs_loaded():
    d = loads(json.dumps(_doc(costs={"B": {"b2": 0.5}})))
    assert d.costs == ((0.0, 0.0), (0.0, 0.5))
    assert to_dict(d)["costs"] == {"A": {}, "B": {"b2": 0.5}}


def test_load_missing_file(tmp_path):
    with pytest.raises(LoadError):
        load_economy(tmp_path / "nope.econ")


# command line


def test_solve_fair():
    out = run(["solve", "table1"])
    assert "(a2,b2)" in out and "(a2,b3)" in out and "0.5 3.5" in out


def test_solve_unfair_reports_none():
    assert "no pure equilibrium" in run(["solve", "table2"])
    assert main(["solve", "table2"], stream=io.StringIO()) == 0


def test_solve_tax_one_decimal():
    assert "41758.5 38686.5 5746.1" in run(["solve", "tax"])


def test_network_command():
    out = run(["network", "--n", "3", "--lambda", "2.0"])
    assert "{1,3}" in out


def test_alpha_sweep_csv():
    lines = run(["alpha-sweep", "table4", "--grid", "0.9:0.92:0.01"]).splitlines()
    assert lines[0] == "alpha,equilibria,efficient,min_payoff"
    assert lines[2].startswith("0.91,") and lines[2].split(",")[-2] == "yes"
    assert lines[3].startswith("0.92,") and lines[3].split(",")[-2] == "no"


def test_audit_and_potential():
    assert "marginality           violated" in run(["audit", "table2"])
    assert "(a2,b2)  4.0      5.5" in run(["potential", "table1"])


def test_scheme_override():
    out = run(["solve", "table1", "--scheme", "egalitarian:0.5", "--out", "csv"])
    assert out.splitlines()[0] == "equilibrium,payoffs,pareto,potential"


def test_deterministic_output():
    assert run(["solve", "teamwork"]) == run(["solve", "teamwork"])


@pytest.mark.parametrize(
    "argv, code",
    [
        (["solve", "does-not-exist"], 2),
        (["solve", "table1", "--scheme", "bogus"], 2),
        (["solve", "table4", "--max-terms", "3"], 3),
        (["potential", "table2"], 2),
        (["network", "--n", "12"], 2),
    ],
)
def test_exit_codes(argv, code, capsys):
    assert main(argv) == code


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as info:
        main(["alpha-sweep", "table4", "--grid", "1:0"])
    assert info.value.code == 2


def test_file_argument(tmp_path):
    path = tmp_path / "mini.econ"
    path.write_text(json.dumps(MINIMAL))
    assert "(a2,b2)" in run(["solve", str(path)])


def test_worked_example_suite_passes(capsys):
    assert main(["paper-suite"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
