"""Command line interface: payloads, formats and exit codes."""

import json

import pytest

from clusteralg.cli import main

A2 = '{"B": [[0, 1], [-1, 0]]}'
B_RANK4 = '{"B": [[0,-1,0,4],[2,0,3,6],[0,-3,0,0],[-4,-3,0,0]]}'
MARKOV = '{"B": [[0,2,-2],[-2,0,2],[2,-2,0]]}'
A3 = '{"B": [[0,1,0],[-1,0,1],[0,-1,0]]}'


def run_json(capsys, *argv):
    code = main(["--format", "json", *argv])
    out = capsys.readouterr()
    assert code == 0, out.err
    return json.loads(out.out)


def test_mutate(capsys):
    payload = run_json(capsys, "mutate", "--seed", A2, "--path", "1")
    assert payload["history"] == [1]
    assert payload["cluster"] == ["x1^-1 + x1^-1*x2", "x2"]
    assert payload["B"] == [[0, 1], [-1, 0]]
    assert payload["currentB"] == [[0, -1], [1, 0]]


def test_mutate_text(capsys):
    assert main(["mutate", "--seed", A2, "--path", "1,1"]) == 0
    out = capsys.readouterr().out
    assert "x1 = x1" in out
    assert "history: [1, 1]" in out


def test_exchange_polys(capsys):
    payload = run_json(capsys, "exchange-polys", "--seed", B_RANK4)
    texts = [e["text"] for e in payload["polys"]]
    assert texts == ["x4^4 + x2^2", "1 + x1*x3^3*x4^3", "1 + x2^3", "1 + x1^4*x2^6"]


def test_class_group_payload_keys(capsys):
    payload = run_json(capsys, "class-group", "--seed", B_RANK4,
                       "--field", "Q(zeta,12)")
    assert set(payload) == {"t", "rank", "invariantFactors", "perVariable"}
    assert payload["t"] == 8
    assert payload["rank"] == 4
    assert payload["perVariable"] == [
        {"i": 1, "l": 2}, {"i": 2, "l": 1}, {"i": 3, "l": 3}, {"i": 4, "l": 2},
    ]


def test_is_ufd(capsys):
    payload = run_json(capsys, "is-ufd", "--seed", B_RANK4, "--field", "Q")
    assert payload["ufd"] is False
    assert payload["nontrivial"] == [{"i": 3, "l": 2}]


def test_explore(capsys):
    payload = run_json(capsys, "explore", "--seed", A2)
    assert payload["seedsFound"] == 5
    assert len(payload["clusterVariables"]) == 5
    assert payload["finite"] is True


def test_laurent_check(capsys):
    payload = run_json(capsys, "laurent-check", "--seed", MARKOV, "--depth", "3")
    assert payload["allInteger"] is True
    assert payload["seedsVisited"] >= 4


def test_member_certificate(capsys):
    payload = run_json(capsys, "member", "--seed", MARKOV,
                       "--expr", "(x1^2+x2^2+x3^2)/(x1*x2*x3)")
    assert payload["member"] is True
    assert payload["starfishBasis"] == "upper-bound-only"
    assert len(payload["directions"]) == 3


def test_member_with_path_pinned_payload(capsys):
    payload = run_json(capsys, "member", "--seed", A3,
                       "--expr", "(1+x2)/(x1*x3)", "--path", "3,1")
    assert payload == {"laurent_in_seed": False}
    payload = run_json(capsys, "member", "--seed", A3,
                       "--expr", "(1+x2)/(x1*x3)", "--path", "3")
    assert payload == {"laurent_in_seed": True}


def test_pairing(capsys):
    payload = run_json(capsys, "pairing", "--seed", A2,
                       "--expr", "x1^3*(1+x2)", "--direction", "1")
    assert payload["value"] == 4
    payload = run_json(capsys, "pairing", "--seed", A2,
                       "--expr", "x1^3*(1+x2)", "--direction", "1",
                       "--method", "iterative")
    assert payload["value"] == 4


def test_local_factor(capsys):
    payload = run_json(capsys, "local-factor", "--seed", A2,
                       "--expr", "x1^2*(1+x2)")
    assert payload["exponents"] == [3, 0]
    assert payload["cofactor"] == "x1^-1 + x1^-1*x2"


def test_factors(capsys):
    payload = run_json(capsys, "factors", "--seed", B_RANK4,
                       "--field", "Q(zeta,12)", "--explicit")
    assert payload["counts"] == [
        {"i": 1, "l": 2}, {"i": 2, "l": 1}, {"i": 3, "l": 3}, {"i": 4, "l": 2},
    ]
    assert payload["sharing"] == []
    assert len(payload["explicitFactors"]) == 4


def test_domain_error_exit_code_and_stderr(capsys):
    code = main(["class-group", "--seed", MARKOV, "--field", "Q"])
    out = capsys.readouterr()
    assert code == 1
    err = json.loads(out.err)
    assert err["error"] == "starfish-not-established"
    assert "full rank" in err["message"]


def test_assert_starfish_flag(capsys):
    payload = run_json(capsys, "class-group", "--seed", MARKOV,
                       "--field", "Q", "--assert-starfish")
    assert payload["rank"] == payload["t"] - 3


def test_bad_field_is_domain_error(capsys):
    code = main(["class-group", "--seed", A2, "--field", "GF(7)"])
    out = capsys.readouterr()
    assert code == 1
    assert json.loads(out.err)["error"] == "unknown-field"


def test_bad_seed_json(capsys):
    code = main(["mutate", "--seed", '{"B": [[0, 1]]}'])
    assert code == 1
    assert json.loads(capsys.readouterr().err)["error"] == "malformed-input"
    code = main(["mutate", "--seed", "{not json"])
    assert code == 1
    assert json.loads(capsys.readouterr().err)["error"] == "malformed-input"


def test_parse_error(capsys):
    code = main(["member", "--seed", A2, "--expr", "x1 +"])
    out = capsys.readouterr()
    assert code == 1
    assert json.loads(out.err)["error"] == "parse-error"


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        main(["mutate"])  # --seed is required
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 2


def test_seed_from_file(tmp_path, capsys):
    p = tmp_path / "seed.json"
    p.write_text(A2)
    payload = run_json(capsys, "explore", "--seed", str(p))
    assert payload["seedsFound"] == 5


def test_seed_from_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(A2))
    payload = run_json(capsys, "explore", "--seed", "-")
    assert payload["seedsFound"] == 5


def test_seed_with_history_replay(capsys):
    seed = '{"B": [[0, 1], [-1, 0]], "history": [1]}'
    payload = run_json(capsys, "mutate", "--seed", seed)
    assert payload["cluster"] == ["x1^-1 + x1^-1*x2", "x2"]
    assert payload["history"] == [1]


def test_frozen_names_in_output(capsys):
    seed = '{"B": [[0, 1], [-1, 0], [1, 0]], "names": ["q"]}'
    payload = run_json(capsys, "exchange-polys", "--seed", seed)
    assert payload["polys"][0]["text"] == "q + x2"
