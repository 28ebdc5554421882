import json
import subprocess
import sys

import pytest

from dpcolor.cli import main
from dpcolor.constructible import build_m
from dpcolor.cover import Transversal, identity_cover, is_P_transversal
from dpcolor.errors import InvalidCover, ParseError
from dpcolor.formats import config_to_json, cover_from_json, cover_to_json, parse_input
from dpcolor.graph import complete_graph, cycle_graph, to_graph6
from dpcolor.properties import EDGELESS, validate_coloring


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr().out
    return status, json.loads(out), out


@pytest.fixture
def files(tmp_path):
    def write(name, content):
        path = tmp_path / name
        path.write_text(content if isinstance(content, str) else json.dumps(content))
        return str(path)

    return write


def test_graph6_c5(files):
    g = parse_input(files("c5.g6", to_graph6(cycle_graph(5)) + "\n"), "graph")
    assert g.n == 5 and g.num_edges == 5 and g.is_cycle()


def test_edge_list_graph(files):
    g = parse_input(files("p3.txt", "3\n0 1\n1 2\n"), "graph")
    assert g.n == 3 and g.num_edges == 2


def test_duplicate_coordinate_names_edge(files):
    path = files("bad.json", {"graph": [[0, 1]], "fibers": [2, 2], "matchings": {"0-1": [[0, 0], [0, 1]]}})
    with pytest.raises(InvalidCover, match="0-1"):
        parse_input(path, "cover")


def test_missing_f_entry(files):
    obj = config_to_json(build_m(complete_graph(2), 1))
    del obj["f"]["1:0"]
    with pytest.raises(ParseError, match="1:0"):
        parse_input(files("c.json", obj), "config")


def test_malformed_json_has_location(files):
    with pytest.raises(ParseError, match="line 1"):
        parse_input(files("c.json", '{"graph": ['), "cover")


def test_solve_config_m_fixture(capsys, files):
    path = files("m.json", config_to_json(build_m(cycle_graph(4), 2, [0, 1, 0, 1])))
    status, data, _ = run(capsys, "solve-config", path)
    assert status == 1
    assert data["colorable"] is False and data["constructible"] is True
    assert data["certificate"]["blocks"][0]["tag"] == "M"


def test_chi_dp_c4(capsys, files):
    status, data, _ = run(capsys, "chi-dp", "--property", "O", files("c4.g6", to_graph6(cycle_graph(4))))
    assert status == 0 and data["value"] == 3 and data["bad_cover_at_k"] == 2


def test_verify_brooks_d1(capsys, files):
    status, data, _ = run(capsys, "verify", "brooks", "--property", "D1", files("c5.g6", to_graph6(cycle_graph(5))))
    assert status == 0 and data["report"]["exception_class"] == "RRegularCR"


def test_verify_input_flag(capsys, files):
    path = files("c5.g6", to_graph6(cycle_graph(5)))
    status, data, _ = run(capsys, "verify", "brooks", "--input", path)
    assert status == 0 and data["report"]["exception_class"] == "Cycle"


def test_check_cover_exit_codes(capsys, files):
    c3 = files("c3.json", cover_to_json(identity_cover(cycle_graph(3), 2)))
    status, data, _ = run(capsys, "check-cover", c3)
    assert status == 1 and data["colorable"] is False and data["critical"] is True
    c4 = files("c4.json", cover_to_json(identity_cover(cycle_graph(4), 2)))
    status, data, _ = run(capsys, "check-cover", c4)
    assert status == 0 and data["colorable"] is True
    t = Transversal(tuple(data["transversal"]))
    assert is_P_transversal(parse_input(c4, "cover"), EDGELESS, t)


def test_error_exit_codes(capsys, files):
    status, data, _ = run(capsys, "check-cover", files("bad.json", "{"))
    assert status == 2 and data["error"]["code"] == "parse_error"
    big = files("k9.g6", to_graph6(complete_graph(9)))
    status, data, _ = run(capsys, "chi-dp", big)
    assert status == 2 and data["error"]["code"] == "too_large"
    status, data, _ = run(capsys, "gen", "dirac", "--split", "0,3")
    assert status == 2 and data["error"]["code"] == "bad_split"
    status, data, _ = run(capsys, "verify", "gallai", files("c5.g6", to_graph6(cycle_graph(5))))
    assert status == 2 and data["error"]["code"] == "precondition_failed"


def test_unknown_flag_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["chi", "--bogus", "x"])
    assert exc.value.code == 2


def test_chi_dp_witness_round_trip(capsys, files):
    _, data, _ = run(capsys, "chi-dp", files("c5.g6", to_graph6(cycle_graph(5))))
    cover = files("w.json", data["witness"])
    assert cover_from_json(data["witness"]).is_k_cover(data["bad_cover_at_k"])
    status, back, _ = run(capsys, "check-cover", cover)
    assert status == 1 and back["colorable"] is False


def test_chi_list_witness_round_trip(capsys, files):
    _, data, _ = run(capsys, "chi-list", files("k3.g6", to_graph6(complete_graph(3))))
    assert data["value"] == 3
    status, back, _ = run(capsys, "check-cover", files("lists.json", data["witness"]))
    assert status == 1 and back["colorable"] is False


def test_chi_witness_is_colouring(capsys, files):
    _, data, _ = run(capsys, "chi", files("c5.g6", to_graph6(cycle_graph(5))))
    assert data["value"] == 3 and validate_coloring(EDGELESS, cycle_graph(5), data["witness"])


def test_gen_dirac_graph6(capsys):
    status, data, _ = run(capsys, "gen", "dirac", "--k", "3", "--split", "1,2")
    assert status == 0 and data["parts"]["graph"]["n"] == 7
    assert len(data["parts"]["graph"]["edges"]) == 11


def test_gen_m_recognized(capsys, files):
    _, data, _ = run(capsys, "gen", "m", files("c5.g6", to_graph6(cycle_graph(5))), "--s", "2")
    status, back, _ = run(capsys, "recognize", files("m.json", data["config"]))
    assert status == 0 and back["constructible"] is True


def test_no_witness(capsys, files):
    _, data, _ = run(capsys, "chi-dp", "--no-witness", files("c4.g6", to_graph6(cycle_graph(4))))
    assert "witness" not in data and data["value"] == 3


def test_table_format(capsys, files):
    main(["chi", "--format", "table", files("c4.g6", to_graph6(cycle_graph(4)))])
    out = capsys.readouterr().out
    assert "value\t2" in out.splitlines()


def test_byte_identical_output(capsys, files):
    path = files("c5.g6", to_graph6(cycle_graph(5)))
    outs = [run(capsys, "chi-dp", path)[2] for _ in range(2)]
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["schema"] == "dpcolor/1"


def test_console_entry_point(files):
    path = files("c4.g6", to_graph6(cycle_graph(4)))
    proc = subprocess.run(
        [sys.executable, "-m", "dpcolor.cli", "chi-dp", path], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["value"] == 3
