import json
import subprocess
import sys

import pytest

from ordcoh.cli import main, run
from ordcoh.families import IndexedFamily
from ordcoh.finfun import piecewise, zero_function
from ordcoh.groupsalg import FgAbelianGroup
from ordcoh.ordcore import OMEGA, nat, parse

Z = FgAbelianGroup(1)
W2 = parse("w*2")


def call(capsys, *argv):
    code = main([*argv, "--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


@pytest.fixture
def bad_family(tmp_path):
    fam = IndexedFamily(1, [OMEGA, W2], Z, {
        (OMEGA,): zero_function(OMEGA, Z),
        (W2,): piecewise(W2, Z, [(nat(5), 0), (W2, 1)]),
    })
    return write(tmp_path, "bad.json", fam.to_json())


def test_walk_trace(capsys):
    code, rep = call(capsys, "walk", "trace", "--alpha", "3", "--beta", "w*2")
    assert code == 0
    assert rep["result"]["steps"] == ["w*2", "w", "3"]
    assert rep["outcome"] == "pass"


def test_incoherent_family_exit_one(capsys, bad_family):
    code, rep = call(capsys, "coh", "check", "--in", bad_family)
    assert code == 1
    assert rep["witnesses"][0]["tuple"] == ["w", "w*2"]
    assert rep["witnesses"][0]["where"] == {"interval": ["5", "w"]}


def test_cover_cohomology(capsys, tmp_path):
    path = write(tmp_path, "cover3.json", {"sets": {"U": ["a"], "V": ["b"], "W": ["c"]}})
    code, rep = call(capsys, "cech", "cohomology", "--in", path, "--degree", "0")
    assert code == 0
    assert rep["result"]["group"] == "Z^3"
    assert rep["result"]["rank"] == 3 and rep["result"]["torsion"] == []


def test_input_errors_exit_three(capsys, tmp_path):
    assert main(["walk", "trace", "--alpha", "w+", "--beta", "w"]) == 3
    assert "bad ordinal" in capsys.readouterr().err
    assert main(["walk", "trace", "--alpha", "3"]) == 3
    assert "--beta" in capsys.readouterr().err
    assert main(["cech", "cohomology", "--in", str(tmp_path / "missing.json")]) == 3
    capsys.readouterr()
    assert run(["nonsense"])[0] == 3


def test_fuel_exhaustion_exit_two(capsys):
    code, rep = call(capsys, "walk", "trace", "--alpha", "w^2*2+w*3+7", "--beta", "w^3",
                     "--fuel", "2")
    assert code == 2
    assert rep["outcome"] == "unknown"


def test_unknown_comparison_exit_two(capsys, tmp_path):
    from ordcoh.csystem import CANONICAL
    from ordcoh.finfun import Embed, rho_function
    f = rho_function(2, CANONICAL, OMEGA, embed=Embed(table=((1, (1,)),)))
    a = write(tmp_path, "f.json", f.to_json())
    b = write(tmp_path, "g.json", zero_function(OMEGA, Z).to_json())
    code, rep = call(capsys, "fun", "compare", "--in", a, "--other", b)
    assert code == 2


def test_report_is_deterministic(tmp_path, bad_family):
    outs = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        main(["coh", "check", "--in", bad_family, "--out", str(out)])
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    assert "seconds" not in json.loads(outs[0])


def test_timing_is_opt_in(capsys):
    code, rep = call(capsys, "ord", "compare", "w", "w+1", "--timing")
    assert code == 0 and "seconds" in rep


def test_ord_commands(capsys):
    assert call(capsys, "ord", "add", "3", "w")[1]["result"]["sum"] == "w"
    assert call(capsys, "ord", "compare", "w*2", "w^2")[1]["result"]["compare"] == -1
    rep = call(capsys, "ord", "fund", "w^2", "--count", "3")[1]
    assert rep["result"]["sequence"] == ["0", "w", "w*2"]


def test_fun_commands(capsys, tmp_path):
    f = write(tmp_path, "f.json", piecewise(W2, Z, [(OMEGA, 1), (W2, 0)]).to_json())
    assert call(capsys, "fun", "eval", "--in", f, "--at", "w")[1]["result"]["value"] == [0]
    rep = call(capsys, "fun", "transform", "--in", f, "--direction", "del")[1]
    assert rep["result"]["body"] == {"type": "finsupp", "support": {"0": 1, "w": -1}}


def test_coh_trivialize_and_game(capsys, tmp_path):
    from ordcoh.csystem import CANONICAL
    from ordcoh.families import rho_family
    fam = rho_family(1, CANONICAL, ["w", "w*2", "w^2"])
    path = write(tmp_path, "rho.json", fam.to_json())
    code, rep = call(capsys, "coh", "trivialize", "--in", path)
    assert code == 0 and rep["result"]["n"] == 0
    code, rep = call(capsys, "coh", "game", "--n", "2", "--stages", "4")
    assert code == 0


def test_cech_homotopy_and_les(capsys, tmp_path):
    h = write(tmp_path, "h.json", {"C": ["w", "w*2", "w^2"], "k": 1})
    code, rep = call(capsys, "cech", "homotopy", "--in", h)
    assert code == 0 and all(c["holds"] for c in rep["result"]["checks"])
    les = {"sets": {"U": ["a", "b"], "V": ["b", "c"]},
           "P": {"rank": 1}, "E": {"rank": 1}, "F": {"rank": 0, "torsion": [2]},
           "inj": [[2]], "surj": [[1]]}
    code, rep = call(capsys, "cech", "les", "--in", write(tmp_path, "les.json", les))
    assert code == 0 and rep["result"]["exact_at_HnF"]


def test_suite_subset(capsys):
    code = main(["suite", "--checks", "2", "10"])
    out = capsys.readouterr().out.strip().splitlines()
    assert code == 0
    assert len(out) >= 2 and all("pass" in line for line in out[:2])


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "ordcoh.cli", "walk", "trace", "--alpha", "3",
                           "--beta", "w*2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["steps"] == ["w*2", "w", "3"]
