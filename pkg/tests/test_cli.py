import json
import random

import pytest

from steiner_extension.cli import main, run_problem, verify_solution
from steiner_extension.generators import generate
from steiner_extension.graph import degeneracy_ordering
from steiner_extension.instance_io import Instance, parse_instance

TRIANGLE = "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\nt 1\n"
P5 = "p edge 5 4\ne 1 2\ne 2 3\ne 3 4\ne 4 5\n"
# two triangles joined by the bridge 3-4
BRIDGED = "p edge 6 7\ne 1 2\ne 2 3\ne 1 3\ne 3 4\ne 4 5\ne 5 6\ne 4 6\n"


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def run_json(capsys, argv):
    code = main(argv + ["--json"])
    out = capsys.readouterr().out.strip()
    return code, json.loads(out)


def test_solve_triangle(write, capsys):
    # under the strict convention a single vertex is not 2-edge-connected
    code, rep = run_json(capsys, ["solve", "sse", write("triangle.gr", TRIANGLE), "--k", "3", "--p", "2", "--strict-singleton"])
    assert code == 0
    assert rep["status"] == "yes" and rep["solution"] == [1, 2, 3]
    assert set(rep) >= {"status", "solution", "wall_time_ms", "seed", "params"}


def test_solve_pvc_path(write, capsys):
    code, rep = run_json(capsys, ["solve", "pvc", write("p5.gr", P5), "--k", "1", "--p", "1", "--eta", "3"])
    assert code == 0 and rep["solution"] == [3]


def test_solve_no_and_missing_extras(write, capsys):
    path = write("p5.gr", P5)
    code, rep = run_json(capsys, ["solve", "pvc", path, "--k", "0", "--p", "1", "--eta", "3"])
    assert code == 1 and rep["status"] == "no" and "solution" not in rep
    assert main(["solve", "pvc", path, "--k", "1", "--p", "1"]) == 2
    assert "eta" in capsys.readouterr().err


def test_solve_parse_error(write, capsys):
    assert main(["solve", "sse", write("nonsense.gr", "hello world\n")]) == 2
    assert "line 1" in capsys.readouterr().err
    assert main(["solve", "sse", "/nonexistent/file.gr", "--k", "2", "--p", "1"]) == 2


def test_check(write, capsys):
    path = write("bridged.gr", BRIDGED)
    code, rep = run_json(capsys, ["check", path, "--p", "2"])
    assert code == 0
    split = write("split.gr", BRIDGED + "t 1\nt 6\n")
    code, rep = run_json(capsys, ["check", split, "--p", "2"])
    assert code == 1 and rep["status"] == "infeasible"
    inside = write("inside.gr", BRIDGED + "t 1\nt 2\n")
    code, rep = run_json(capsys, ["check", inside, "--p", "2"])
    assert code == 0 and rep["witness_size"] >= 2 and {1, 2} <= set(rep["solution"])
    loose = write("loose.gr", "p edge 4 2\ne 1 2\ne 3 4\nt 1\n")
    assert main(["check", loose, "--p", "1"]) == 2
    assert "connected" in capsys.readouterr().err


def test_gen(tmp_path, capsys):
    out = tmp_path / "c5.gr"
    assert main(["gen", "cycle", "--n", "5", "--out", str(out)]) == 0
    g = parse_instance(out.read_text()).graph
    assert g.n == 5 and g.m == 5 and all(g.degree(v) == 2 for v in range(5))
    assert main(["gen", "random_degenerate", "--eta", "2", "--n", "20", "--seed", "7"]) == 0
    first = capsys.readouterr().out
    g = parse_instance(first).graph
    assert g.n == 20 and degeneracy_ordering(g).claimed_degeneracy <= 2
    main(["gen", "random_degenerate", "--eta", "2", "--n", "20", "--seed", "7"])
    assert capsys.readouterr().out == first
    main(["gen", "spider_T2"])
    g = parse_instance(capsys.readouterr().out).graph
    assert g.n == 7 and sorted(g.degree(v) for v in range(7)) == [1, 1, 1, 2, 2, 2, 3]
    assert main(["gen", "cycle"]) == 2


def test_verify(write, capsys):
    inst = write("c5.gr", "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 1 5\nt 1\nt 3\n")
    good = write("good.txt", "1\n2\n3\n4\n5\n")
    assert run_json(capsys, ["verify", inst, good, "--k", "5", "--p", "2"])[0] == 0
    missing = write("missing.txt", "2\n3\n4\n5\n")
    code, rep = run_json(capsys, ["verify", inst, missing, "--k", "5", "--p", "2"])
    assert code == 1 and rep["violation"] == "terminal not covered"
    weak = write("weak.txt", "1\n2\n3\n")
    code, rep = run_json(capsys, ["verify", inst, weak, "--k", "5", "--p", "2"])
    assert code == 1 and rep["violation"] == "connectivity"
    big = write("big.txt", "1\n2\n3\n4\n5\n")
    code, rep = run_json(capsys, ["verify", inst, big, "--k", "4", "--p", "2"])
    assert code == 1 and rep["violation"] == "size exceeds k"
    assert main(["verify", inst, write("junk.txt", "x\n"), "--k", "5", "--p", "2"]) == 2


def test_verify_deletion_messages(write, capsys):
    inst = write("p5.gr", P5)
    sol = write("s.txt", "2\n")
    code, rep = run_json(capsys, ["verify", inst, sol, "--problem", "pvc", "--k", "1", "--p", "1", "--eta", "3"])
    assert code == 1 and rep["violation"] == "path"
    code, rep = run_json(capsys, ["verify", inst, sol, "--problem", "bdds", "--k", "1", "--p", "1", "--eta", "1"])
    assert code == 1 and rep["violation"] == "max degree"


def test_oracle_command(write, capsys):
    code, rep = run_json(capsys, ["oracle", "pvc", write("p5.gr", P5), "--k", "1", "--p", "1", "--eta", "3"])
    assert code == 0 and rep["solution"] == [3]


def test_file_parameters_and_overrides(write, capsys):
    text = TRIANGLE + "x k 3\nx p 2\n"
    path = write("t2.gr", text)
    code, rep = run_json(capsys, ["solve", "sse", path])
    assert code == 0 and rep["params"]["k"] == 3
    # the lone terminal already counts unless singletons are excluded
    assert run_json(capsys, ["solve", "sse", path, "--k", "2"])[0] == 0
    code, rep = run_json(capsys, ["solve", "sse", path, "--k", "2", "--strict-singleton"])
    assert code == 1 and rep["params"]["k"] == 2


def test_json_is_stable(write, capsys):
    path = write("triangle.gr", TRIANGLE)
    reps = []
    for _ in range(2):
        main(["solve", "sse", path, "--k", "3", "--p", "2", "--json", "--seed", "3"])
        rep = json.loads(capsys.readouterr().out)
        rep.pop("wall_time_ms")
        reps.append(json.dumps(rep, sort_keys=True))
    assert reps[0] == reps[1]


def test_verify_accepts_every_solver_answer():
    rng = random.Random(13)
    extras_for = {
        "sse": {},
        "bdds": {"eta": 1},
        "pw1ds": {},
        "tdds": {"eta": 2},
        "pvc": {"eta": 3},
        "scattered": {"alpha": 2, "beta": 4},
    }
    for t in range(60):
        problem = rng.choice(sorted(extras_for))
        n = rng.randint(3, 8)
        g = generate("random_degenerate", {"n": n, "eta": 2, "density": 0.8}, t)
        x = frozenset(rng.sample(range(n), rng.randint(1, 2))) if problem == "sse" else frozenset()
        inst = Instance(g, x, None, None, {})
        params = {"k": rng.randint(2, 4), "p": rng.randint(1, 2), **extras_for[problem]}
        strict = rng.random() < 0.5
        res = run_problem(problem, inst, params, t, strict)
        if res.yes:
            assert verify_solution(problem, inst, res.solution, params, strict) is None
