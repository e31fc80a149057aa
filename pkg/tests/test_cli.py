import json

import jsonschema
import numpy as np
import pytest

from u2model.cli import run
from u2model.models import standard2d, type0, type1, zerodim
from u2model.schema import available, load_schema

FULL_52 = '{"kind":"full","m":5,"n":2,"lambda":"1ns"}'
FULL_42 = '{"kind":"full","m":4,"n":2,"lambda":"2"}'
CP = '{"kind":"central_product","group":"A4","s":2,"variant":%d}'


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def call_json(capsys, *argv):
    code, out, err = call(capsys, "--json", *argv)
    data = json.loads(out)
    jsonschema.validate(data, load_schema(data["command"]))
    assert data["version"] == 1
    return code, data["result"]


def test_enumerate_lattices(capsys):
    code, out, _ = call(capsys, "enumerate-lattices", "--max-index", "4")
    assert code == 0 and "7 lattices" in out
    code, res = call_json(capsys, "enumerate-lattices", "--max-index", "4")
    assert len(res) == 7


def test_classify_lattice(capsys):
    code, res = call_json(capsys, "classify-lattice", "[[2,0],[0,2]]")
    assert code == 0 and res["class"]["family"] == "Lambda2"
    assert call(capsys, "classify-lattice", "[[1,")[0] == 2


def test_enumerate_subgroups(capsys):
    code, res = call_json(capsys, "enumerate-subgroups", "--truncation", "2", "--block", "D4Z")
    assert code == 0 and {r["block"] for r in res} == {"D4Z"}


def test_block_of(capsys):
    code, out, _ = call(capsys, "block-of", FULL_42)
    assert code == 0 and "D4Z" in out
    code, res = call_json(capsys, "block-of", FULL_52)
    assert res["block"] == "D4Z"
    # lambda 2 at (5, 2) violates parity
    assert call(capsys, "block-of", '{"kind":"full","m":5,"n":2,"lambda":"2"}')[0] == 2


def test_validate_partition(capsys):
    code, res = call_json(capsys, "validate-partition", "--truncation", "3")
    assert code == 0 and res["ok"]
    code, res = call_json(capsys, "validate-partition", "--truncation", "3",
                          "--fault", "d4_full_to_N")
    assert code == 1 and not res["ok"]


def test_weyl_and_normalizer(capsys):
    code, res = call_json(capsys, "weyl", '{"kind":"central_product","group":"D4","s":"inf"}')
    assert code == 0 and res["component_group"] == "S3"
    code, res = call_json(capsys, "normalizer", FULL_42, "--ambient", "N")
    assert res["normalizer"] == {"kind": "full", "m": "inf", "n": 2, "lambda": "1s"}
    assert call(capsys, "normalizer", CP % 0, "--ambient", "N")[0] == 2


def test_fuse_and_counts(capsys):
    code, res = call_json(capsys, "fuse", CP % 1, CP % 2)
    assert code == 0 and res["conjugate"] is True
    code, res = call_json(capsys, "fuse", CP % 0, CP % 2)
    assert res["conjugate"] is False
    code, res = call_json(capsys, "count-classes", "D4")
    assert (res["a"], res["b"]) == (4, 2)


def test_oracles(capsys):
    code, res = call_json(capsys, "oracle", "normalizer", "--max-m", "2", "--max-n", "3")
    assert code == 0 and res["mismatches"] == 0
    code, res = call_json(capsys, "oracle", "normalizer", "--level", "16",
                          "--subgroup", '{"kind":"full","m":2,"n":2,"lambda":"1s"}')
    assert code == 0 and res["checked"] == 1
    code, res = call_json(capsys, "oracle", "fusion", "--trials", "500", "--seed", "4",
                          "--tol", "1e-6")
    assert code == 0 and res["violations"] == 0 and res["seed"] == 4
    assert call(capsys, "oracle", "normalizer", "--subgroup", CP % 0)[0] == 2


def _objects():
    rng = np.random.default_rng(0)
    return [type0.random_type0(rng), type1.random_type1(rng),
            standard2d.random_standard2d(rng), zerodim.random_zero_dim(rng)]


@pytest.mark.parametrize("i", range(4))
def test_validate_object(capsys, tmp_path, i):
    obj = _objects()[i].to_json()
    jsonschema.validate(obj, load_schema("model-object"))
    path = tmp_path / "obj.json"
    path.write_text(json.dumps(obj))
    code, res = call_json(capsys, "validate-object", f"@{path}")
    assert code == 0 and res["verdict"] == "pass"


def test_validate_object_failure_and_usage(capsys):
    bad = type0.constant_object(0, 2, ["p"])
    stalk = bad.stalks[0]
    from u2model.models import linalg as la
    dead = type0.Stalk(stalk.label, stalk.F, stalk.hom,
                       {d: la.zeros(*m.shape) for d, m in stalk.sigma.items()})
    doc = json.dumps(type0.Type0Object(bad.FH, (dead,)).to_json())
    assert call(capsys, "validate-object", doc)[0] == 1
    assert call(capsys, "validate-object", '{"kind":"nope"}')[0] == 2
    assert call(capsys, "validate-object", "@/nonexistent/file.json")[0] == 2


def test_restrict_easy(capsys):
    x = type1.free_object(-8, 2, ["D4x2C6[1]"])
    code, res = call_json(capsys, "restrict-easy", json.dumps(x.to_json()), "--group", "D4")
    assert code == 0
    assert [p["label"] for p in res["object"]["points"]] == ["D4x2C6[1]", "D4x2C6[2]",
                                                            "D4x2C6[3]"]


def test_enumerate_flags(capsys):
    code, res = call_json(capsys, "enumerate-flags", "--truncation", "2", "--ambient", "U2")
    assert code == 0 and len(res) == 45


def test_diagram(capsys, tmp_path):
    code, out, _ = call(capsys, "diagram", "--block", "T", "--truncation", "6", "--format", "svg")
    assert code == 0 and out.startswith("<svg")
    target = tmp_path / "sq.dot"
    code, res = call_json(capsys, "diagram", "--format", "dot", "--output", str(target),
                          "--truncation", "2")
    assert code == 0 and target.read_text().startswith("digraph")


def test_usage_errors(capsys):
    assert call(capsys, "no-such-command")[0] == 2
    assert call(capsys, "enumerate-lattices", "--bogus")[0] == 2
    assert call(capsys, "enumerate-lattices")[0] == 2
    assert call(capsys, "block-of", "not json")[0] == 2


def test_global_flags_after_subcommand(capsys):
    a = call(capsys, "--json", "--seed", "3", "oracle", "fusion", "--trials", "50")
    b = call(capsys, "oracle", "fusion", "--trials", "50", "--json", "--seed", "3")
    assert a == b


def test_every_schema_is_well_formed():
    for name in available():
        jsonschema.Draft202012Validator.check_schema(load_schema(name))
