import json

import pytest


def out(r):
    return json.loads(r.stdout)


def no_numbers(x):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return True
    if isinstance(x, (int, float)):
        return False
    items = x.values() if isinstance(x, dict) else x
    return all(no_numbers(e) for e in items)


@pytest.mark.parametrize(
    "p,f,basis,count,terms",
    [
        (2, "x+1", "vdp", 4, ["1", "2", "2", "2"]),
        (2, "2*x^2+3*x+1", "mahler", 4, ["1", "5", "4", "0"]),
        (3, "0", "mahler", 3, ["0", "0", "0"]),
    ],
)
def test_expand_examples(cli, schema, p, f, basis, count, terms):
    r = cli("expand", "-p", p, "-f", f, "--basis", basis, "--count", count)
    assert r.returncode == 0, r.stderr
    doc = out(r)
    schema("series", doc)
    assert doc["terms"] == terms
    assert no_numbers(doc)


def test_expand_normalized(cli, schema):
    r = cli("expand", "-p", 2, "-f", "x+1", "--basis", "vdp", "--count", 4, "--normalized")
    doc = out(r)
    schema("series", doc)
    assert doc["normalized"] == ["1", "2", "1", "1"]


@pytest.mark.parametrize(
    "p,f,code,result",
    [
        (2, "x+1", 0, "ergodic"),
        (2, "5*x+7", 0, "ergodic"),
        (2, "2*x^2+7*x+3", 0, "ergodic"),
        (3, "1+4*x+4*x^3+2*x^5", 1, "not ergodic"),
        (5, "x^5+1", 1, "not ergodic"),
        (2, "1+3*x+2*x^3", 1, "not ergodic"),
        (2, "x^2", 1, "not ergodic"),
        (7, "x+1", 0, "ergodic"),
    ],
)
def test_classify(cli, schema, p, f, code, result):
    r = cli("classify", "-p", p, "-f", f, "--json")
    assert r.returncode == code, r.stderr
    doc = out(r)
    schema("classify", doc)
    assert doc["result"] == result
    assert no_numbers(doc)


def test_classify_counterexample_detail(cli):
    r = cli("classify", "-p", 3, "-f", "1+4*x+4*x^3+2*x^5")
    assert r.returncode == 1
    assert "transitive mod 9, not mod 27" in r.stdout


TRANSITIVE_NOT_UD1 = [
    77, 69, 1, 11, 36, 61, 62, 57, 58, 68, 6, 37, 20, 27, 43, 17, 21, 67, 5, 51, 19, 56, 72, 25, 80, 39, 76,
    50, 15, 28, 38, 63, 34, 35, 30, 31, 41, 60, 10, 74, 0, 70, 71, 75, 40, 59, 78, 46, 2, 18, 52, 53, 66, 49,
    23, 42, 55, 65, 9, 7, 8, 3, 4, 14, 33, 64, 47, 54, 16, 44, 48, 13, 32, 24, 73, 29, 45, 79, 26, 12, 22,
]


def test_classify_non_ud1_is_precondition(cli, schema, tmp_path):
    # transitive mod 81 and 1-Lipschitz, but not UD_1: ergodicity cannot be certified
    t = tmp_path / "t.json"
    doc = {"kind": "table", "p": "3", "k": "4", "values": [str(v) for v in TRANSITIVE_NOT_UD1]}
    schema("table", doc)
    t.write_text(json.dumps(doc))
    r = cli("classify", "-p", 3, "-N", 4, "--table", t, "--json")
    assert r.returncode == 2
    rep = out(r)
    schema("classify", rep)
    assert rep["result"] == "precondition"
    assert [v for v in rep["verdicts"] if v["criterion"] == "ud1"][0]["condition"] == "congruence"

    t.write_text(json.dumps({"kind": "table", "p": "2", "k": "3", "values": ["1", "2", "3", "4", "5", "6", "7", "0"]}))
    assert cli("classify", "-p", 2, "-N", 3, "--table", t).returncode == 0


def test_usage_errors(cli):
    r = cli("classify", "-p", 2, "-f", "x+")
    assert r.returncode == 2
    assert "position 2" in r.stderr
    assert cli("expand", "-p", 4, "-f", "x").returncode == 2
    assert cli("bogus").returncode == 2
    assert cli("generate", "-p", 5, "--phi", "0,1,2,3,4", "--bvec", "1,1,1,1,2").returncode == 2


def test_max_depth_env(cli):
    r = cli("expand", "-p", 2, "-N", 6, "-f", "x+1", env={"PADIC_DYN_MAX_DEPTH": "4"})
    assert r.returncode == 2


def test_expand_series_round_trip(cli, tmp_path):
    for p, f in [(2, "1+3*x+2*x^3"), (3, "1+4*x+4*x^3+2*x^5"), (5, "x^5+1"), (2, "x+1")]:
        direct = cli("classify", "-p", p, "-f", f, "--json")
        for basis in ("mahler", "vdp"):
            s = cli("expand", "-p", p, "-f", f, "--basis", basis)
            path = tmp_path / f"{p}_{basis}.json"
            path.write_text(s.stdout)
            via = cli("classify", "-p", p, "--series", path, "--json")
            assert via.returncode == direct.returncode
            a, b = out(direct), out(via)
            assert a["result"] == b["result"]
            assert [v["pass"] for v in a["verdicts"]] == [v["pass"] for v in b["verdicts"]]


def test_enumerate_cubic(cli, schema):
    maps = {}
    for crit in ("oracle", "merg", "vdp", "larin"):
        r = cli("enumerate", "-p", 2, "--family", "cubic-mod8", "--criterion", crit, "--json")
        assert r.returncode == 0
        doc = out(r)
        schema("enumerate", doc)
        assert doc["classes"] == "16"
        assert doc["matches_listed"] is True
        maps[crit] = sorted(tuple(e["map"]) for e in doc["ergodic"])
    assert maps["oracle"] == maps["merg"] == maps["vdp"] == maps["larin"]


def test_enumerate_deg8(cli, schema):
    r = cli("enumerate", "-p", 3, "--family", "deg8-mod27", "--sample", 1000, "--seed", 3, "--json")
    assert r.returncode == 0
    doc = out(r)
    schema("enumerate", doc)
    assert doc["agreements"] == "1000"
    assert doc["disagreements"] == []


def test_generate(cli, schema):
    r = cli("generate", "-p", 5, "--phi", "0,1,2,3,4", "--bvec", "1,1,1,1,1", "--lift", "zeros", "--json")
    assert r.returncode == 0
    doc = out(r)
    schema("generate", doc)
    assert doc["functions"][0]["verdict"]["pass"]
    assert doc["functions"][0]["oracle_transitive_mod_p2"]

    r = cli("generate", "-p", 5, "--phi", "0,2,4,1,3", "--bvec", "2,3,1,1,1", "--random-lifts", 100, "--json")
    doc = out(r)
    schema("generate", doc)
    assert doc["generated"] == "100"
    for g in doc["functions"]:
        assert g["verdict"]["pass"] == g["oracle_transitive_mod_p2"]


@pytest.mark.parametrize("suite,args", [("abc", ["--pmax", 97]), ("valpro", ["--pmax", 13]), ("bip2", [])])
def test_verify(cli, schema, suite, args):
    r = cli("verify", "--suite", suite, *args, "--json")
    assert r.returncode == 0
    doc = out(r)
    schema("identity_report", doc)
    assert doc["counterexamples"] == []


def test_verify_all(cli, schema):
    r = cli("verify", "--suite", "all", "--pmax", 7, "--smax", 3, "--json")
    assert r.returncode == 0
    doc = out(r)
    schema("identity_report", doc)
    assert len(doc) == 5


def test_table_schema(schema):
    schema("table", {"kind": "table", "p": "2", "k": "1", "values": ["1", "0"]})
