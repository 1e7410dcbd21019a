"""CLI surface: command behavior, formats, exit codes, the element
grammar, and the byte-determinism contract."""

import json

from sl1d import algebra as alg
from sl1d.cli import main, parse_element


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestCensus:
    def test_table(self, capsys):
        code, out, _ = run_cli(capsys, "census", "--q", "3", "--ell", "2",
                               "--max-level", "4")
        assert code == 0
        data = json.loads(out)
        assert data["ok"]
        last = data["rows"][-1]
        assert (last["m"], last["a_m"], last["d_m"]) == (4, 24, 9)
        assert last["sum_a"] == 68 and last["group_order_next"] == 2916

    def test_row_m1_at_53(self, capsys):
        code, out, _ = run_cli(capsys, "census", "--q", "5", "--ell", "3",
                               "--max-level", "2")
        data = json.loads(out)
        row = data["rows"][1]
        assert (row["a_m"], row["d_m"]) == (4, 31)

    def test_rejects_q4(self, capsys):
        code, _, err = run_cli(capsys, "census", "--q", "4", "--ell", "2")
        assert code == 1 and "odd prime" in err

    def test_rejects_ell_equal_p(self, capsys):
        code, _, err = run_cli(capsys, "census", "--q", "3", "--ell", "3")
        assert code == 1

    def test_tsv_format(self, capsys):
        code, out, _ = run_cli(capsys, "census", "--q", "3", "--ell", "2",
                               "--max-level", "2", "--format", "tsv")
        lines = out.strip().splitlines()
        assert lines[0].split("\t")[0] == "m"
        assert len(lines) == 4

    def test_cross_validation(self, capsys):
        code, out, _ = run_cli(capsys, "census", "--q", "3", "--ell", "2",
                               "--max-level", "3", "--cross-validate")
        data = json.loads(out)
        assert code == 0
        assert data["rows"][3]["class_count"] == 44


class TestElemGrammar:
    def test_examples(self, tower32):
        tw = tower32
        x = parse_element(tw, 6, "1+n*t3+p^2")
        t3 = tw.pow(tw.generator, 3)
        want = (alg.one(tw) + alg.nu(tw) * alg.teich(tw, t3)
                + alg.pi(tw, 2)).truncate(6)
        assert x == want

    def test_parens_and_powers(self, tower32):
        tw = tower32
        x = parse_element(tw, 6, "(1+n)^2")
        want = ((alg.one(tw) + alg.nu(tw)) ** 2).truncate(6)
        assert x == want

    def test_noncommutative_order(self, tower32):
        tw = tower32
        a = parse_element(tw, 6, "t*n")
        b = parse_element(tw, 6, "n*t")
        assert a != b
        assert a == parse_element(tw, 6, "n*t3")  # t nu = nu t^q, q = 3

    def test_cli_elem(self, capsys):
        code, out, _ = run_cli(capsys, "elem", "--q", "3", "--ell", "2",
                               "(1+n)*(1-n)", "--op", "all")
        data = json.loads(out)
        assert code == 0
        assert data["val"] == "0"
        assert "nu^2" in data["canonical"]

    def test_cli_elem_classify(self, capsys):
        code, out, _ = run_cli(capsys, "elem", "--q", "3", "--ell", "2",
                               "n^3*t2+p^2", "--prec", "6")
        data = json.loads(out)
        assert data["class"] == "ramified" and data["jump"] == "3"
        assert data["val"] == "3/2"

    def test_bad_expression(self, capsys):
        code, _, err = run_cli(capsys, "elem", "--q", "3", "--ell", "2",
                               "1+&")
        assert code == 1


class TestZetaCommand:
    def test_exact_point(self, capsys):
        code, out, _ = run_cli(capsys, "zeta", "--q", "3", "--ell", "2",
                               "--s", "2", "--terms", "200")
        data = json.loads(out)
        assert code == 0
        assert data["closed_form"] == "25/3"
        assert data["pole"] == "1"
        num, den = data["abs_error"].split("/")
        assert int(num) / int(den) <= 1e-12

    def test_pole_is_structured(self, capsys):
        code, out, _ = run_cli(capsys, "zeta", "--q", "3", "--ell", "2",
                               "--s", "1")
        data = json.loads(out)
        assert code == 0 and data["at_pole"] and data["closed_form"] is None

    def test_group_order_table_at_minus_two(self, capsys):
        code, out, _ = run_cli(capsys, "zeta", "--q", "3", "--ell", "2",
                               "--s", "-2", "--terms", "3")
        data = json.loads(out)
        assert data["partial_sum"] == "972"


class TestOrbitsCommand:
    def test_single_element(self, capsys):
        code, out, _ = run_cli(capsys, "orbits", "--q", "3", "--ell", "2",
                               "--m", "2", "--y", "n", "--bruteforce")
        data = json.loads(out)
        assert code == 0
        row = data["rows"][0]
        assert row["units_orbit"] == 4 and row["G_orbit"] == 2
        assert row["match"]

    def test_all_cosets(self, capsys):
        code, out, _ = run_cli(capsys, "orbits", "--q", "3", "--ell", "2",
                               "--m", "2")
        data = json.loads(out)
        # all 78 non-central cosets mod P^2 have jump < 2
        assert len(data["rows"]) == 78
        assert {r["kind"] for r in data["rows"]} == {"ramified",
                                                     "unramified"}


class TestVerifyCommand:
    def test_zeta_suite(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--q", "3", "--ell", "2",
                               "--suite", "zeta")
        data = json.loads(out)
        assert code == 0 and data["ok"]
        assert {r["check"] for r in data["rows"]} == \
            {"telescoping", "closed-form", "pole"}

    def test_orbit_suite_deterministic_bytes(self, capsys):
        args = ("verify", "--q", "3", "--ell", "2", "--suite", "orbits",
                "--seed", "7")
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2

    def test_failure_detail_carries_claim(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--q", "3", "--ell", "2",
                               "--suite", "duality")
        data = json.loads(out)
        for row in data["rows"]:
            assert row["claim"]


class TestConfigFile:
    def test_config_file_flags_win(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"q": 5, "ell": 3}))
        code, out, _ = run_cli(capsys, "census", "--config", str(cfg),
                               "--max-level", "1")
        data = json.loads(out)
        assert data["q"] == 5 and data["ell"] == 3
        # flags override the file
        code, out, _ = run_cli(capsys, "census", "--config", str(cfg),
                               "--q", "3", "--ell", "2", "--max-level", "1")
        data = json.loads(out)
        assert data["q"] == 3 and data["ell"] == 2

    def test_custom_moduli_flag(self, capsys):
        code, out, _ = run_cli(capsys, "elem", "--q", "3", "--ell", "2",
                               "--modulus-qell", "1,0,1", "t+n")
        assert code == 0
