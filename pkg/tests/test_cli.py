import json
import subprocess
import sys

import pytest

from starshift import codes
from starshift.cli import main


@pytest.fixture
def c8_file(tmp_path):
    path = tmp_path / "c8.code"
    path.write_text(codes.render_generator_file(codes.hamming8_code()))
    return str(path)


@pytest.fixture
def e2_file(tmp_path):
    path = tmp_path / "e2.code"
    path.write_text("11\n")
    return str(path)


def run_json(capsys, argv):
    rc = main(argv)
    out = capsys.readouterr().out
    return rc, json.loads(out)


class TestInspect:
    def test_selfdual_code_text(self, capsys, c8_file):
        assert main(["inspect", c8_file]) == 0
        out = capsys.readouterr().out
        assert "length: 8" in out
        assert "dim: 4" in out
        assert "weight class: doubly-even" in out
        assert "self-dual: yes" in out
        assert "contains all-ones: yes" in out
        assert "integrally non-degenerate: yes" in out

    def test_degenerate_code_reports_its_kernel_witness(self, capsys, e2_file):
        assert main(["inspect", e2_file]) == 0
        out = capsys.readouterr().out
        assert "integrally non-degenerate: no, kernel witness (1,-1)" in out

    def test_json_payload(self, capsys, c8_file):
        rc, data = run_json(capsys, ["inspect", c8_file, "--json"])
        assert rc == 0
        assert data["schema_version"] == 1
        assert data["dim"] == 4
        assert data["self_dual"] is True
        assert data["kernel_witness"] is None
        assert len(data["generators"]) == 4

    def test_json_kernel_witness(self, capsys, e2_file):
        rc, data = run_json(capsys, ["inspect", e2_file, "--json"])
        assert rc == 0
        assert data["integrally_nondegenerate"] is False
        assert data["kernel_witness"] == [1, -1]

    def test_missing_file(self, capsys):
        assert main(["inspect", "/no/such/file"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_ragged_file(self, capsys, tmp_path):
        path = tmp_path / "bad.code"
        path.write_text("11110000\n001111\n")
        assert main(["inspect", str(path)]) == 2
        assert "line 2" in capsys.readouterr().err

    def test_invalid_characters(self, capsys, tmp_path):
        path = tmp_path / "bad.code"
        path.write_text("11x1\n")
        assert main(["inspect", str(path)]) == 2
        assert "line 1" in capsys.readouterr().err


class TestDual:
    def test_selfdual_round_trip(self, capsys, c8_file):
        assert main(["dual", c8_file]) == 0
        out = capsys.readouterr().out
        parsed = codes.parse_generator_file(out)
        assert parsed == codes.hamming8_code()

    def test_json(self, capsys, e2_file):
        rc, data = run_json(capsys, ["dual", e2_file, "--json"])
        assert rc == 0
        assert data["dim"] == 1
        assert data["generators"] == ["11"]


class TestCheckPipeline:
    def sample_to_file(self, capsys, c8_file, tmp_path, seed=0):
        path = tmp_path / "config.json"
        assert main(["sample", c8_file, "--box", "2", "--seed", str(seed), "--json", "-o", str(path)]) == 0
        capsys.readouterr()
        return path

    def test_sampled_solution_is_valid(self, capsys, c8_file, tmp_path):
        config = self.sample_to_file(capsys, c8_file, tmp_path)
        assert main(["check", c8_file, str(config)]) == 0
        assert capsys.readouterr().out.strip() == "VALID"

    def test_corrupted_solution_is_invalid(self, capsys, c8_file, tmp_path):
        config = self.sample_to_file(capsys, c8_file, tmp_path)
        data = json.loads(config.read_text())
        # site index 1 lies in the forward stencil of the box's anchor,
        # so flipping it breaks a constraint
        values = list(data["values"])
        values[1] = "0" if values[1] == "1" else "1"
        data["values"] = "".join(values)
        config.write_text(json.dumps(data))
        assert main(["check", c8_file, str(config)]) == 1
        assert capsys.readouterr().out.strip() == "INVALID"

    def test_json_report(self, capsys, c8_file, tmp_path):
        config = self.sample_to_file(capsys, c8_file, tmp_path)
        rc, data = run_json(capsys, ["check", c8_file, str(config), "--json"])
        assert rc == 0
        assert data["valid"] is True
        assert data["constraint_rank"] == 4

    def test_malformed_json(self, capsys, c8_file, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        assert main(["check", c8_file, str(path)]) == 2
        assert "error:" in capsys.readouterr().err


class TestConstruct:
    def test_reference_dimension_text(self, capsys):
        assert main(["construct", "-d", "8"]) == 0
        out = capsys.readouterr().out
        assert "dimension: 8" in out
        assert "code (dim 4):" in out
        assert "product code (dim 7):" in out
        # generators print in canonical row-reduced form
        assert "  00001111" in out
        printed = [line.strip() for line in out.splitlines() if line.startswith("  ")]
        assert codes.parse_generator_file("\n".join(printed[:4])) == codes.hamming8_code()

    def test_padded_dimension_json(self, capsys):
        rc, data = run_json(capsys, ["construct", "-d", "10", "--json"])
        assert rc == 0
        assert data["code"]["dim"] == 6
        assert data["product_code"]["dim"] == 9

    def test_unsupported_dimension(self, capsys):
        assert main(["construct", "-d", "7"]) == 2
        assert "error:" in capsys.readouterr().err


class TestVerify:
    def test_reference_dimension_passes(self, capsys):
        assert main(["verify", "-d", "8", "--samples", "10"]) == 0
        out = capsys.readouterr().out
        assert "RESULT: PASS" in out
        assert "FAIL" not in out.replace("RESULT: PASS", "")
        assert "premises:star_closure" in out
        assert "dynamics:involution_on_samples" in out
        assert "non_affine_witness" in out

    def test_json_report(self, capsys):
        rc, data = run_json(capsys, ["verify", "-d", "8", "--samples", "5", "--json"])
        assert rc == 0
        assert data["schema_version"] == 1
        assert data["passed"] is True
        assert data["system"]["d"] == 8
        assert all("name" in c and "passed" in c for c in data["checks"])

    def test_unsupported_dimension(self, capsys):
        assert main(["verify", "-d", "6"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_seeded_json_reports_identical_modulo_timing(self, tmp_path, capsys):
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for p in paths:
            rc = main(
                ["verify", "-d", "8", "--samples", "10", "--seed", "3", "--json", "-o", str(p)]
            )
            assert rc == 0
        capsys.readouterr()

        def strip(obj):
            if isinstance(obj, dict):
                return {k: strip(v) for k, v in obj.items() if k != "millis"}
            if isinstance(obj, list):
                return [strip(v) for v in obj]
            return obj

        a, b = (json.loads(p.read_text()) for p in paths)
        assert strip(a) == strip(b)
        assert json.dumps(strip(a), sort_keys=True) == json.dumps(strip(b), sort_keys=True)


class TestEntropy:
    def test_even_weight_profile(self, capsys, e2_file):
        rc, data = run_json(capsys, ["entropy", e2_file, "--box", "3", "--json"])
        assert rc == 0
        assert data["sizes"] == [2, 3]
        assert data["ratios"] == ["3/4", "5/9"]
        assert data["verdict"] == "zero-entropy"

    def test_text_output(self, capsys, e2_file):
        assert main(["entropy", e2_file, "--box", "2"]) == 0
        out = capsys.readouterr().out
        assert "N=2: log2 count 3 over 4 sites = 3/4" in out
        assert "verdict: zero-entropy" in out


class TestMixingWitness:
    def test_unit_vector_witness(self, capsys, c8_file):
        assert main(["mixing-witness", c8_file, "--n", "1,0,0,0,0,0,0,0"]) == 0
        out = capsys.readouterr().out
        assert "witness codeword 11110000 with support sum 1" in out

    def test_json(self, capsys, c8_file):
        rc, data = run_json(
            capsys, ["mixing-witness", c8_file, "--n", "2,3,-5,7,11,-13,17,19", "--json"]
        )
        assert rc == 0
        assert data["degenerate"] is False
        assert data["support_sum"] != 0
        w = codes.parse_generator_file(data["witness"])
        assert codes.is_subcode(w, codes.hamming8_code())

    def test_degenerate_code(self, capsys, e2_file):
        assert main(["mixing-witness", e2_file, "--n", "3,5"]) == 1
        out = capsys.readouterr().out
        assert "kernel witness (1, -1)" in out

    def test_degenerate_code_json(self, capsys, e2_file):
        rc, data = run_json(capsys, ["mixing-witness", e2_file, "--n", "3,5", "--json"])
        assert rc == 1
        assert data["degenerate"] is True
        assert data["kernel_witness"] == [1, -1]

    def test_length_mismatch(self, capsys, e2_file):
        assert main(["mixing-witness", e2_file, "--n", "1,2,3"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_zero_vector(self, capsys, e2_file):
        assert main(["mixing-witness", e2_file, "--n", "0,0"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_unparseable_vector(self, capsys, e2_file):
        assert main(["mixing-witness", e2_file, "--n", "1,x"]) == 2
        assert "error:" in capsys.readouterr().err


class TestSample:
    def test_deterministic_for_a_seed(self, capsys, c8_file):
        assert main(["sample", c8_file, "--seed", "5"]) == 0
        first = capsys.readouterr().out
        assert main(["sample", c8_file, "--seed", "5"]) == 0
        assert capsys.readouterr().out == first
        assert set(first.strip()) <= {"0", "1"}
        assert len(first.strip()) == 256

    def test_seeds_vary(self, capsys, c8_file):
        outputs = set()
        for seed in range(5):
            assert main(["sample", c8_file, "--seed", str(seed)]) == 0
            outputs.add(capsys.readouterr().out)
        assert len(outputs) > 1

    def test_json_metadata(self, capsys, c8_file):
        rc, data = run_json(capsys, ["sample", c8_file, "--seed", "2", "--json"])
        assert rc == 0
        assert data["seed"] == 2
        assert data["log2_count"] == 252
        assert len(data["values"]) == 256

    def test_site_guard(self, capsys, c8_file):
        assert main(["sample", c8_file, "--box", "4"]) == 3
        assert "error:" in capsys.readouterr().err

    def test_guard_override_flag_accepted(self, capsys, e2_file):
        # 150^2 = 22500 sites trips the default guard; the override
        # admits it
        assert main(["sample", e2_file, "--box", "150"]) == 3
        capsys.readouterr()
        assert main(["sample", e2_file, "--box", "150", "--max-sites", "23000"]) == 0
        capsys.readouterr()


class TestModuleEntry:
    def test_help(self):
        proc = subprocess.run(
            [sys.executable, "-m", "starshift", "--help"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "inspect" in proc.stdout
        assert "verify" in proc.stdout

    def test_construct_subprocess(self):
        proc = subprocess.run(
            [sys.executable, "-m", "starshift", "construct", "-d", "8"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "dimension: 8" in proc.stdout

    def test_unknown_command(self):
        proc = subprocess.run(
            [sys.executable, "-m", "starshift", "frobnicate"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 2
