#!/usr/bin/env python3
"""
Command-line tests: CSV layout, determinism, sweeps and exit codes
"""

import csv
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.cli import (
    EXIT_CONFIG_ERROR,
    EXIT_IO_ERROR,
    EXIT_OK,
    EXIT_TOLERANCE_BREACH,
    EXIT_VERIFY_FAILED,
    main,
    parse_q_list,
)
from src.errors import ConfigError
from src.qnum import q_frequency_osc
from src.qsymb import Generator, QCoefficient, QPolynomial, RewriteRule, RuleSet
from src.run_config import load_run_config, parse_echo

OSCILLATOR = """
[run]
scenario = q_oscillator
tolerance = 1e-6

[physics]
q = 1.2
fock_size = 6

[grid]
t_end = 1.0
steps = 100

[observables]
state = coherent
"""

FREE_PARTICLE = """
[run]
scenario = free_particle

[physics]
q = 1.5
lattice_half_width = 2

[grid]
t_end = 0.5
steps = 200
"""

POLY = """
[run]
scenario = poly_dynamics

[physics]
q = 1.5
b = 0.7
c = 1.3
alpha = 1 0: 1.0; 0 1: 0.5

[grid]
t_end = 1.0
steps = 20
"""


def write_config(directory, text, name="run.ini"):
    path = directory / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def read_blocks(path):
    """Split a CSV file into blocks of lines"""
    with open(path, encoding="utf-8") as f:
        content = f.read()
    return [block.splitlines() for block in content.split("\n\n") if block.strip()]


def table(block):
    rows = list(csv.reader(line for line in block if not line.startswith("#")))
    return rows[0], rows[1:]


def corrupted_osc_rules():
    A, Ad = Generator.A, Generator.ADag
    rhs = QPolynomial({(): QCoefficient.one(), (Ad, A): QCoefficient.q(2)})
    return RuleSet("osc", [RewriteRule((A, Ad), rhs)])


class TestRun:

    def test_writes_csv(self, tmp_path):
        output = tmp_path / "osc.csv"
        assert main(["run", write_config(tmp_path, OSCILLATOR), "--output", str(output)]) == EXIT_OK

        (block,) = read_blocks(output)
        header, rows = table(block)
        assert header[0] == "t"
        assert "a_closed_re" in header and "p_liouville_im" in header
        assert "dev_x_ode" in header and "dev_a_liouville" in header
        assert header[-2:] == ["omega_q", "q_omega_q"]
        assert len(rows) == 101
        assert all(len(row) == len(header) for row in rows)
        assert any(line.startswith("# ; bracket = a: q_commutator") for line in block)

    def test_echo_reproduces_config(self, tmp_path):
        config_path = write_config(tmp_path, OSCILLATOR)
        output = tmp_path / "osc.csv"
        main(["run", config_path, "--output", str(output)])
        (block,) = read_blocks(output)
        assert parse_echo(block) == load_run_config(config_path)

    def test_deterministic(self, tmp_path):
        config_path = write_config(tmp_path, OSCILLATOR)
        first, second = tmp_path / "first.csv", tmp_path / "second.csv"
        assert main(["run", config_path, "--output", str(first)]) == EXIT_OK
        assert main(["run", config_path, "--output", str(second)]) == EXIT_OK
        assert first.read_bytes() == second.read_bytes()

    def test_output_directory_override(self, tmp_path, monkeypatch):
        target = tmp_path / "elsewhere"
        monkeypatch.setenv("OUTPUT_DIRECTORY", str(target))
        config_path = write_config(tmp_path, FREE_PARTICLE)
        assert main(["run", config_path]) == EXIT_OK
        assert (target / "free_particle.csv").exists()

    def test_poly_table_reports_mismatch(self, tmp_path):
        output = tmp_path / "poly.csv"
        assert main(["run", write_config(tmp_path, POLY), "--output", str(output)]) == EXIT_OK
        (block,) = read_blocks(output)
        header, rows = table(block)
        assert header[-2:] == ["diff_10", "mismatch_10"]
        column = header.index("mismatch_01")
        assert float(rows[0][column]) == 0.0
        assert float(rows[-1][column]) == pytest.approx(0.7 * 0.5 * (1.5 ** 1.5 - 1.5 ** 0.5), rel=1e-9)

    def test_values_are_seventeen_digits(self, tmp_path):
        output = tmp_path / "fp.csv"
        main(["run", write_config(tmp_path, FREE_PARTICLE), "--output", str(output)])
        (block,) = read_blocks(output)
        _, rows = table(block)
        mantissa = rows[1][0].split("e")[0]
        assert len(mantissa.replace("-", "").replace(".", "")) == 17


class TestExitCodes:

    def test_missing_file(self, tmp_path):
        assert main(["run", str(tmp_path / "absent.ini")]) == EXIT_IO_ERROR

    def test_missing_scenario(self, tmp_path):
        assert main(["run", write_config(tmp_path, "[run]\nengines = all\n")]) == EXIT_CONFIG_ERROR

    def test_unknown_key(self, tmp_path):
        text = OSCILLATOR.replace("fock_size = 6", "fock_size = 6\nspeed = 3")
        assert main(["run", write_config(tmp_path, text)]) == EXIT_CONFIG_ERROR

    def test_lattice_at_classical_point(self, tmp_path):
        text = FREE_PARTICLE.replace("q = 1.5", "q = 1.0")
        assert main(["run", write_config(tmp_path, text), "--output", str(tmp_path / "x.csv")]) == EXIT_CONFIG_ERROR

    def test_tolerance_breach_still_writes(self, tmp_path):
        text = OSCILLATOR.replace("steps = 100", "steps = 5").replace("tolerance = 1e-6", "tolerance = 1e-12")
        output = tmp_path / "breach.csv"
        assert main(["run", write_config(tmp_path, text), "--output", str(output)]) == EXIT_TOLERANCE_BREACH
        assert output.exists()

    def test_poly_with_numeric_engine(self, tmp_path):
        text = POLY.replace("scenario = poly_dynamics", "scenario = poly_dynamics\nengines = ode")
        assert main(["run", write_config(tmp_path, text), "--output", str(tmp_path / "p.csv")]) == EXIT_CONFIG_ERROR

    def test_unwritable_output(self, tmp_path):
        directory = tmp_path / "taken"
        directory.mkdir()
        assert main(["run", write_config(tmp_path, FREE_PARTICLE), "--output", str(directory)]) == EXIT_IO_ERROR


class TestSweep:

    def test_blocks_in_input_order(self, tmp_path):
        output = tmp_path / "sweep.csv"
        code = main(["sweep", write_config(tmp_path, OSCILLATOR), "--q", "0.9,1.0,1.1", "--output", str(output)])
        assert code == EXIT_OK

        blocks = read_blocks(output)
        assert len(blocks) == 3
        for q, block in zip((0.9, 1.0, 1.1), blocks):
            assert parse_echo(block).physics.q == q
            header, rows = table(block)
            column = header.index("q_omega_q")
            assert float(rows[0][column]) == pytest.approx(q * q_frequency_osc(1.0, q), rel=1e-15)
        assert "dev_a_oracle" in table(blocks[1])[0]

    def test_lattice_point_becomes_warning(self, tmp_path):
        output = tmp_path / "sweep.csv"
        code = main(["sweep", write_config(tmp_path, FREE_PARTICLE), "--q", "1.5,1.0,2.0", "--output", str(output)])
        assert code == EXIT_OK
        blocks = read_blocks(output)
        assert len(blocks) == 3
        assert any(line.startswith("# ; warning = skipped q=1.0") for line in blocks[1])
        assert not any(not line.startswith("#") for line in blocks[1])
        assert table(blocks[2])[1]

    @pytest.mark.parametrize("q_list", ["", ",", "0.9,abc"])
    def test_bad_q_list(self, tmp_path, q_list):
        assert main(["sweep", write_config(tmp_path, OSCILLATOR), "--q", q_list]) == EXIT_CONFIG_ERROR

    def test_non_positive_q(self, tmp_path):
        assert main(["sweep", write_config(tmp_path, OSCILLATOR), "--q", "1.1,-0.5"]) == EXIT_CONFIG_ERROR

    def test_parse_q_list(self):
        assert parse_q_list("0.9, 1.0 ,1.1") == [0.9, 1.0, 1.1]
        with pytest.raises(ConfigError):
            parse_q_list(None)


class TestVerify:

    def test_identities_match(self, capsys):
        assert main(["verify-identities"]) == EXIT_OK
        assert "MISMATCH" not in capsys.readouterr().out

    def test_corrupted_rules_fail_identities(self, mocker, capsys):
        mocker.patch("src.qsymb.identities.osc_rules", return_value=corrupted_osc_rules())
        assert main(["verify-identities"]) == EXIT_VERIFY_FAILED
        assert "MISMATCH oscillator_relation" in capsys.readouterr().out

    def test_full_suite_passes(self, capsys):
        assert main(["verify"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "Bracket conventions" in out
        assert "All invariants hold" in out

    def test_corrupted_rules_fail_suite(self, mocker):
        mocker.patch("src.qsymb.identities.osc_rules", return_value=corrupted_osc_rules())
        assert main(["verify"]) == EXIT_VERIFY_FAILED
