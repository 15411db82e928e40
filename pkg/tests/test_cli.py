import io
import json
from dataclasses import replace

import pytest

from bipartite_maps import CommandConfig
from main import build_parser, config_from_args, run_command


def run(config: CommandConfig) -> tuple[int, str]:
    out = io.StringIO()
    status = run_command(config, out)
    return status, out.getvalue()


def test_parser_builds_configs():
    args = build_parser().parse_args(
        ["--format", "latex", "closed-form", "-g", "2", "--target", "L", "--method", "fit"]
    )
    config = config_from_args(args)
    assert (config.subcommand, config.g, config.target, config.method) == ("closed-form", 2, "L", "fit")
    assert config.format == "latex"
    assert config.workers is None
    config.validate()


def test_output_flags_follow_the_subcommand():
    args = build_parser().parse_args(["census", "--n", "3", "--format", "csv"])
    config = config_from_args(args)
    assert (config.n, config.format) == (3, "csv")
    status, text = run(replace(config, workers=1))
    assert status == 0
    assert text.splitlines()[0] == "g,mu,count"
    assert "1,[3],2" in text.splitlines()

    args = build_parser().parse_args(
        ["closed-form", "--g", "1", "--target", "F", "--format", "json"]
    )
    config = config_from_args(args)
    assert (config.g, config.target, config.format) == (1, "F", "json")
    status, text = run(replace(config, workers=1))
    assert status == 0
    doc = json.loads(text)
    assert (doc["g"], doc["target"]) == (1, "F")
    leading = {"alpha": [], "beta": [], "a": 1, "b": 0, "c": 5, "sign": "+"}
    assert {**leading, "coeff_num": 1, "coeff_den": 2} in doc["terms"]


def test_global_format_is_not_reset_by_the_subcommand():
    assert build_parser().parse_args(["--format", "latex", "kernel"]).format == "latex"
    assert build_parser().parse_args(["kernel", "--format", "text"]).format == "text"
    assert build_parser().parse_args(["kernel"]).format == "json"


def test_parser_rejects_unknown_suite():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["verify", "--suite", "everything"])


def test_census_command():
    status, text = run(CommandConfig("census", n=3, workers=1))
    assert status == 0
    rows = json.loads(text)
    assert {"g": 1, "mu": [3], "count": 2} in rows
    assert sum(row["count"] for row in rows if row["g"] == 0) > 0


def test_rooted_census_command():
    status, text = run(CommandConfig("census", n=3, table="rooted", workers=1, format="csv"))
    assert status == 0
    assert text.splitlines()[0] == "g,k,mu,count"


def test_closed_form_command():
    status, text = run(CommandConfig("closed-form", g=1, format="latex", workers=1))
    assert status == 0
    assert text.startswith("F_{1} = ")
    assert "(1-uz)^{5}" in text


def test_kernel_command():
    status, text = run(CommandConfig("kernel", K=3, workers=1))
    assert status == 0
    doc = json.loads(text)
    assert doc["K"] == 3 and doc["factorization"]


@pytest.mark.parametrize(
    "config",
    [
        CommandConfig("closed-form", g=0),
        CommandConfig("closed-form", g=1, target="L", method="fit"),
        CommandConfig("series", N=0),
        CommandConfig("census", workers=0),
    ],
)
def test_invalid_arguments_exit_with_two(config):
    assert run(config) == (2, "")


def test_census_guard_exits_with_two():
    assert run(CommandConfig("census", n=8, workers=1)) == (2, "")


def test_verify_command():
    status, text = run(CommandConfig("verify", suite="greek", workers=1))
    assert status == 0
    reports = json.loads(text)
    assert [report["suite"] for report in reports] == ["greek"]
    assert all(check["passed"] for check in reports[0]["checks"])


def test_output_file_holds_the_json_document(tmp_path):
    path = tmp_path / "results" / "kernel.json"
    status, text = run(CommandConfig("kernel", K=3, workers=1, output=str(path)))
    assert status == 0
    with open(path) as f:
        doc = json.load(f)
    assert doc == json.loads(text)
    assert doc["K"] == 3 and doc["factorization"]
