"""Command-line runs: argument handling, exit codes, output files."""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

from secrecy_regions.config import Settings
from secrecy_regions.main import main
from secrecy_regions.schemas.channel import SweepSpec
from secrecy_regions.schemas.region import Region2D
from secrecy_regions.schemas.run import RunConfig
from secrecy_regions.services.gaussian_region import region_partial
from secrecy_regions.services.output import parse_output, render
from secrecy_regions.services.polytope import region_contains
from secrecy_regions.services.runner import fig3_preset


def test_fixed_channel_commands_take_no_mode_or_channel():
    RunConfig(command="fig3")
    with pytest.raises(ValueError):
        RunConfig(command="fig4", mode="partial")
    with pytest.raises(ValueError):
        RunConfig(command="fig3", channel=Path("ch.json"))


@pytest.mark.parametrize(
    "command,mode",
    [("region", "relay"), ("sum-rate", "mac-wt"), ("sum-rate", "regular"), ("dm-region", "mac-wt"), ("reduce", "full")],
)
def test_meaningless_pairs_rejected(command, mode):
    with pytest.raises(ValueError):
        RunConfig(command=command, mode=mode, channel=Path("ch.json"))


def test_channel_and_mode_required():
    with pytest.raises(ValueError):
        RunConfig(command="region", mode="partial")
    with pytest.raises(ValueError):
        RunConfig(command="region", channel=Path("ch.json"))


def test_monte_carlo_only_for_reduce():
    RunConfig(command="reduce", mode="miso", channel=Path("ch.json"), validate_mc=True)
    with pytest.raises(ValueError):
        RunConfig(command="region", mode="partial", channel=Path("ch.json"), validate_mc=True)


def test_label_names_the_evaluated_region():
    config = RunConfig(command="region", mode="full", channel=Path("ch.json"))
    assert "full decode-and-forward" in config.label


def test_threads_from_environment(monkeypatch):
    monkeypatch.setenv("SECRECY_REGIONS_THREADS", "3")
    assert Settings().worker_count == 3
    monkeypatch.setenv("SECRECY_REGIONS_THREADS", "0")
    assert Settings().worker_count >= 1


def test_region_output_matches_library(channel_file, fig_channel, tmp_path):
    path = channel_file(h12=0.6, h21=0.6)
    out = tmp_path / "region.csv"
    assert main(["region", "--mode", "partial", "--channel", path, "--steps", "6", "--out", str(out)]) == 0
    metadata, region = parse_output(out.read_text(encoding="utf-8"), "csv")
    expected = region_partial(fig_channel.with_cooperation(0.6), SweepSpec(steps_per_fraction=6))
    assert isinstance(region, Region2D)
    assert np.allclose(region.vertices(), expected.vertices(), atol=1e-10)
    assert metadata["command"] == "region"
    assert metadata["mode"] == "partial"
    assert metadata["steps"] == "6"
    assert json.loads(metadata["channel"])["h12"] == 0.6


def test_output_is_byte_deterministic(channel_file, tmp_path):
    path = channel_file(h12=1.0, h21=1.0)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        args = ["region", "--mode", "full", "--channel", path, "--steps", "5", "--format", "json", "--out", str(out)]
        assert main(args) == 0
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_rendered_files_parse_back(channel_file, tmp_path, fmt):
    out = tmp_path / f"region.{fmt}"
    path = channel_file(h12=0.55, h21=0.55)
    assert main(["region", "--mode", "mac-wt", "--channel", path, "--steps", "5", "--format", fmt, "--out", str(out)]) == 0
    text = out.read_text(encoding="utf-8")
    metadata, payload = parse_output(text, fmt)
    assert render(payload, metadata, fmt) == text
    for v in payload.vertices().ravel():
        assert float(format(v, ".12g")) == v


def test_json_numbers_carry_twelve_significant_digits(channel_file, tmp_path):
    out = tmp_path / "region.json"
    path = channel_file(h12=0.6, h21=0.6)
    assert main(["region", "--mode", "partial", "--channel", path, "--steps", "4", "--format", "json", "--out", str(out)]) == 0
    doc = json.loads(out.read_text(encoding="utf-8"))
    for r1, r2 in doc["hull"]:
        for v in (r1, r2):
            digits = repr(v).split("e")[0].replace("-", "").replace(".", "").strip("0")
            assert len(digits) <= 12


def test_grid_read_from_channel_file(channel_file, tmp_path):
    out = tmp_path / "region.csv"
    path = channel_file(h12=0.6, h21=0.6, steps=3, angles=5)
    assert main(["region", "--mode", "partial", "--channel", path, "--out", str(out)]) == 0
    metadata, _ = parse_output(out.read_text(encoding="utf-8"), "csv")
    assert metadata["steps"] == "3"
    assert metadata["angles"] == "5"
    assert "steps" not in json.loads(metadata["channel"])


def test_grid_flags_override_channel_file(channel_file, tmp_path):
    out = tmp_path / "region.csv"
    path = channel_file(steps=3, angles=5)
    assert main(["region", "--mode", "mac-wt", "--channel", path, "--steps", "4", "--out", str(out)]) == 0
    metadata, _ = parse_output(out.read_text(encoding="utf-8"), "csv")
    assert metadata["steps"] == "4"
    assert metadata["angles"] == "5"


def test_grid_falls_back_to_settings(channel_file, tmp_path, monkeypatch):
    from secrecy_regions.config import settings

    monkeypatch.setattr(settings, "default_steps", 3)
    out = tmp_path / "sum.csv"
    assert main(["sum-rate", "--mode", "partial", "--channel", channel_file(), "--out", str(out)]) == 0
    metadata, _ = parse_output(out.read_text(encoding="utf-8"), "csv")
    assert metadata["steps"] == "3"


@pytest.mark.parametrize("doc", [{"h_1": 0.6}, {"steps": 1}, {"angles": "many"}])
def test_bad_channel_file_keys_exit_2(channel_file, doc):
    assert main(["region", "--mode", "partial", "--channel", channel_file(**doc)]) == 2


def test_seed_only_where_it_is_used(channel_file):
    for command, mode in (("region", "partial"), ("sum-rate", "full")):
        with pytest.raises(SystemExit) as exc:
            main([command, "--mode", mode, "--channel", channel_file(), "--seed", "3"])
        assert exc.value.code == 2
    assert main(["reduce", "--mode", "relay", "--rho", "0", "--channel", channel_file(), "--seed", "3"]) == 0


def test_sum_rate_with_zero_gains_prints_zero(channel_file, capsys):
    path = channel_file(h1=0.0, h2=0.0, g1=0.0, g2=0.0)
    assert main(["sum-rate", "--mode", "partial", "--channel", path, "--steps", "3"]) == 0
    assert capsys.readouterr().out.strip() == "0.0"


def test_sum_rate_file_lists_the_split(channel_file, tmp_path):
    out = tmp_path / "sum.csv"
    path = channel_file(h12=1.0, h21=1.0)
    assert main(["sum-rate", "--mode", "full", "--channel", path, "--steps", "4", "--out", str(out)]) == 0
    _, values = parse_output(out.read_text(encoding="utf-8"), "csv")
    assert list(values) == ["sum_rate", "pu1", "p12", "p10", "pu2", "p21", "p20"]
    assert values["p10"] == 0.0 and values["p20"] == 0.0


def test_relay_reduction_on_stdout(channel_file, capsys):
    path = channel_file(h1=1.0, h2=1.0, g1=0.0, g2=0.0, h12=1.0)
    assert main(["reduce", "--mode", "relay", "--rho", "0", "--channel", path]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(0.5)


def test_rho_read_from_channel_file(channel_file, capsys):
    path = channel_file(g1=0.3, g2=0.1, h12=1.0, rho=1.0)
    assert main(["reduce", "--mode", "relay", "--channel", path]) == 0
    assert float(capsys.readouterr().out) == 0.0


def test_dm_region_from_channel_file(noiseless_mac, tmp_path):
    channel = tmp_path / "dm.json"
    doc = {"sizes": noiseless_mac.sizes, "transition": noiseless_mac.transition.reshape(-1).tolist()}
    channel.write_text(json.dumps(doc), encoding="utf-8")
    out = tmp_path / "dm.csv"
    args = [
        "dm-region", "--mode", "partial", "--channel", str(channel), "--sampler", "grid",
        "--samples", "50", "--aux-sizes", "1x1x1", "--out", str(out),
    ]
    assert main(args) == 0
    metadata, region = parse_output(out.read_text(encoding="utf-8"), "csv")
    assert region_contains(region, (1.0, 1.0), tol=1e-9)
    assert metadata["aux_sizes"] == "1x1x1"
    assert metadata["sampler"] == "grid"


def test_bad_mode_exits_2(channel_file):
    assert main(["sum-rate", "--mode", "mac-wt", "--channel", channel_file()]) == 2


def test_invalid_channel_exits_2(channel_file, capsys):
    assert main(["region", "--mode", "partial", "--channel", channel_file(h1=-1.0), "--steps", "3"]) == 2
    assert "h1" in capsys.readouterr().err


def test_oversized_discrete_alphabet_exits_2(make_channel, tmp_path):
    ch = make_channel(y=5)
    channel = tmp_path / "big.json"
    channel.write_text(json.dumps({"sizes": ch.sizes, "transition": ch.transition.reshape(-1).tolist()}))
    assert main(["dm-region", "--mode", "partial", "--channel", str(channel), "--samples", "2"]) == 2


def test_missing_channel_file_exits_3(tmp_path):
    assert main(["region", "--mode", "partial", "--channel", str(tmp_path / "absent.json")]) == 3


def test_fig4_writes_six_files(tmp_path):
    assert main(["fig4", "--steps", "4", "--out", str(tmp_path)]) == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == sorted(f"fig4_{kind}_h{h}.csv" for kind in ("partial", "full") for h in ("0.2", "0.55", "1"))
    metadata, _ = parse_output((tmp_path / "fig4_full_h1.csv").read_text(encoding="utf-8"), "csv")
    assert json.loads(metadata["channel"])["h21"] == 1.0


def test_fig3_preset_secrecy_inside_regular(tmp_path):
    written = fig3_preset(tmp_path, SweepSpec(steps_per_fraction=4, angles=11), "json")
    assert len(written) == 6
    for h in ("0", "0.6", "1"):
        _, regular = parse_output((tmp_path / f"fig3_regular_h{h}.json").read_text(encoding="utf-8"), "json")
        _, secrecy = parse_output((tmp_path / f"fig3_secrecy_h{h}.json").read_text(encoding="utf-8"), "json")
        for v in secrecy.hull:
            assert region_contains(regular, v, tol=1e-9)
