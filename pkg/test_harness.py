"""
Tests for scenario loading, presets, full runs, comparisons and the CLI.
"""

import json
import logging

import pytest

import main as cli
from harness import compare, dump_scenario, load_scenario, parse_scenario, preset, run, write_compare_csv, write_run_outputs
from harness.compare import normalize_protocols
from harness.report import report_to_dict
from traffic import injection_count
from utils.errors import InvariantViolation, ScenarioError, UsageError

MINIMAL = {
    "schema_version": 1,
    "duration_s": 5.0,
    "nodes": [
        {"id": 0, "position": [0.0, 0.0], "radios": [{"channel": 1}]},
        {"id": 1, "position": [100.0, 0.0], "radios": [{"channel": 1}]},
    ],
    "flows": [{"id": 0, "src": 0, "dst": 1, "stop_s": 4.0}],
}


def scenario_text(**changes):
    data = json.loads(json.dumps(MINIMAL))
    data.update(changes)
    return json.dumps(data, indent=2)


def two_node_link(protocol, rate_pps, duration=20.0, start=0.0):
    data = json.loads(scenario_text(protocol=protocol, duration_s=duration))
    data["flows"] = [{"id": 0, "src": 0, "dst": 1, "rate_pps": rate_pps, "start_s": start, "stop_s": duration}]
    return parse_scenario(json.dumps(data))


def test_minimal_file_gets_defaults(tmp_path):
    path = tmp_path / "scenario.json"
    path.write_text(scenario_text())
    scenario = load_scenario(path)
    assert (scenario.mtu_bytes, scenario.header_bytes, scenario.queue_capacity_pkts) == (1500, 28, 50)
    assert scenario.protocol == "aal2r"
    assert scenario.flows[0].pkt_bytes == 512
    assert scenario.aal2r.hold_time_s == 0.0


def test_unknown_protocol_names_the_field():
    with pytest.raises(ScenarioError, match="protocol"):
        parse_scenario(scenario_text(protocol="ospf"))


def test_oversized_packet_is_rejected():
    data = json.loads(scenario_text())
    data["flows"][0]["pkt_bytes"] = 1490
    with pytest.raises(ScenarioError) as excinfo:
        parse_scenario(json.dumps(data))
    assert "1490" in str(excinfo.value) and "1472" in str(excinfo.value)


def test_unknown_field_is_an_error():
    with pytest.raises(ScenarioError, match="mtu"):
        parse_scenario(scenario_text(mtu=1400))


def test_syntax_error_reports_position():
    with pytest.raises(ScenarioError, match=r"bad\.json:3:"):
        parse_scenario('{\n  "duration_s": 5,\n  "nodes": [,]\n}', "bad.json")


def test_missing_file_is_a_scenario_error(tmp_path):
    with pytest.raises(ScenarioError):
        load_scenario(tmp_path / "missing.json")


def test_flow_outside_duration_is_rejected():
    data = json.loads(scenario_text())
    data["flows"][0]["stop_s"] = 6.0
    with pytest.raises(ScenarioError):
        parse_scenario(json.dumps(data))


@pytest.mark.parametrize("a, b, channel", [(0, 8, 1), (0, 1, 3), (4, 4, 1)])
def test_link_event_must_name_a_link(a, b, channel):
    data = json.loads(dump_scenario(preset("grid-9")))
    data["link_events"] = [{"time_s": 2.0, "a": a, "b": b, "channel": channel, "up": False}]
    with pytest.raises(ScenarioError, match=r"link_events\[0\]: no link between"):
        parse_scenario(json.dumps(data))


def test_link_event_on_a_real_link_loads():
    data = json.loads(dump_scenario(preset("grid-9")))
    data["link_events"] = [{"time_s": 2.0, "a": 1, "b": 0, "channel": 2, "up": False}]
    assert parse_scenario(json.dumps(data)).link_events[0].channel == 2


def test_dump_round_trips():
    scenario = preset("grid-9")
    assert parse_scenario(dump_scenario(scenario)) == scenario


def test_line_preset():
    scenario = preset("line-3")
    assert len(scenario.nodes) == 3
    assert {r.channel for n in scenario.nodes for r in n.radios} == {1}
    assert {n.position[1] for n in scenario.nodes} == {0.0}


def test_ten_node_preset():
    scenario = preset("paper-10node")
    assert len(scenario.nodes) == 10
    assert scenario.flows[0].pkt_bytes == 512
    assert scenario.duration_s == 60.0
    assert all(len(n.radios) == 2 for n in scenario.nodes)
    assert scenario.nodes[0].radios[0].channel != scenario.nodes[1].radios[0].channel


def test_unknown_preset():
    with pytest.raises(KeyError):
        preset("ring-12")


def test_with_duration_clips_flows():
    scenario = preset("paper-10node").with_duration(10.0)
    assert scenario.duration_s == 10.0
    assert {f.stop_s for f in scenario.flows} == {10.0}


def test_report_echoes_ten_node_preset():
    report = run(preset("paper-10node").with_duration(2.0))
    body = report_to_dict(report)
    assert body["nodes"] == 10
    assert body["scenario"]["mtu_bytes"] == 1500
    assert body["scenario"]["aal2r"]["queue_priority"] == "oldest_head"
    assert len(body["digest"]) == 64


def test_jitter_keeps_injection_count():
    scenario = preset("paper-10node").with_duration(3.0)
    report = run(scenario)
    assert report.total.sent == sum(injection_count(f) for f in scenario.flow_specs())


def test_same_seed_gives_identical_csv(tmp_path):
    scenario = preset("grid-9").with_duration(5.0)
    first = write_run_outputs(run(scenario), tmp_path / "a")
    second = write_run_outputs(run(scenario), tmp_path / "b")
    for kind in ("summary", "series"):
        assert first[kind].read_bytes() == second[kind].read_bytes()


def test_different_seeds_differ():
    scenario = preset("paper-10node").with_duration(3.0)
    a = run(scenario.with_overrides(seed=1))
    b = run(scenario.with_overrides(seed=2))
    assert a.digest != b.digest


def test_csv_layout(tmp_path):
    report = run(preset("line-3"))
    paths = write_run_outputs(report, tmp_path)
    summary = paths["summary"].read_text().splitlines()
    assert summary[0] == "metric,flow_id,value"
    assert "pdr,all,1.000000" in summary
    assert "dropped_queue,0,0" in summary
    series = paths["series"].read_text().splitlines()
    assert series[0] == "t_bin_start_s,protocol,delivered_bits_per_s,pdr_cumulative"
    assert len(series) == 1 + 10
    assert series[1].startswith("0.000000,aal2r,")
    assert json.loads(paths["report"].read_text())["protocol"] == "aal2r"


@pytest.mark.parametrize("protocol", ["aal2r", "gsr"])
def test_under_capacity_run_delivers_everything(protocol):
    scenario = two_node_link(protocol, rate_pps=300.0, duration=6.0, start=1.0)
    report = run(scenario)
    assert report.pdr["all"] == 1.0
    assert report.loss["all"].count == 0


def test_saturated_link_matches_capacity_oracle():
    rate_bps = 6e6
    capacity_pps = rate_bps / ((512 + 28) * 8)
    report = run(two_node_link("gsr", rate_pps=round(2 * capacity_pps)))
    oracle = rate_bps * 512 / 540
    assert report.throughput.average_bps == pytest.approx(oracle, rel=0.01)
    assert report.total.dropped_queue > 0


def test_saturated_aggregating_link_matches_frame_efficiency():
    report = run(two_node_link("aal2r", rate_pps=round(2 * 6e6 / (540 * 8))))
    stats = report.stats
    oracle = 6e6 * stats.payload_bytes_sent / stats.frame_bytes_sent
    assert report.throughput.average_bps == pytest.approx(oracle, rel=0.01)
    assert stats.mean_packets_per_unit > 1.5


def test_link_failure_reroutes_traffic():
    nodes = [
        {"id": i, "position": [100.0 * (i % 3), 100.0 * (i // 3)], "radios": [{"channel": 1}]}
        for i in range(6)
    ]
    data = {
        "duration_s": 8.0,
        "nodes": nodes,
        "flows": [{"id": 0, "src": 0, "dst": 2, "rate_pps": 100.0, "start_s": 1.0, "stop_s": 7.0}],
        "link_events": [{"time_s": 3.0, "a": 1, "b": 2, "channel": 1, "up": False}],
    }
    report = run(parse_scenario(json.dumps(data)))
    assert report.total.received > 0.95 * report.total.sent
    assert all(b > 0 for b in report.series.delivered_bytes[4:7])


def test_compare_rejects_empty_protocol_list():
    with pytest.raises(UsageError):
        normalize_protocols([])
    with pytest.raises(UsageError):
        normalize_protocols(["ospf"])


def test_compare_dedupes_with_warning(caplog):
    with caplog.at_level(logging.WARNING):
        assert normalize_protocols(["gsr", "GSR", "aal2r"]) == ["gsr", "aal2r"]
    assert "Duplicate" in caplog.text


def test_compare_pairs_and_csv(tmp_path):
    result = compare(preset("line-3").with_duration(4.0), ["gsr", "aal2r", "gsr"], seeds=2)
    assert result.seeds == [1, 2]
    assert len(result.rows) == 4
    assert [seed for seed, _, _ in result.pairs("aal2r", "gsr")] == [1, 2]
    path = write_compare_csv(result, tmp_path)
    lines = path.read_text().splitlines()
    assert lines[0] == "seed,protocol,pdr,throughput_bps,loss_count,control_bytes"
    assert len(lines) == 5


RUN_BUDGET_S = 2.0


@pytest.fixture(scope="module")
def ten_node_comparison():
    return compare(preset("paper-10node"), ["gsr", "aal2r"], seeds=10)


def test_aggregation_beats_forwarding_on_congested_preset(ten_node_comparison):
    """Test: AAL2R delivers at least as much as GSR on nearly every seed"""
    result = ten_node_comparison
    ordering = result.ordering()
    assert ordering["pdr"] >= 0.9
    assert ordering["throughput_bps"] >= 0.9
    assert result.mean_pdr("aal2r") >= result.mean_pdr("gsr")
    assert result.mean_throughput("aal2r") >= result.mean_throughput("gsr")


def test_congested_preset_aggregates(ten_node_comparison):
    """Test: both protocols lose packets and AAL2R sends multi-packet units"""
    for row in ten_node_comparison.rows_for("aal2r"):
        assert row.loss_count > 0
        assert row.packets_per_unit > 1.5
    for row in ten_node_comparison.rows_for("gsr"):
        assert row.loss_count > 0
        assert row.packets_per_unit == 1.0


def test_ten_node_runs_fit_time_budget(ten_node_comparison):
    slowest = max(ten_node_comparison.rows, key=lambda row: row.runtime_s)
    assert slowest.runtime_s < RUN_BUDGET_S, f"{slowest.protocol} seed {slowest.seed} took {slowest.runtime_s:.2f}s"


def test_cli_preset_then_run(tmp_path, capsys):
    scenario_path = tmp_path / "line.json"
    assert cli.main(["preset", "line-3", "--emit", str(scenario_path)]) == 0
    assert load_scenario(scenario_path) == preset("line-3")
    out = tmp_path / "out"
    code = cli.main(["run", "--scenario", str(scenario_path), "--protocol", "gsr", "--seed", "3", "--out", str(out)])
    assert code == 0
    assert (out / "summary.csv").exists() and (out / "series.csv").exists()
    assert "protocol: gsr" in capsys.readouterr().out


def test_cli_usage_errors():
    assert cli.main(["launch"]) == 1
    assert cli.main(["preset", "ring-12"]) == 1
    assert cli.main(["compare", "--scenario", "line-3", "--protocols", ","]) == 1


def test_cli_validation_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(scenario_text(protocol="ospf"))
    assert cli.main(["run", "--scenario", str(bad), "--out", str(tmp_path)]) == 2


def test_cli_invariant_failure(monkeypatch, tmp_path):
    def broken(scenario):
        raise InvariantViolation("sent != received + dropped")

    monkeypatch.setattr(cli, "run", broken)
    assert cli.main(["run", "--scenario", "line-3", "--out", str(tmp_path)]) == 3


def test_cli_version(capsys):
    with pytest.raises(SystemExit) as excinfo:
        cli.main(["--version"])
    assert excinfo.value.code == 0
    assert "meshsim" in capsys.readouterr().out


def test_lossy_links_are_accounted():
    scenario = two_node_link("aal2r", rate_pps=200.0, duration=5.0, start=1.0)
    scenario = scenario.with_overrides(medium={"link_loss_prob": 0.2})
    report = run(scenario)
    total = report.total
    assert total.dropped_linkloss > 0
    assert total.sent == total.received + total.dropped + total.in_flight
    assert report.stats.frames_lost > 0
