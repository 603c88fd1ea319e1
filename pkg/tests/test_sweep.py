import json
import math
import re
from pathlib import Path

import pytest

from mzqfi.conf import Conf
from mzqfi.detection import Scheme
from mzqfi.exceptions import ConfigError, PlotError
from mzqfi.states import StateKind, StateSpec
from mzqfi.sweep import (
    BgcsParametrization,
    LinearGrid,
    Splitters,
    SweepConfig,
    SweepTable,
    default_columns,
    read_table,
    render_plot,
    round_value,
    run_oracle_check,
    run_qfi_sweep,
    run_ratio_sweep,
    run_sensitivity_curve,
    summarize,
    theta_values,
    transmission_values,
    write_table,
)

CONFIGS = Path(__file__).resolve().parent.parent / "configs"

PCS = {"kind": "perelomov", "a": 1, "v": 1.0, "name": "pcs"}
BGCS = {"kind": "barut_girardello", "a": 1, "v": 1.0, "name": "bgcs"}


def _config(**fields):
    document = {"states": [PCS]}
    document.update(fields)
    return SweepConfig.from_dict(document)


# ---------------------------------------------------------------- configuration

def test_minimal_config_defaults():
    config = SweepConfig.from_dict({"states": [{"kind": "perelomov", "a": 1, "v": 1.0}]})
    assert config.states[0].name == "pcs(a=1,v=1)"
    assert config.splitters == Splitters()
    assert config.homodyne_splitters == Splitters(1.0, 0.0)
    assert config.transmission_grid == LinearGrid(0.0, 1.0, 101)
    assert config.theta_grid == LinearGrid(0.01, 0.99, 99)
    assert config.homodyne_theta_grid == LinearGrid(-0.45, 0.45, 91)
    assert config.schemes == list(Scheme)
    assert not config.oracle
    assert config.cutoff is None


def test_bgcs_parametrizations():
    config = SweepConfig.from_dict({
        "states": [
            BGCS,
            {"kind": "barut_girardello", "a": 1, "xi": 1.0, "parametrization": "direct_xi", "name": "direct"},
        ],
    })
    assert config.states[0].spec == StateSpec.barut_girardello_from_v(1, 1.0)
    assert config.states[0].spec.xi_mag == pytest.approx(math.tanh(0.5))
    assert config.states[1].spec.xi_mag == 1.0

    direct = SweepConfig.from_dict({
        "states": [{"kind": "barut_girardello", "a": 1, "xi": 0.4}],
        "bgcs_parametrization": BgcsParametrization.DIRECT_XI.value,
    })
    assert direct.states[0].spec.kind is StateKind.BARUT_GIRARDELLO
    assert direct.states[0].spec.xi_mag == 0.4


@pytest.mark.parametrize("document,path", [
    ({"states": [PCS], "colour": "red"}, "colour"),
    ({"states": []}, "states"),
    ({"states": [{"kind": "squeezed"}]}, "states[0].kind"),
    ({"states": [{"kind": "perelomov", "v": 1.0, "spin": 2}]}, "states[0].spin"),
    ({"states": [{"kind": "perelomov", "a": 0.7, "v": 1.0}]}, "states[0]"),
    ({"states": [{"kind": "perelomov", "v": 25.0}]}, "states[0]"),
    ({"states": [{"kind": "barut_girardello", "xi": 1.0}]}, "states[0]"),
    ({"states": [PCS, PCS]}, "states"),
    ({"states": [PCS], "schemes": ["single_mode", "photon_counting"]}, "schemes[1]"),
    ({"states": [PCS], "theta_grid": {"count": 1}}, "theta_grid.count"),
    ({"states": [PCS], "homodyne_theta_grid": {"start_pi": 0.4, "stop_pi": -0.4}}, "homodyne_theta_grid"),
    ({"states": [PCS], "transmission_grid": {"start": 0.5, "stop": 0.2}}, "transmission_grid"),
    ({"states": [PCS], "splitters": {"t1": 1.2}}, "splitters.t1"),
    ({"states": [PCS], "tolerances": {"tail": 1e-9}}, "tolerances.tail"),
    ({"states": [PCS], "tolerances": {"series_max_terms": 10.5}}, "tolerances.series_max_terms"),
    ({"states": [PCS], "cutoff": 0}, "cutoff"),
    ({"states": [PCS], "output": {"csv": 3}}, "output.csv"),
    ({"states": [PCS], "oracle_grid": {"transmissions": [1.5]}}, "oracle_grid.transmissions[0]"),
])
def test_invalid_config_names_the_field(document, path):
    with pytest.raises(ConfigError) as e:
        SweepConfig.from_dict(document)
    assert e.value.path == path


def test_config_must_be_an_object():
    with pytest.raises(ConfigError):
        SweepConfig.from_dict([PCS])


def test_tolerance_overrides_apply_while_parsing():
    config = SweepConfig.from_dict({
        "states": [{"kind": "perelomov", "v": 25.0}],
        "tolerances": {"v_max": 30, "series_max_terms": 600},
    })
    assert config.tolerances == {"v_max": 30.0, "series_max_terms": 600}
    assert Conf().tolerance("v_max") == 20.0


def test_config_from_file(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"states": [PCS], "output": {"csv": "out/a.csv"}}))
    config = SweepConfig.from_file(path)
    assert str(config.output.csv) == "out/a.csv"
    assert config.output.svg is None

    with pytest.raises(ConfigError):
        SweepConfig.from_file(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{\"states\": [")
    with pytest.raises(ConfigError):
        SweepConfig.from_file(broken)


def test_config_file_with_exponent_numbers(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"states": [PCS], "tolerances": {"tail_tolerance": 1e-12, "sensitivity_oracle_rel": 1e-15}}))
    assert "1e-12" in path.read_text()
    config = SweepConfig.from_file(path)
    assert config.tolerances == {"tail_tolerance": 1e-12, "sensitivity_oracle_rel": 1e-15}


def test_shipped_configs_load():
    for name in ("qfi_transmission", "sensitivity_v1", "sensitivity_v05", "ratio_theta", "oracle_check"):
        config = SweepConfig.from_file(CONFIGS / f"{name}.json")
        assert config.states


@pytest.mark.parametrize("name", ["qfi_transmission", "sensitivity_v1", "sensitivity_v05"])
def test_shipped_curves_pair_pcs_with_bgcs(name):
    config = SweepConfig.from_file(CONFIGS / f"{name}.json")
    kinds = [state.spec.kind for state in config.states]
    assert kinds == [StateKind.PERELOMOV, StateKind.BARUT_GIRARDELLO]
    assert config.states[1].spec == StateSpec.barut_girardello_from_v(1, 1.0)
    assert "tanh_half_v" in config.states[1].name


@pytest.mark.parametrize("name", ["sensitivity_v1", "sensitivity_v05"])
def test_shipped_homodyne_grid_holds_the_working_point(name):
    config = SweepConfig.from_file(CONFIGS / f"{name}.json")
    values = theta_values(config.homodyne_theta_grid, homodyne=True)
    assert 0.0 in values
    assert values[0] == pytest.approx(-0.45 * math.pi)
    assert values[-1] == pytest.approx(0.45 * math.pi)


# ---------------------------------------------------------------- grids and tables

def test_transmission_values():
    values = transmission_values(LinearGrid(0.0, 1.0, 11))
    assert values[0] == 0.0
    assert values[-1] == 1.0
    assert values[5] == pytest.approx(0.5)


def test_theta_values_avoid_singular_points():
    offset = Conf().tolerance("theta_offset")
    values = theta_values(LinearGrid(0.0, 1.0, 5))
    assert values[0] == pytest.approx(offset)
    assert values[1] == pytest.approx(math.pi / 4)
    assert values[2] == math.pi / 2
    assert values[4] == pytest.approx(math.pi + offset)

    homodyne = theta_values(LinearGrid(-0.5, 0.5, 5), homodyne=True)
    assert homodyne[0] == pytest.approx(-math.pi / 2 + offset)
    assert homodyne[2] == 0.0
    assert homodyne[4] == pytest.approx(math.pi / 2 + offset)


def test_table_rows_are_rounded():
    table = SweepTable(["theta", "h_a", "status"])
    table.add_row({"theta": 1.0 / 3.0, "h_a": math.inf})
    assert table.rows[0] == {"theta": 0.333333333333, "h_a": None, "status": ""}
    with pytest.raises(KeyError):
        table.add_row({"h_b": 1.0})
    with pytest.raises(KeyError):
        table.column("h_b")
    assert round_value(float("nan")) is None


def test_table_survives_a_round_trip(tmp_path):
    table = SweepTable(["theta", "delta_dif", "status"])
    table.add_row({"theta": 0.1, "delta_dif": math.pi, "status": ""})
    table.add_row({"theta": 0.2, "delta_dif": None, "status": "divergent:delta_dif"})
    path = write_table(table, tmp_path / "nested" / "t.csv")

    assert path.read_bytes().splitlines()[0] == b"theta,delta_dif,status"
    assert b"\r" not in path.read_bytes()
    assert read_table(path) == table


def test_read_table_rejects_garbage(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("theta,h_a\n0.1,abc\n")
    with pytest.raises(ValueError):
        read_table(path)


# ---------------------------------------------------------------- runs

def test_qfi_sweep_columns_and_values():
    table = run_qfi_sweep(_config(transmission_grid={"count": 5}))
    assert table.columns == ["alpha_sq", "h_a", "h_b", "h_c", "status"]
    assert len(table.rows) == 5
    assert table.column("h_a")[0] == 0.0
    assert table.column("h_a")[2] == pytest.approx(math.cosh(1.0) - 1.0)
    assert table.column("h_b")[-1] == pytest.approx(2.0 * math.sinh(1.0) ** 2, rel=1e-11)
    assert all(status == "" for status in table.column("status"))


def test_qfi_sweep_with_oracle_columns():
    config = _config(states=[PCS, BGCS], transmission_grid={"count": 3}, oracle=True)
    table = run_qfi_sweep(config)
    assert "h_b_oracle_bgcs" in table.columns
    for suffix in ("_pcs", "_bgcs"):
        for s in ("a", "b", "c"):
            for closed, oracle in zip(table.column(f"h_{s}{suffix}"), table.column(f"h_{s}_oracle{suffix}")):
                assert oracle == pytest.approx(closed, rel=1e-8, abs=1e-12)


def _rows_by_theta(table):
    return {row["theta"]: row for row in table.rows}


def test_sensitivity_curve():
    config = _config(
        theta_grid={"start_pi": 0.25, "stop_pi": 0.75, "count": 3},
        homodyne_theta_grid={"start_pi": -0.25, "stop_pi": 0.25, "count": 3},
    )
    table = run_sensitivity_curve(config)
    assert table.columns == [
        "theta", "delta_dif", "delta_sing", "delta_hom_b", "delta_hom_c",
        "qcrb_a", "qcrb_b", "qcrb_c", "snl", "status",
    ]
    rows = _rows_by_theta(table)
    quarter, half = round_value(math.pi / 4), round_value(math.pi / 2)
    assert table.column("theta") == sorted(table.column("theta"))
    assert len(table.rows) == 5

    n = math.cosh(1.0) - 1.0
    middle = rows[half]
    assert middle["delta_dif"] == pytest.approx(1.0 / math.sqrt(n), rel=1e-9)
    assert middle["delta_hom_b"] is None
    assert middle["qcrb_a"] == pytest.approx(1.0 / math.sqrt(n), rel=1e-11)
    assert middle["qcrb_b"] == pytest.approx(1.0 / math.sqrt(2.0) / math.sinh(1.0), rel=1e-11)
    assert middle["snl"] == pytest.approx(1.0 / math.sqrt(n), rel=1e-11)

    assert rows[0.0]["delta_hom_b"] == pytest.approx(0.6156256742, rel=1e-6)
    assert rows[0.0]["delta_dif"] is None
    assert all(rows[quarter][f"delta_{scheme}"] is not None for scheme in ("dif", "sing", "hom_b", "hom_c"))
    assert all(status == "" for status in table.column("status"))


def test_sensitivity_curve_without_homodyne_schemes_uses_one_grid():
    config = _config(theta_grid={"start_pi": 0.1, "stop_pi": 0.9, "count": 5}, schemes=["single_mode"])
    table = run_sensitivity_curve(config)
    assert len(table.rows) == 5
    assert all(value is not None for value in table.column("delta_sing"))


def test_sensitivity_curve_flags_degenerate_points():
    config = _config(
        theta_grid={"start_pi": 0.25, "stop_pi": 0.75, "count": 3},
        homodyne_theta_grid={"start_pi": -0.25, "stop_pi": 0.25, "count": 3},
        homodyne_splitters="balanced",
        schemes=["homodyne_c", "single_mode"],
    )
    table = run_sensitivity_curve(config)
    rows = _rows_by_theta(table)
    assert all(value is None for value in table.column("delta_hom_c"))
    for theta in (-math.pi / 4, 0.0, math.pi / 4):
        assert "degenerate:delta_hom_c" in rows[round_value(theta)]["status"]
    for theta in (math.pi / 4, math.pi / 2, 3 * math.pi / 4):
        assert rows[round_value(theta)]["delta_sing"] is not None
    assert rows[round_value(math.pi / 2)]["status"] == ""


def test_sensitivity_curve_with_oracle():
    config = _config(
        theta_grid={"start_pi": 0.3, "stop_pi": 0.6, "count": 2},
        homodyne_theta_grid={"start_pi": -0.1, "stop_pi": 0.1, "count": 2},
        schemes=["intensity_difference", "homodyne_c"],
        oracle=True,
    )
    table = run_sensitivity_curve(config)
    for scheme in ("dif", "hom_c"):
        pairs = [
            (closed, oracle)
            for closed, oracle in zip(table.column(f"delta_{scheme}"), table.column(f"delta_{scheme}_oracle"))
            if closed is not None
        ]
        assert len(pairs) == 2
        for closed, oracle in pairs:
            assert oracle == pytest.approx(closed, rel=1e-5)


def test_sensitivity_csv_is_reproducible(tmp_path):
    config = _config(theta_grid={"start_pi": 0.1, "stop_pi": 0.9, "count": 9})
    first = write_table(run_sensitivity_curve(config), tmp_path / "a.csv").read_bytes()
    second = write_table(run_sensitivity_curve(config), tmp_path / "b.csv").read_bytes()
    assert first == second


def test_ratio_sweep():
    config = _config(
        states=[PCS, BGCS],
        splitters="balanced",
        theta_grid={"start_pi": 0.1, "stop_pi": 0.9, "count": 9},
        schemes=["intensity_difference", "single_mode"],
    )
    table = run_ratio_sweep(config)
    assert table.columns == ["theta", "ratio_dif", "ratio_sing", "status"]
    assert all(0.0 < r < 1.0 for r in table.column("ratio_dif") + table.column("ratio_sing"))
    assert table.rows[4]["ratio_dif"] == pytest.approx(0.436, abs=1e-3)


def test_ratio_of_identical_states_is_one():
    twin = dict(PCS, name="twin")
    table = run_ratio_sweep(_config(states=[PCS, twin], schemes=["single_mode"], theta_grid={"count": 4}))
    assert all(r == pytest.approx(1.0) for r in table.column("ratio_sing"))


def test_ratio_sweep_needs_two_states():
    with pytest.raises(ConfigError, match="exactly two states") as e:
        run_ratio_sweep(_config())
    assert e.value.path == "states"


def _oracle_config(**fields):
    document = {
        "states": [PCS, {"kind": "vacuum", "name": "vacuum"}],
        "oracle_grid": {"transmissions": [0.5], "thetas_pi": [0.3]},
    }
    document.update(fields)
    return SweepConfig.from_dict(document)


def test_oracle_check_passes():
    report = run_oracle_check(_oracle_config())
    statuses = {(row["quantity"], row["state"]): row["status"] for row in report.table.rows}
    assert report.passed
    assert not report.failures
    assert statuses[("h_a", "pcs")] == "pass"
    assert statuses[("delta_hom_c", "pcs")] == "pass"
    assert statuses[("h_b", "vacuum")] == "trivial"
    assert statuses[("h_c_gap", "pcs")] == "reported"

    worst = dict(summarize(report))
    assert [q for q, _ in summarize(report)] == sorted(worst)
    assert worst["h_b"] <= Conf().tolerance("qfi_oracle_rel")


def test_oracle_check_reports_failures():
    report = run_oracle_check(_oracle_config(tolerances={"sensitivity_oracle_rel": 1e-15}))
    assert not report.passed
    assert {row["quantity"] for row in report.failures} <= {"delta_dif", "delta_sing", "delta_hom_b", "delta_hom_c"}


def test_oracle_check_marks_divergent_points():
    config = _oracle_config(
        states=[PCS], schemes=["homodyne_b"], oracle_grid={"transmissions": [0.5], "thetas_pi": [0.5]},
    )
    report = run_oracle_check(config)
    row = [r for r in report.table.rows if r["quantity"] == "delta_hom_b"][0]
    assert row["status"] == "divergent"
    assert report.passed


def test_oracle_check_skips_states_beyond_the_cutoff_cap():
    wide = {"kind": "perelomov", "a": 1, "v": 9.0, "name": "wide"}
    config = _oracle_config(states=[wide, PCS], schemes=["homodyne_b", "intensity_difference"])
    report = run_oracle_check(config)
    statuses = {(row["quantity"], row["state"]): row["status"] for row in report.table.rows}
    assert statuses[("qfim", "wide")] == "skipped"
    assert statuses[("delta_hom_b", "wide")] == "skipped"
    assert statuses[("delta_hom_b", "pcs")] == "pass"
    assert report.passed


# ---------------------------------------------------------------- plots

@pytest.fixture
def curve_csv(tmp_path):
    config = _config(theta_grid={"start_pi": 0.1, "stop_pi": 0.9, "count": 9})
    return write_table(run_sensitivity_curve(config), tmp_path / "curve.csv")


def test_plot_draws_one_curve_per_quantity(curve_csv, tmp_path):
    out = render_plot(curve_csv, tmp_path / "curve.svg", log_y=True)
    svg = out.read_text(encoding="utf-8")
    expected = default_columns(read_table(curve_csv).columns, "theta")
    assert len(expected) == 7
    assert set(re.findall(r'id="curve-([^"]+)"', svg)) == set(expected)


def test_plot_is_reproducible(curve_csv, tmp_path):
    first = render_plot(curve_csv, tmp_path / "a.svg").read_bytes()
    second = render_plot(curve_csv, tmp_path / "b.svg").read_bytes()
    assert first == second


def test_plot_selected_columns(curve_csv, tmp_path):
    out = render_plot(curve_csv, tmp_path / "sel.svg", columns=["delta_dif", "snl"], title="dif")
    assert set(re.findall(r'id="curve-([^"]+)"', out.read_text(encoding="utf-8"))) == {"delta_dif", "snl"}


def test_plot_errors_write_nothing(curve_csv, tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("theta,delta_dif,status\n")
    out = tmp_path / "never.svg"
    with pytest.raises(PlotError):
        render_plot(empty, out)
    with pytest.raises(PlotError):
        render_plot(curve_csv, out, columns=["delta_nothing"])
    with pytest.raises(PlotError):
        render_plot(curve_csv, out, columns=["status"])
    with pytest.raises(PlotError):
        render_plot(tmp_path / "missing.csv", out)
    assert not out.exists()
