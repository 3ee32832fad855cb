import numpy as np
import pytest

from pavetwin import errors
from pavetwin.datagen import GenConfig, write_datasets
from pavetwin.pipeline import split_nodes
from pavetwin.sage import TrainConfig, train
from pavetwin.twin import (
    MaintenanceAction,
    TwinConfig,
    apply_action,
    compare,
    fork,
    init_twin,
    run_scenario,
    schedule_action,
    scenario_cost,
    state_to_json,
    step,
)
from pavetwin.workflow import load_dataset

FROZEN = GenConfig(
    n_segments=20,
    n_undirected_edges=25,
    months=4,
    seed=17,
    kappa=0.0,
    noise_sd=0.0,
    alpha_age=0.0,
    beta_traffic=0.0,
    gamma_material={"asphalt": 0.0, "concrete": 0.0, "composite": 0.0},
)


@pytest.fixture(scope="module")
def ds(tmp_path_factory):
    out = tmp_path_factory.mktemp("twin")
    write_datasets(GenConfig(n_segments=20, n_undirected_edges=25, months=4, seed=17), out)
    return load_dataset(out)


@pytest.fixture(scope="module")
def model(ds):
    split = split_nodes(ds.graph.node_count)
    m, _ = train(ds.graph, split, TrainConfig(epochs=10, hidden_dim=4), ds.scaler, ds.encoder)
    return m


def make_twin(ds, dynamics=None, **cfg_kw):
    cfg = TwinConfig(dynamics=dynamics or FROZEN, **cfg_kw)
    return init_twin(ds.graph, ds.segments, ds.distress, cfg)


class TestInitTwin:
    def test_condition_from_latest(self, ds):
        twin = make_twin(ds)
        assert len(twin.condition) == 20
        assert twin.month == 3
        assert np.array_equal(twin.condition, ds.graph.target)

    def test_deterministic(self, ds):
        a, b = make_twin(ds), make_twin(ds)
        assert state_to_json(a) == state_to_json(b)


class TestStep:
    def test_frozen_dynamics_unchanged(self, ds):
        twin = make_twin(ds)
        before = twin.condition.copy()
        alerts = step(twin, 3)
        assert np.array_equal(twin.condition, before)
        assert alerts == []

    def test_threshold_breach_on_crossing(self, ds):
        dyn = GenConfig(
            n_segments=20, n_undirected_edges=25, months=4, seed=17,
            kappa=0.0, noise_sd=0.0, alpha_age=0.0, beta_traffic=0.0,
            gamma_material={"asphalt": 2.0, "concrete": 2.0, "composite": 2.0},
        )
        twin = make_twin(ds, dynamics=dyn, alert_threshold=40.0)
        twin.condition[:] = 41.0
        alerts = step(twin, 1)
        breaches = [a for a in alerts if a.kind == "threshold_breach"]
        assert len(breaches) == 20
        assert all(a.observed == 39.0 for a in breaches)

    def test_no_breach_below_threshold_already(self, ds):
        dyn = GenConfig(
            n_segments=20, n_undirected_edges=25, months=4, seed=17,
            kappa=0.0, noise_sd=0.0, alpha_age=0.0, beta_traffic=0.0,
            gamma_material={"asphalt": 2.0, "concrete": 2.0, "composite": 2.0},
        )
        twin = make_twin(ds, dynamics=dyn, alert_threshold=40.0)
        twin.condition[:] = 30.0
        alerts = step(twin, 1)
        assert [a for a in alerts if a.kind == "threshold_breach"] == []

    def test_rapid_drop(self, ds):
        dyn = GenConfig(
            n_segments=20, n_undirected_edges=25, months=4, seed=17,
            kappa=0.0, noise_sd=0.0, alpha_age=0.0, beta_traffic=0.0,
            gamma_material={"asphalt": 11.0, "concrete": 11.0, "composite": 11.0},
        )
        twin = make_twin(ds, dynamics=dyn)
        twin.condition[:] = 90.0
        alerts = step(twin, 1)
        assert all(a.kind == "rapid_drop" for a in alerts)
        assert len(alerts) == 20

    def test_replay_oracle_24_months(self, ds):
        # Alerts from the twin must match an offline recomputation of the
        # same recurrence with the same rng stream.
        from pavetwin.datagen import step_conditions

        dyn = GenConfig(
            n_segments=20, n_undirected_edges=25, months=4, seed=23,
            kappa=0.2, noise_sd=1.0, alpha_age=0.6, beta_traffic=0.5,
        )
        twin = make_twin(ds, dynamics=dyn, alert_threshold=70.0)
        expect_alert_months = []
        rng = np.random.default_rng([twin.config.seed, 20])
        cond = twin.condition.copy()
        for month in range(1, 25):
            shocks = rng.normal(0.0, dyn.noise_sd, size=len(cond))
            nxt = step_conditions(cond, twin.decay, twin.adj, dyn.kappa, shocks)
            for i in range(len(cond)):
                if cond[i] >= 70.0 > nxt[i]:
                    expect_alert_months.append((twin.graph.segment_ids[i], twin.month + month))
            cond = nxt
        alerts = step(twin, 24)
        got = [(a.segment_id, a.month) for a in alerts if a.kind == "threshold_breach"]
        assert sorted(got) == sorted(expect_alert_months)

    def test_zero_months_rejected(self, ds):
        with pytest.raises(errors.ConfigError):
            step(make_twin(ds), 0)


class TestApplyAction:
    def test_reconstruct_sets_100(self, ds):
        twin = make_twin(ds)
        sid = twin.graph.segment_ids[0]
        twin.condition[0] = 12.0
        apply_action(twin, MaintenanceAction("reconstruct", (sid,)))
        assert twin.condition[0] == 100.0
        assert twin.maintenance_log[-1] == (twin.month, sid, "reconstruct")

    def test_patch_clamped(self, ds):
        twin = make_twin(ds)
        twin.condition[0] = 95.0
        apply_action(twin, MaintenanceAction("patch", (twin.graph.segment_ids[0],)))
        assert twin.condition[0] == 100.0

    def test_resurface(self, ds):
        twin = make_twin(ds)
        twin.condition[0] = 60.0
        apply_action(twin, MaintenanceAction("resurface", (twin.graph.segment_ids[0],)))
        assert twin.condition[0] == 85.0

    def test_unknown_segment(self, ds):
        twin = make_twin(ds)
        with pytest.raises(errors.UnknownSegment):
            apply_action(twin, MaintenanceAction("patch", (9999,)))

    def test_invalid_kind(self, ds):
        twin = make_twin(ds)
        with pytest.raises(errors.ConfigError):
            apply_action(twin, MaintenanceAction("repave", (0,)))


class TestFork:
    def test_isolation(self, ds, model):
        twin = make_twin(ds)
        before = state_to_json(twin)
        f = fork(twin, "f1")
        schedule_action(f, 0, MaintenanceAction("reconstruct", tuple(twin.graph.segment_ids)))
        run_scenario(f, 6, model)
        assert state_to_json(twin) == before

    def test_deterministic_rerun(self, ds, model):
        twin = make_twin(ds)

        def run_once():
            f = fork(twin, "f1", fork_index=3)
            schedule_action(f, 1, MaintenanceAction("patch", (twin.graph.segment_ids[2],)))
            return run_scenario(f, 5, model)

        assert run_once() == run_once()

    def test_reconstruct_all_frozen_constant_100(self, ds, model):
        twin = make_twin(ds)
        f = fork(twin, "f1")
        schedule_action(f, 0, MaintenanceAction("reconstruct", tuple(twin.graph.segment_ids)))
        traj = run_scenario(f, 4, model)
        assert all(row["mean_condition"] == 100.0 for row in traj)

    def test_model_required(self, ds):
        twin = make_twin(ds)
        with pytest.raises(errors.ModelMissing):
            run_scenario(fork(twin, "f1"), 3, None)


class TestCompare:
    def test_identical_forks_identical_rows(self, ds, model):
        twin = make_twin(ds)
        f1, f2 = fork(twin, "a", 1), fork(twin, "b", 1)
        run_scenario(f1, 4, model)
        run_scenario(f2, 4, model)
        table = compare([f1, f2])
        assert table["a"]["mean_condition"] == table["b"]["mean_condition"]

    def test_reconstruct_dominates_do_nothing(self, ds, model):
        dyn = GenConfig(
            n_segments=20, n_undirected_edges=25, months=4, seed=17,
            kappa=0.1, noise_sd=0.0, alpha_age=0.6, beta_traffic=0.5,
        )
        twin = make_twin(ds, dynamics=dyn)
        nothing = fork(twin, "nothing", 1)
        rebuild = fork(twin, "rebuild", 2)
        schedule_action(rebuild, 0, MaintenanceAction("reconstruct", tuple(twin.graph.segment_ids)))
        run_scenario(nothing, 6, model)
        run_scenario(rebuild, 6, model)
        table = compare([nothing, rebuild])
        for a, b in zip(table["rebuild"]["mean_condition"], table["nothing"]["mean_condition"]):
            assert a >= b
        assert table["nothing"]["total_cost"] == 0.0
        assert table["rebuild"]["total_cost"] == 100.0 * 20

    def test_horizon_mismatch(self, ds, model):
        twin = make_twin(ds)
        f1, f2 = fork(twin, "a", 1), fork(twin, "b", 2)
        run_scenario(f1, 3, model)
        run_scenario(f2, 5, model)
        with pytest.raises(errors.HorizonMismatch):
            compare([f1, f2])

    def test_cost_accounting(self, ds, model):
        twin = make_twin(ds)
        f = fork(twin, "a", 1)
        sid = twin.graph.segment_ids[0]
        schedule_action(f, 0, MaintenanceAction("patch", (sid,)))
        schedule_action(f, 2, MaintenanceAction("resurface", (sid, twin.graph.segment_ids[1])))
        assert scenario_cost(f) == 10.0 + 2 * 40.0
