# Copyright 2026 The fibcompile Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import os
import subprocess

import pytest

CLI = os.environ.get("FIBCOMPILE_CLI", "fibcompile")


def run(*args, env=None, check=True):
    proc = subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, env=env)
    if check and proc.returncode != 0:
        raise AssertionError(f"exit {proc.returncode}: {proc.stderr}")
    return proc


def run_json(*args, **kw):
    return json.loads(run(*args, **kw).stdout)


@pytest.fixture
def cache_env(tmp_path):
    env = dict(os.environ)
    env["FIBCOMPILE_CACHE_DIR"] = str(tmp_path / "cache")
    return env


def test_search_ix():
    out = run_json("search", "--target", "ix", "--lmax", 16)
    assert out["target"] == "ix"
    assert out["l_max"] == 16
    best = out["results"][0]
    assert best["length"] == 14
    assert best["distance"] == pytest.approx(0.191007794186624, abs=1e-12)
    assert best["braid"]["strands"] == 3
    assert list(best)[:6] == [
        "weave", "braid", "length", "winding", "distance", "projective_distance"]


def test_identity_at_short_depth_is_empty():
    best = run_json("search", "--target", "identity", "--lmax", 4)["results"][0]
    assert best["length"] == 0
    assert best["braid"]["word"] == []
    assert best["distance"] == pytest.approx(0, abs=1e-12)


def test_odd_effective_braiding_is_infeasible():
    proc = run("search", "--target", "effective-braiding", "--m", 3, "--lmax", 8, check=False)
    assert proc.returncode == 2
    err = json.loads(proc.stderr.strip().splitlines()[-1])
    assert err["error"]


def test_keep_returns_sorted_results():
    results = run_json("search", "--target", "f", "--lmax", 12, "--keep", 5)["results"]
    assert len(results) == 5
    dists = [r["distance"] for r in results]
    assert all(a <= b + 1e-12 for a, b in zip(dists, dists[1:]))


def test_scaling_csv():
    lines = run("scaling", "--target", "ix", "--lmax", 20).stdout.strip().splitlines()
    assert lines[0] == "L,epsilon,ln_inv_epsilon"
    eps = [float(line.split(",")[1]) for line in lines[1:]]
    assert all(a > b for a, b in zip(eps, eps[1:]))


def test_desk_limit_needs_long_run():
    proc = run("search", "--target", "ix", "--lmax", 60, check=False)
    assert proc.returncode == 1
    assert "long-run" in json.loads(proc.stderr.strip().splitlines()[-1])["message"]


def test_sk_without_net_is_io_error(cache_env):
    proc = run("sk", "--target", "ix", "--depth", 1, env=cache_env, check=False)
    assert proc.returncode == 3


def test_build_net_then_sk(cache_env):
    info = run_json("build-net", "--net-length", 20, env=cache_env)
    assert info["base_length"] == 20
    assert os.path.exists(info["path"])
    out = run_json("sk", "--target", "ix", "--depth", 1, "--net-length", 20, env=cache_env)
    levels = out["levels"]
    assert len(levels) == 2
    assert out["net_base_length"] == 20
    assert levels[1]["distance"] < levels[0]["distance"]
    assert levels[1]["winding"] % 10 == levels[0]["winding"] % 10


def test_coarse_net_exits_4(cache_env):
    proc = run("sk", "--target", "f", "--net-length", 12, "--build-net", env=cache_env,
               check=False)
    assert proc.returncode == 4
    assert json.loads(proc.stderr.strip().splitlines()[-1])["level"] == 0


def test_compile2q_ideal_fweave():
    out = run_json("compile2q", "--construction", "fweave-cz", "--ideal")
    for sector in out["report"]["sectors"]:
        assert sector["leakage"] < 1e-12
        assert sector["distance_exact"] < 1e-12
    assert "braid" not in out["gate"]


def test_compile2q_weaves_within_budget(tmp_path):
    path = tmp_path / "gate.json"
    run("compile2q", "--construction", "effective-braiding", "--lmax", 16, "-o", path)
    out = json.loads(path.read_text())
    assert out["report"]["within_budget"]
    assert out["gate"]["braid"]["strands"] == 6

    report = run_json("verify", "--braid", path, "--matrix", path)
    for a, b in zip(report["sectors"], out["report"]["sectors"]):
        assert a["distance_exact"] == pytest.approx(b["distance_exact"], abs=1e-10)


def test_verify_reproduces_search(tmp_path):
    path = tmp_path / "search.json"
    run("search", "--target", "injection", "--lmax", 16, "-o", path)
    best = json.loads(path.read_text())["results"][0]
    report = run_json("verify", "--braid", path, "--matrix", path)
    assert report["distance"] == pytest.approx(best["distance"], abs=1e-12)


def test_config_precedence(tmp_path):
    cfg = tmp_path / "run.toml"
    cfg.write_text("[search]\nlmax = 12\nkeep = 3\n")
    out = run_json("--config", cfg, "search", "--target", "ix")
    assert out["l_max"] == 12
    assert len(out["results"]) == 3
    out = run_json("--config", cfg, "search", "--target", "ix", "--lmax", 8)
    assert out["l_max"] == 8


def test_dumped_config_loads_back(tmp_path):
    cfg = tmp_path / "dump.toml"
    cfg.write_text(run("--dump-config", "search", "--lmax", 10).stdout)
    assert run_json("--config", cfg, "search")["l_max"] == 10


def test_workers_do_not_change_results():
    a = run("search", "--target", "phase", "--lmax", 16, "--keep", 4, "--workers", 1).stdout
    b = run("search", "--target", "phase", "--lmax", 16, "--keep", 4, "--workers", 3).stdout
    assert a == b


def test_bad_input_file_is_io_error(tmp_path):
    proc = run("verify", "--braid", tmp_path / "missing.json", "--target", "ix", check=False)
    assert proc.returncode == 3
