"""End-to-end runs, CLI contract, and the static bundle server."""

import json
import threading
import urllib.error
import urllib.request

import pytest

from corpusmap.cli import main
from corpusmap.config import load_config
from corpusmap.errors import InputError
from corpusmap.pipeline import run_pipeline
from corpusmap.server import make_server

# Hand-computed over the committed 5-doc corpus; see the fixture docs
# and annotations under tests/fixtures/crisis5.
CRISIS5_COUNTS = {
    "documents": 5,
    "sentences": 11,
    "mentions": 16,
    "clusters": 5,
    "nodes": 5,
    "edges": 5,
    "associations": 4,
    "links": 1,
}


class TestRunPipeline:
    def test_crisis5_counts(self, crisis5_dir):
        report = run_pipeline(load_config(crisis5_dir / "config.json"))
        assert report.counts == CRISIS5_COUNTS

    def test_crisis5_artifacts(self, crisis5_dir):
        run_pipeline(load_config(crisis5_dir / "config.json"))
        out = crisis5_dir / "out"
        assert {p.name for p in out.iterdir()} == {
            "graph.gexf",
            "graph.json",
            "sankey.json",
            "edges.csv",
            "report.json",
        }
        sankey = json.loads((out / "sankey.json").read_text())
        assert sankey["links"] == [
            {
                "source": "P1:subprime loans",
                "target": "P2:bank regulators",
                "value": 2,
                "entities": ["Fannie Mae"],
            }
        ]

    def test_rerun_byte_identical(self, crisis5_dir):
        cfg = load_config(crisis5_dir / "config.json")
        run_pipeline(cfg)
        out = crisis5_dir / "out"
        first = {
            name: (out / name).read_bytes()
            for name in ("graph.gexf", "graph.json", "sankey.json", "edges.csv")
        }
        run_pipeline(cfg)
        for name, data in first.items():
            assert (out / name).read_bytes() == data

    def test_empty_manifest(self, tmp_path):
        (tmp_path / "manifest.json").write_text("[]", encoding="utf-8")
        (tmp_path / "config.json").write_text(
            json.dumps({"manifest": "manifest.json", "ner": {"mode": "heuristic"}})
        )
        report = run_pipeline(load_config(tmp_path / "config.json"))
        assert report.counts["documents"] == 0
        assert report.counts["edges"] == 0
        out = tmp_path / "out"
        assert {p.name for p in out.iterdir()} == {"report.json"}

    def test_no_boundaries_skips_sankey(self, crisis5_dir):
        cfg_raw = json.loads((crisis5_dir / "config.json").read_text())
        cfg_raw["temporal"].pop("boundaries")
        (crisis5_dir / "config.json").write_text(json.dumps(cfg_raw))
        report = run_pipeline(load_config(crisis5_dir / "config.json"))
        assert not (crisis5_dir / "out" / "sankey.json").exists()
        assert any("skipped" in w for w in report.warnings)

    def test_missing_conll_aborts_without_partial_output(self, crisis5_dir):
        (crisis5_dir / "conll" / "d3.conll").unlink()
        with pytest.raises(InputError, match="d3"):
            run_pipeline(load_config(crisis5_dir / "config.json"))
        out = crisis5_dir / "out"
        artifacts = {p.name for p in out.iterdir()} if out.exists() else set()
        assert "graph.gexf" not in artifacts

    def test_stage_tagged_error(self, crisis5_dir):
        (crisis5_dir / "conll" / "d3.conll").unlink()
        with pytest.raises(InputError, match=r"\[entities\]"):
            run_pipeline(load_config(crisis5_dir / "config.json"))

    def test_worker_independence(self, crisis5_dir):
        cfg_raw = json.loads((crisis5_dir / "config.json").read_text())
        artifacts = {}
        for workers in (1, 4):
            cfg_raw["workers"] = workers
            cfg_raw["output"] = {"dir": f"out{workers}"}
            (crisis5_dir / "config.json").write_text(json.dumps(cfg_raw))
            run_pipeline(load_config(crisis5_dir / "config.json"))
            out = crisis5_dir / f"out{workers}"
            artifacts[workers] = {
                p.name: p.read_bytes()
                for p in out.iterdir()
                if p.name != "report.json"
            }
        assert artifacts[1] == artifacts[4]

    def test_heuristic_mode_runs(self, crisis5_dir):
        cfg_raw = json.loads((crisis5_dir / "config.json").read_text())
        cfg_raw["ner"] = {"mode": "heuristic"}
        (crisis5_dir / "config.json").write_text(json.dumps(cfg_raw))
        report = run_pipeline(load_config(crisis5_dir / "config.json"))
        assert report.counts["mentions"] > 0
        assert report.counts["clusters"] > 0


class TestCli:
    def test_run_success_exit_zero(self, crisis5_dir, capsys):
        assert main(["run", "--config", str(crisis5_dir / "config.json")]) == 0
        assert "links: 1" in capsys.readouterr().out

    def test_usage_error_exit_one(self):
        with pytest.raises(SystemExit) as exc:
            main(["bogus-command"])
        assert exc.value.code == 1

    def test_input_error_exit_two(self, tmp_path, capsys):
        (tmp_path / "config.json").write_text(
            json.dumps({"manifest": "missing.json", "ner": {"mode": "heuristic"}})
        )
        assert main(["run", "--config", str(tmp_path / "config.json")]) == 2

    def test_config_error_exit_three(self, tmp_path):
        (tmp_path / "config.json").write_text(json.dumps({"ner": {"mode": "nope"}}))
        assert main(["run", "--config", str(tmp_path / "config.json")]) == 3

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--version"])
        assert exc.value.code == 0
        assert "corpusmap" in capsys.readouterr().out


@pytest.fixture
def bundle_server(crisis5_dir):
    run_pipeline(load_config(crisis5_dir / "config.json"))
    server = make_server(crisis5_dir / "out", 0)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_address[1]}", crisis5_dir / "out"
    server.shutdown()
    server.server_close()


class TestServer:
    def test_serves_exported_bytes(self, bundle_server):
        url, out = bundle_server
        with urllib.request.urlopen(f"{url}/graph.json") as resp:
            assert resp.status == 200
            assert resp.read() == (out / "graph.json").read_bytes()

    def test_content_type(self, bundle_server):
        url, _ = bundle_server
        with urllib.request.urlopen(f"{url}/graph.json") as resp:
            assert resp.headers["Content-Type"] == "application/json"

    def test_missing_file_404(self, bundle_server):
        url, _ = bundle_server
        with pytest.raises(urllib.error.HTTPError) as exc:
            urllib.request.urlopen(f"{url}/missing")
        assert exc.value.code == 404

    def test_post_rejected(self, bundle_server):
        url, _ = bundle_server
        req = urllib.request.Request(f"{url}/graph.json", data=b"x", method="POST")
        with pytest.raises(urllib.error.HTTPError) as exc:
            urllib.request.urlopen(req)
        assert exc.value.code == 405

    def test_missing_directory_rejected(self, tmp_path):
        with pytest.raises(InputError):
            make_server(tmp_path / "absent", 0)

    def test_busy_port_raises(self, bundle_server):
        url, out = bundle_server
        port = int(url.rsplit(":", 1)[1])
        with pytest.raises(InputError):
            make_server(out, port)
