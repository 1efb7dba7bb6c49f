import pytest

from riverevt import cli, pipeline, synthetic


@pytest.fixture(scope="session")
def synthetic_dir(tmp_path_factory):
    """Seeded two-regime dataset and its config, written through the CLI."""
    out = tmp_path_factory.mktemp("synthetic")
    assert cli.main(["synth", "--out", str(out), "--seed", str(synthetic.DEFAULT_SEED)]) == 0
    return out


@pytest.fixture(scope="session")
def synthetic_report(synthetic_dir):
    cfg = pipeline.load_config(synthetic_dir / "analysis.cfg")
    return pipeline.run_pipeline(cfg)
