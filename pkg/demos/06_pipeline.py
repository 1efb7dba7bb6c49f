# %% [markdown]
# # The whole analysis from a config file
#
# `riverevt analyze --config data/synthetic/analysis.cfg --out out` does
# everything below and writes report.json with plots/*.csv. Here the same
# steps run in process.

# %%
import json
import tempfile
from pathlib import Path

from riverevt import pipeline

cfg = pipeline.load_config(Path(__file__).resolve().parents[1] / "data" / "synthetic" / "analysis.cfg")
report = pipeline.run_pipeline(cfg)
for seg in report.segments:
    print(f"{seg.segment.label}: {seg.selection.best} rate {seg.fit.rate:.3f} shape {seg.fit.shape:.3f} "
          f"above {seg.fit_threshold:g} m, declustering threshold {seg.declustering_threshold:.2f} m")

# %% [markdown]
# Every number in the report carries its unit.

# %%
out = Path(tempfile.mkdtemp())
path = pipeline.write_report(report, out)
first = json.loads(path.read_text())["segments"][0]
print(json.dumps(first["fit"]["parameters"], indent=2))
for stage in pipeline.STAGES:
    pipeline.emit_plot_data(report, stage, out, svg=True)
print(sorted(p.name for p in (out / "plots").iterdir())[:6])
