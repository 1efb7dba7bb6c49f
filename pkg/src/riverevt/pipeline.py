"""
End-to-end analysis: read -> segment -> crests -> theta sweep -> fit -> risk.

:func:`run_pipeline` returns an in-memory :class:`Report`; :func:`write_report`
serializes it to JSON and :func:`emit_plot_data` writes one CSV (and
optionally one SVG) per figure.
"""

from __future__ import annotations

import csv
import dataclasses
import hashlib
import io
import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

import numpy as np

from . import __version__, crest, dist, fitgof, ingest, risk, synthetic, theta
from . import svg as svgplot

OK, PARTIAL, FATAL = 0, 2, 1
STAGES = ("histogram", "qq", "theta-curve", "fit-overlay")
REPORT_FORMAT = 1


class ConfigError(ValueError):
    """Invalid pipeline configuration; ``errors`` maps field names to messages."""

    def __init__(self, errors: dict):
        self.errors = errors
        super().__init__("; ".join(f"{k}: {v}" for k, v in errors.items()))


def _floats(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def _parse_split(v):
    if isinstance(v, (list, tuple)):
        return [int(i) for i in v]
    v = str(v).strip().lower()
    if v in ("auto", "none"):
        return v
    return [int(i) for i in v.split(",") if i.strip()]


def _parse_reference(v):
    if isinstance(v, (int, float)):
        return float(v)
    v = str(v).strip().lower()
    return "mean" if v == "mean" else float(v)


def _parse_grid(v):
    if isinstance(v, (list, tuple)):
        return [float(x) for x in v]
    v = str(v).strip().lower()
    if v == "auto":
        return "auto"
    if ":" in v:
        lo, hi, count = v.split(":")
        return list(np.linspace(float(lo), float(hi), int(count)).tolist())
    return _floats(v)


def _parse_families(v):
    items = v if isinstance(v, (list, tuple)) else str(v).split(",")
    return [dist.canonical_family(f) for f in items if str(f).strip()]


def _parse_fit_threshold(v):
    if isinstance(v, (int, float)):
        return [float(v)]
    if isinstance(v, (list, tuple)):
        return [float(x) for x in v]
    v = str(v).strip().lower()
    return "theta" if v == "theta" else _floats(v)


def _parse_interval(v):
    if v is None or str(v).strip().lower() == "auto":
        return None
    return float(v)


def _parse_bool(v):
    if isinstance(v, bool):
        return v
    s = str(v).strip().lower()
    if s in ("1", "true", "yes", "on"):
        return True
    if s in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {v!r}")


def _choice(*options):
    def parse(v):
        s = str(v).strip().lower()
        if s not in options:
            raise ValueError(f"expected one of {options}, got {v!r}")
        return s
    return parse


_PARSERS = {
    "input": str,
    "delimiter": str,
    "date_column": str,
    "level_column": str,
    "split": _parse_split,
    "gap": int,
    "crest_reference": _parse_reference,
    "theta_on": _choice("raw", "crests"),
    "theta_method": _choice(*theta.METHODS),
    "run_length": int,
    "threshold_grid": _parse_grid,
    "families": _parse_families,
    "fit_method": _choice("qq", "mle"),
    "plotting_positions": _choice(*fitgof.PLOTTING_RULES),
    "fit_threshold": _parse_fit_threshold,
    "levels": lambda v: [float(x) for x in v] if isinstance(v, (list, tuple)) else _floats(str(v)),
    "interval_days": _parse_interval,
    "out": str,
    "svg": _parse_bool,
    "seed": int,
}


@dataclass
class PipelineConfig:
    input: str = ""
    delimiter: str = ","
    date_column: str = "date"
    level_column: str = "level_m"
    split: Union[str, list] = "auto"
    gap: int = 0
    crest_reference: Union[str, float] = "mean"
    theta_on: str = "raw"
    theta_method: str = theta.RUNS
    run_length: int = 1
    threshold_grid: Union[str, list] = "auto"
    families: list = field(default_factory=lambda: list(dist.FAMILIES))
    fit_method: str = "qq"
    plotting_positions: str = "weibull"
    fit_threshold: Union[str, list] = "theta"
    levels: list = field(default_factory=list)
    interval_days: Optional[float] = None
    out: str = "out"
    svg: bool = False
    seed: int = synthetic.DEFAULT_SEED
    # directory a relative input path is resolved against
    base_dir: str = ""

    @classmethod
    def from_mapping(cls, values: dict, base: Optional["PipelineConfig"] = None) -> "PipelineConfig":
        """Build a config from raw (string or typed) values, rejecting unknown keys."""
        cfg = dataclasses.replace(base) if base else cls()
        errors = {}
        for raw_key, raw in values.items():
            key = raw_key.strip().replace("-", "_")
            if key not in _PARSERS:
                errors[raw_key] = "unknown key"
                continue
            try:
                setattr(cfg, key, _PARSERS[key](raw))
            except (TypeError, ValueError) as exc:
                errors[raw_key] = str(exc)
        if errors:
            raise ConfigError(errors)
        cfg.validate()
        return cfg

    def validate(self):
        errors = {}
        if not self.input:
            errors["input"] = "an input file is required"
        if self.gap < 0:
            errors["gap"] = "must be >= 0"
        if self.run_length < 1:
            errors["run_length"] = "must be >= 1"
        if not self.families:
            errors["families"] = "at least one family is required"
        if self.fit_method == "mle" and dist.WEIBULL not in self.families:
            errors["fit_method"] = "mle needs the weibull family"
        if self.interval_days is not None and not self.interval_days > 0:
            errors["interval_days"] = "must be positive"
        if isinstance(self.threshold_grid, list) and (
                not self.threshold_grid or np.any(np.diff(self.threshold_grid) <= 0)):
            errors["threshold_grid"] = "must be a nonempty strictly ascending list"
        if len(self.delimiter) != 1:
            errors["delimiter"] = "must be a single character"
        if errors:
            raise ConfigError(errors)

    def echo(self) -> dict:
        """Analysis-relevant settings, in a canonical form (the output location is left out)."""
        d = dataclasses.asdict(self)
        for key in ("out", "svg", "base_dir"):
            d.pop(key)
        return d

    @property
    def input_path(self) -> Path:
        return Path(self.base_dir or ".") / self.input


def read_config(path) -> dict:
    """
    Read a flat ``key = value`` file.

    Blank lines and ``#`` comments are ignored; keys may use ``-`` or ``_``.
    """
    values, errors = {}, {}
    for n, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            errors[f"line {n}"] = f"expected key = value, got {line!r}"
            continue
        key, value = (s.strip() for s in line.split("=", 1))
        values[key] = value
    if errors:
        raise ConfigError(errors)
    return values


def load_config(path=None, overrides: Optional[dict] = None) -> PipelineConfig:
    """Config file values, then `overrides` on top (None values are ignored)."""
    values = read_config(path) if path else {}
    from_file = "input" in values
    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
    values.update(overrides)
    cfg = PipelineConfig.from_mapping(values)
    if path and from_file and "input" not in overrides:
        cfg.base_dir = str(Path(path).parent)
    return cfg


@dataclass
class SegmentResult:
    segment: ingest.Segment
    levels: np.ndarray
    dates: list
    histogram: ingest.Histogram
    crests: crest.CrestSeries
    curve: theta.ThetaCurve
    declustering_threshold: Optional[float]
    fit_threshold: Optional[float] = None
    threshold_source: str = ""
    excess: Optional[crest.ExcessSample] = None
    selection: Optional[fitgof.FamilySelection] = None
    qq: dict = field(default_factory=dict)
    fit: Optional[fitgof.TailFit] = None
    mle_check: Optional[fitgof.TailFit] = None
    risk: Optional[risk.RiskTable] = None
    rule: str = "weibull"
    caveats: list = field(default_factory=list)


@dataclass
class Report:
    config: PipelineConfig
    input_sha256: str
    series: ingest.WaterLevelSeries
    interval_days: float
    change_point: Optional[ingest.ChangePoint]
    segments: list
    caveats: list = field(default_factory=list)

    @property
    def status(self) -> int:
        if self.caveats or any(s.caveats for s in self.segments):
            return PARTIAL
        return OK


def _grid_for(cfg: PipelineConfig, sample: np.ndarray) -> np.ndarray:
    if cfg.threshold_grid == "auto":
        return theta.default_grid(sample)
    return np.asarray(cfg.threshold_grid, dtype=float)


def analyze_segment(seg: ingest.Segment, levels: np.ndarray, dates: list, cfg: PipelineConfig,
                    interval_days: float, explicit_threshold: Optional[float]) -> SegmentResult:
    x = seg.take(levels)
    res_caveats = []
    hist = ingest.histogram(x)
    crests = crest.extract_crests(x, cfg.crest_reference)
    sample = x if cfg.theta_on == "raw" else crests.crest_levels
    if sample.size < 2:
        curve = theta.ThetaCurve(np.array([]), (), cfg.theta_method)
        decl = None
        res_caveats.append("too few values for a theta sweep")
    else:
        curve = theta.theta_sweep(sample, _grid_for(cfg, sample), cfg.theta_method, cfg.run_length)
        decl = theta.declustering_threshold(curve)
        undefined = int((~curve.defined).sum())
        if undefined:
            res_caveats.append(f"theta undefined at {undefined} of {len(curve.estimates)} thresholds")
    res = SegmentResult(seg, x, seg.take(dates), hist, crests, curve, decl,
                        rule=cfg.plotting_positions, caveats=res_caveats)

    if explicit_threshold is not None:
        res.fit_threshold, res.threshold_source = explicit_threshold, "config"
    elif decl is not None:
        res.fit_threshold, res.threshold_source = decl, "theta"
    elif curve.thresholds.size:
        res.fit_threshold, res.threshold_source = float(curve.thresholds[0]), "fallback"
        res.caveats.append("theta never settles at 1; fitting above the lowest grid threshold")
    else:
        res.caveats.append("no fit threshold available")
        return res

    res.excess = crest.excesses(crests, res.fit_threshold)
    if len(res.excess) < 3:
        res.caveats.append(f"only {len(res.excess)} crest excess(es) above {res.fit_threshold:g} m; no fit")
        return res

    res.selection = fitgof.select_family(res.excess, cfg.families, cfg.plotting_positions)
    for fam, reason in res.selection.skipped.items():
        res.caveats.append(f"{fam} skipped: {reason}")
    for fam, _ in res.selection.ranking:
        res.qq[fam] = fitgof.qq_points(res.excess, fam, cfg.plotting_positions)
    if res.selection.best is None:
        res.caveats.append("no admissible family")
        return res

    family = res.selection.best
    method = fitgof.MLE if cfg.fit_method == "mle" else fitgof.QQ
    if method == fitgof.MLE and family != dist.WEIBULL:
        res.caveats.append(f"mle is weibull-only; {family} fitted by Q-Q regression")
        method = fitgof.QQ
    try:
        res.fit = fitgof.fit(res.excess, family, method, cfg.plotting_positions)
    except fitgof.FitError as exc:
        res.caveats.append(f"{family} fit failed: {exc}")
        return res
    if any(fam == dist.WEIBULL for fam, _ in res.selection.ranking):
        other = fitgof.QQ if family == dist.WEIBULL and method == fitgof.MLE else fitgof.MLE
        try:
            res.mle_check = fitgof.fit(res.excess, dist.WEIBULL, other, cfg.plotting_positions)
        except fitgof.FitError as exc:
            res.caveats.append(f"weibull cross-check failed: {exc}")

    above = [lv for lv in cfg.levels if lv > res.fit_threshold]
    if len(above) < len(cfg.levels):
        res.caveats.append(f"{len(cfg.levels) - len(above)} risk level(s) not above the fit threshold skipped")
    res.risk = risk.risk_table(res.fit, above, interval_days)
    return res


def run_pipeline(cfg: PipelineConfig) -> Report:
    """
    Run every stage for every segment.

    Raises ``OSError`` for an unreadable input and :class:`ConfigError` or
    :class:`ingest.ParseError` for unusable settings or data. Anything that
    only limits the analysis is recorded as a caveat instead.
    """
    cfg.validate()
    raw = cfg.input_path.read_bytes()
    fmt = ingest.RecordFormat(cfg.delimiter, cfg.date_column, cfg.level_column, cfg.interval_days)
    series = ingest.parse_series(raw.decode("utf-8"), fmt)
    levels, dates = series.levels, series.timestamps
    caveats = []
    if series.parse_report.rejected_count:
        caveats.append(f"{series.parse_report.rejected_count} malformed row(s) rejected")

    cp = None
    if cfg.split == "auto":
        cp = ingest.detect_change_point(series) if len(series) >= 4 else None
        splits = [cp.index] if cp is not None and cp.found else []
    elif cfg.split == "none":
        splits = []
    else:
        splits = list(cfg.split)
    try:
        segments = ingest.split_segments(len(series), splits, cfg.gap)
    except ValueError as exc:
        raise ConfigError({"split": str(exc)}) from None

    thresholds = [None] * len(segments)
    if isinstance(cfg.fit_threshold, list):
        ft = cfg.fit_threshold
        if len(ft) == 1:
            thresholds = ft * len(segments)
        elif len(ft) == len(segments):
            thresholds = list(ft)
        else:
            raise ConfigError({"fit_threshold": f"{len(ft)} values for {len(segments)} segments"})

    results = []
    for seg, u in zip(segments, thresholds):
        if len(seg) < 3:
            raise ConfigError({"split": f"{seg.label} has fewer than 3 values"})
        results.append(analyze_segment(seg, levels, dates, cfg, series.sampling_interval_days, u))
    return Report(cfg, hashlib.sha256(raw).hexdigest(), series, series.sampling_interval_days,
                  cp, results, caveats)


# -- serialization ---------------------------------------------------------

def _num(v):
    if v is None:
        return None
    if isinstance(v, (int, np.integer)) and not isinstance(v, (bool, np.bool_)):
        return int(v)
    v = float(v)
    return v if math.isfinite(v) else None


def q(value, unit: str) -> dict:
    return {"value": _num(value), "unit": unit}


def qs(values, unit: str) -> dict:
    return {"values": [_num(v) for v in values], "unit": unit}


_PARAM_UNITS = {
    (dist.EXPONENTIAL, "rate"): "1/m",
    (dist.WEIBULL, "rate"): "m^-shape",
    (dist.WEIBULL, "shape"): "1",
    (dist.GUMBEL, "loc"): "m",
    (dist.GUMBEL, "scale"): "m",
    (dist.FRECHET, "shape"): "1",
    (dist.FRECHET, "loc"): "m",
    (dist.FRECHET, "scale"): "m",
}


def _fit_block(f: Optional[fitgof.TailFit]):
    if f is None:
        return None
    return {
        "family": f.family,
        "method": f.method,
        "parameters": {k: q(v, _PARAM_UNITS[(f.family, k)]) for k, v in f.model.params().items()},
        "threshold": q(f.threshold, "m"),
        "goodness_r_squared": q(f.goodness, "1"),
        "sample_size": q(f.sample_size, "count"),
    }


def _segment_block(r: SegmentResult) -> dict:
    x = r.levels
    block = {
        "label": r.segment.label,
        "bounds": {"start_index": q(r.segment.start_index, "index"),
                   "end_index": q(r.segment.end_index, "index"),
                   "start_date": r.dates[0].isoformat(), "end_date": r.dates[-1].isoformat()},
        "summary": {"count": q(x.size, "count"), "mean": q(x.mean(), "m"), "std": q(x.std(), "m"),
                    "min": q(x.min(), "m"), "max": q(x.max(), "m")},
        "crests": {"reference_level": q(r.crests.reference_level, "m"), "count": q(len(r.crests), "count")},
        "theta": {
            "method": r.curve.method,
            "run_length": q(r.curve.estimates[0].run_length if r.curve.estimates and
                            r.curve.method == theta.RUNS else None, "count"),
            "thresholds": qs(r.curve.thresholds, "m"),
            "theta": qs(r.curve.thetas, "1"),
            "defined": [bool(d) for d in r.curve.defined],
            "declustering_threshold": q(r.declustering_threshold, "m"),
        },
        "fit_threshold": dict(q(r.fit_threshold, "m"), source=r.threshold_source),
        "excess_count": q(len(r.excess) if r.excess is not None else 0, "count"),
        "qq_r_squared": {f: q(v, "1") for f, v in (r.selection.ranking if r.selection else ())},
        "skipped_families": dict(r.selection.skipped) if r.selection else {},
        "selected_family": r.selection.best if r.selection else None,
        "fit": _fit_block(r.fit),
        "cross_check": _fit_block(r.mle_check),
        "risk_table": None,
        "caveats": list(r.caveats),
    }
    if r.risk is not None:
        block["risk_table"] = {
            "sampling_interval": q(r.risk.sampling_interval_days, "days"),
            "rows": [{"level": q(lv, "m"), "exceedance_probability": q(p * 100.0, "%"),
                      "return_period": q(t, "days")}
                     for lv, p, t in zip(r.risk.levels, r.risk.probabilities, r.risk.return_periods_days)],
            "footnotes": list(r.risk.footnotes),
        }
    return block


def report_dict(report: Report) -> dict:
    cfg = report.config
    cp = report.change_point
    return {
        "format": REPORT_FORMAT,
        "status": "ok" if report.status == OK else "partial",
        "provenance": {
            "artifact": "riverevt",
            "version": __version__,
            "input": {"path": cfg.input, "sha256": report.input_sha256},
            "config": cfg.echo(),
            "seed": synthetic.resolve_seed(None) if os.environ.get("EVT_SEED") else cfg.seed,
        },
        "series": {
            "count": q(len(report.series), "count"),
            "rejected_rows": q(report.series.parse_report.rejected_count, "count"),
            "sampling_interval": q(report.interval_days, "days"),
            "mean_level": q(report.series.levels.mean(), "m"),
            "change_point": None if cp is None else {
                "index": q(cp.index, "index"), "score": q(cp.score, "1")},
        },
        "segments": [_segment_block(s) for s in report.segments],
        "caveats": list(report.caveats),
    }


def schema_path():
    """Location of the JSON schema every report validates against."""
    from importlib.resources import files
    return files("riverevt") / "schemas" / "report.schema.json"


def report_json(report: Report) -> str:
    return json.dumps(report_dict(report), indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_report(report: Report, out_dir) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "report.json"
    path.write_text(report_json(report))
    return path


# -- plot data -------------------------------------------------------------

QQ_COLUMNS = {
    dist.EXPONENTIAL: ("Q_star", "Q"),
    dist.WEIBULL: ("ln_neg_ln_1mp", "ln_Q"),
    dist.GUMBEL: ("neg_ln_neg_ln_p", "Q"),
    dist.FRECHET: ("neg_ln_neg_ln_p", "ln_Q"),
}
OVERLAY_POINTS = 200


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, str):
        return v
    return repr(float(v))


def _write_csv(path: Path, header, rows) -> Path:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    path.write_text(buf.getvalue())
    return path


def read_plot_csv(path) -> dict:
    """Columns of a plot CSV; numeric columns come back as float arrays."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    cols = {}
    for k, name in enumerate(header):
        vals = [r[k] for r in body]
        try:
            cols[name] = np.array([float(v) for v in vals])
        except ValueError:
            cols[name] = vals
    return cols


def plot_tables(r: SegmentResult, stage: str) -> list[tuple[str, tuple, list, dict]]:
    """``(suffix, header, rows, chart spec)`` for every plot of `stage` in one segment."""
    if stage == "histogram":
        cum = ingest.cumulative_histogram(r.histogram)
        e = r.histogram.bin_edges
        rows = list(zip(e[:-1], e[1:], r.histogram.probabilities, cum.cumulative))
        mids = (e[:-1] + e[1:]) / 2
        spec = {"series": [{"x": mids, "y": r.histogram.probabilities, "style": "line"},
                           {"x": mids, "y": cum.cumulative, "style": "line", "color": "#d62728"}],
                "xlabel": "H (m)", "ylabel": "P, P_c"}
        return [("histogram", ("H_left_m", "H_right_m", "P", "P_c"), rows, spec)]
    if stage == "qq":
        out = []
        for fam, plot in r.qq.items():
            cols = QQ_COLUMNS[fam]
            spec = {"series": [{"x": plot.theoretical, "y": plot.sample}],
                    "xlabel": cols[0], "ylabel": cols[1]}
            out.append((f"qq_{fam}", cols, list(zip(plot.theoretical, plot.sample)), spec))
        return out
    if stage == "theta-curve":
        rows = list(zip(r.curve.thresholds, r.curve.thetas, r.curve.defined))
        spec = {"series": [{"x": r.curve.thresholds, "y": r.curve.thetas, "style": "line"}],
                "xlabel": "threshold (m)", "ylabel": "theta"}
        return [("theta_curve", ("threshold_m", "theta", "defined"), rows, spec)]
    if stage == "fit-overlay":
        if r.fit is None or r.excess is None:
            return []
        xs = np.sort(r.excess.excesses)
        emp = 1.0 - fitgof.plotting_positions(xs.size, r.rule)
        grid = np.linspace(0.0, float(xs.max()) * 1.1, OVERLAY_POINTS)
        fitted = dist.survival(r.fit.model, grid)
        rows = [("empirical", a, b) for a, b in zip(xs, emp)] + [("fitted", a, b) for a, b in zip(grid, fitted)]
        spec = {"series": [{"x": xs, "y": emp}, {"x": grid, "y": fitted, "style": "line", "color": "#d62728"}],
                "xlabel": "H* (m)", "ylabel": "P"}
        return [("fit_overlay", ("series", "H_star_m", "P"), rows, spec)]
    raise ValueError(f"unknown plot stage {stage!r}; expected one of {STAGES}")


def emit_plot_data(report: Report, stage: str, out_dir, svg: bool = False) -> list[Path]:
    """Write ``plots/<segment>_<plot>.csv`` (and ``.svg``) for one stage; returns the paths."""
    if stage not in STAGES:
        raise ValueError(f"unknown plot stage {stage!r}; expected one of {STAGES}")
    plots = Path(out_dir) / "plots"
    plots.mkdir(parents=True, exist_ok=True)
    paths = []
    for r in report.segments:
        for suffix, header, rows, spec in plot_tables(r, stage):
            stem = f"{r.segment.label}_{suffix}"
            paths.append(_write_csv(plots / f"{stem}.csv", header, rows))
            if svg:
                p = plots / f"{stem}.svg"
                p.write_text(svgplot.chart(spec["series"], spec["xlabel"], spec["ylabel"], stem))
                paths.append(p)
    return paths
