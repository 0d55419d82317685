"""Monte Carlo campaigns over the sampler and counting modules.

Five experiment kinds: containment fractions across the appearance
threshold, normality of the standardized count, the split of the variance
between the edge and label components, the critical pinned-sparsity regime
against its predicted share, and the conditional normality of the edge
component at frozen latents.

Determinism contract: every replicate draws its seed from
(config seed, n, replicate index), aggregates are computed from arrays in
replicate order, and serialized outputs carry no timing, so reruns are
byte-identical regardless of thread count.
"""

from __future__ import annotations

import csv
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .motif import Motif, density_exponents, named_motif
from .graphon import (
    StepGraphon,
    critical_edge_variance_share,
    is_motif_regular,
    named_graphon,
)
from .sampler import (
    SparsitySchedule,
    classify_regime,
    replicate_seed,
    resample_edges,
    sample,
    schedule_rho,
)
from .counting import (
    REPLICATE_CSV_HEADER,
    conditional_expected_count,
    count,
    expected_count,
)
from .stats import (
    NormalityReport,
    covariance_and_se,
    ks_test,
    mean_and_se,
    standardize,
    variance_ratio,
)

EXPERIMENT_KINDS = ("containment", "clt", "variance_ratio", "critical_kappa",
                    "conditional_clt")

# replicate-index namespace reserved for the frozen latent draw
_LATENT_TAG = 0xFEED0000


@dataclass(frozen=True)
class ExperimentConfig:
    experiment_kind: str
    motif: Motif
    graphon: StepGraphon
    schedule: SparsitySchedule
    n_values: tuple
    replicates: int
    seed: int

    def __post_init__(self):
        if self.experiment_kind not in EXPERIMENT_KINDS:
            raise ValueError(f"unknown experiment kind {self.experiment_kind!r}")
        object.__setattr__(self, "n_values",
                           tuple(int(n) for n in self.n_values))
        if not self.n_values:
            raise ValueError("n_values must be nonempty")
        if any(b <= a for a, b in zip(self.n_values, self.n_values[1:])):
            raise ValueError("n_values must be strictly ascending")
        if any(n < 1 for n in self.n_values):
            raise ValueError("n values must be positive")
        if self.replicates < 1:
            raise ValueError("replicates must be at least 1")
        if not (0 <= self.seed < 2 ** 64):
            raise ValueError("seed must fit in 64 bits")

    def to_json_dict(self) -> dict:
        return {
            "experiment_kind": self.experiment_kind,
            "motif": self.motif.to_json_dict(),
            "graphon": self.graphon.to_json_dict(),
            "schedule": {"a": self.schedule.a, "gamma": self.schedule.gamma},
            "n_values": list(self.n_values),
            "replicates": self.replicates,
            "seed": self.seed,
        }

    @staticmethod
    def from_json_dict(d: dict) -> "ExperimentConfig":
        return ExperimentConfig(
            experiment_kind=d["experiment_kind"],
            motif=resolve_motif(d["motif"]),
            graphon=resolve_graphon(d["graphon"]),
            schedule=SparsitySchedule(float(d["schedule"]["a"]),
                                      float(d["schedule"]["gamma"])),
            n_values=tuple(d["n_values"]),
            replicates=int(d["replicates"]),
            seed=int(d["seed"]),
        )


def resolve_motif(source) -> Motif:
    """A motif given as a built-in name or an inline JSON dict."""
    if isinstance(source, Motif):
        return source
    if isinstance(source, str):
        return named_motif(source)
    return Motif.from_json_dict(source)


def resolve_graphon(source) -> StepGraphon:
    if isinstance(source, StepGraphon):
        return source
    if isinstance(source, str):
        return named_graphon(source)
    return StepGraphon.from_json_dict(source)


@dataclass
class CellRecord:
    """Aggregates for one n; fields unused by an experiment kind stay None."""

    n: int
    rho: float
    replicates: int
    expected_count: float
    mean_x: float = None
    se_x: float = None
    var_x: float = None
    mean_within_4se: bool = None
    containment_fraction: float = None
    var_delta1: float = None
    var_delta2: float = None
    cov_delta12: float = None
    corr_delta12: float = None
    r1: float = None
    r2: float = None
    ks_x: NormalityReport = None
    ks_delta1: NormalityReport = None
    ks_delta2: NormalityReport = None
    c_value: float = None
    kappa_theory: float = None
    cond_ks: NormalityReport = None
    cond_mean: float = None
    cond_var_empirical: float = None

    def to_json_dict(self) -> dict:
        out = {}
        for key, val in self.__dict__.items():
            if val is None:
                continue
            if isinstance(val, NormalityReport):
                out[key] = dict(sample_size=val.sample_size,
                                ks_statistic=val.ks_statistic,
                                mean=val.mean, sd=val.sd,
                                skewness=val.skewness)
            else:
                out[key] = val
        return out

    @staticmethod
    def from_json_dict(d: dict) -> "CellRecord":
        kwargs = dict(d)
        for key in ("ks_x", "ks_delta1", "ks_delta2", "cond_ks"):
            if key in kwargs:
                kwargs[key] = NormalityReport(**kwargs[key])
        return CellRecord(**kwargs)


@dataclass
class ExperimentResult:
    experiment_kind: str
    config: dict
    records: list
    runtime_seconds: float = field(default=0.0, compare=False)

    def to_json_dict(self) -> dict:
        # runtime is intentionally not serialized: outputs must be
        # byte-identical across reruns of the same config
        return {
            "experiment_kind": self.experiment_kind,
            "config": self.config,
            "records": [r.to_json_dict() for r in self.records],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"

    @staticmethod
    def from_json_dict(d: dict) -> "ExperimentResult":
        return ExperimentResult(
            experiment_kind=d["experiment_kind"],
            config=d["config"],
            records=[CellRecord.from_json_dict(r) for r in d["records"]])


# ---------------------------------------------------------------------------
# replicate loops


def _run_replicates(cfg: ExperimentConfig, n: int, rho: float, threads: int,
                    with_decomposition: bool):
    """Per-replicate arrays (x, delta1, delta2), filled in index order."""
    R = cfg.replicates
    m, w = cfg.motif, cfg.graphon
    xs = np.empty(R)
    d1 = np.empty(R)
    d2 = np.empty(R)
    exp = expected_count(m, w, n, rho)

    def work(r: int):
        g = sample(w, n, rho, replicate_seed(cfg.seed, n, r))
        x = count(g, m)
        xs[r] = x
        if with_decomposition:
            cond = conditional_expected_count(g.latents, m, w, rho)
            d1[r] = x - cond
            d2[r] = cond - exp

    _dispatch(work, R, threads)
    return xs, d1, d2, exp


def _dispatch(work, R: int, threads: int):
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(work, range(R)))
    else:
        for r in range(R):
            work(r)


def _base_record(cfg, n, rho, xs, exp) -> CellRecord:
    mean_x, se_x = mean_and_se(xs)
    ok = abs(mean_x - exp) <= 4.0 * se_x if se_x > 0 else mean_x == exp
    return CellRecord(n=n, rho=rho, replicates=cfg.replicates,
                      expected_count=exp, mean_x=mean_x, se_x=se_x,
                      var_x=float(np.var(xs, ddof=1)), mean_within_4se=ok)


def _ks_or_none(values) -> NormalityReport:
    sd = float(np.std(values, ddof=1))
    if sd == 0.0:
        return None
    return ks_test(standardize(values, float(np.mean(values)), sd))


# ---------------------------------------------------------------------------
# runners


def run_containment(cfg: ExperimentConfig, threads: int = 1) -> ExperimentResult:
    """Fraction of replicates containing the motif, against the mean bound."""
    _require_kind(cfg, "containment")
    t0 = time.perf_counter()
    records = []
    for n in cfg.n_values:
        rho = schedule_rho(cfg.schedule, n)
        xs, _, _, exp = _run_replicates(cfg, n, rho, threads,
                                        with_decomposition=False)
        rec = _base_record(cfg, n, rho, xs, exp)
        rec.containment_fraction = float(np.mean(xs > 0))
        records.append(rec)
    return _result(cfg, records, t0)


def run_clt(cfg: ExperimentConfig, threads: int = 1) -> ExperimentResult:
    """KS distance of the standardized count, plus both components."""
    _require_kind(cfg, "clt")
    regime = classify_regime(cfg.motif, cfg.schedule.gamma)
    if regime in ("below_containment", "at_containment"):
        raise ValueError(f"normality run not meaningful in regime {regime!r}")
    t0 = time.perf_counter()
    records = []
    for n in cfg.n_values:
        rho = schedule_rho(cfg.schedule, n)
        xs, d1, d2, exp = _run_replicates(cfg, n, rho, threads, True)
        rec = _base_record(cfg, n, rho, xs, exp)
        sd = float(np.std(xs, ddof=1))
        if sd == 0.0:
            raise ValueError("zero empirical variance of the count")
        rec.ks_x = ks_test(standardize(xs, float(np.mean(xs)), sd))
        rec.ks_delta1 = _ks_or_none(d1)
        rec.ks_delta2 = _ks_or_none(d2)
        _fill_component_stats(rec, d1, d2)
        records.append(rec)
    return _result(cfg, records, t0)


def run_variance_ratio(cfg: ExperimentConfig, threads: int = 1) -> ExperimentResult:
    """Empirical shares of the two components in the total variance."""
    _require_kind(cfg, "variance_ratio")
    regime = classify_regime(cfg.motif, cfg.schedule.gamma)
    if regime in ("below_containment", "at_containment"):
        raise ValueError(f"variance ratios not meaningful in regime {regime!r}")
    t0 = time.perf_counter()
    records = []
    for n in cfg.n_values:
        rho = schedule_rho(cfg.schedule, n)
        xs, d1, d2, exp = _run_replicates(cfg, n, rho, threads, True)
        rec = _base_record(cfg, n, rho, xs, exp)
        _fill_component_stats(rec, d1, d2)
        records.append(rec)
    return _result(cfg, records, t0)


def run_critical_kappa(cfg: ExperimentConfig, threads: int = 1) -> ExperimentResult:
    """Pinned-sparsity runs against the predicted critical share."""
    _require_kind(cfg, "critical_kappa")
    m, w = cfg.motif, cfg.graphon
    if is_motif_regular(m, w):
        raise ValueError("critical share undefined for a regular graphon")
    m1 = float(density_exponents(m).m1)
    if abs(cfg.schedule.gamma * m1 - 1.0) > 1e-9:
        raise ValueError("schedule exponent must equal 1/m1 for a pinned run")
    c = cfg.schedule.a ** m1
    kappa = critical_edge_variance_share(m, w, c)
    t0 = time.perf_counter()
    records = []
    for n in cfg.n_values:
        rho = schedule_rho(cfg.schedule, n)
        if abs(n * rho ** m1 - c) > 1e-9 * c:
            raise ValueError(f"pinning broken at n={n}: n rho^m1 != c")
        xs, d1, d2, exp = _run_replicates(cfg, n, rho, threads, True)
        rec = _base_record(cfg, n, rho, xs, exp)
        _fill_component_stats(rec, d1, d2)
        rec.c_value = c
        rec.kappa_theory = kappa
        rec.ks_delta1 = _ks_or_none(d1)
        rec.ks_delta2 = _ks_or_none(d2)
        records.append(rec)
    return _result(cfg, records, t0)


def run_conditional_clt(cfg: ExperimentConfig, threads: int = 1) -> ExperimentResult:
    """Edge-component normality at one frozen latent draw per n."""
    _require_kind(cfg, "conditional_clt")
    m, w = cfg.motif, cfg.graphon
    t0 = time.perf_counter()
    records = []
    for n in cfg.n_values:
        rho = schedule_rho(cfg.schedule, n)
        lat_seed = replicate_seed(cfg.seed, n, _LATENT_TAG)
        latents = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence(lat_seed))).random(n)
        cond = conditional_expected_count(latents, m, w, rho)
        exp = expected_count(m, w, n, rho)
        R = cfg.replicates
        xs = np.empty(R)

        def work(r: int):
            g = resample_edges(w, latents, rho, replicate_seed(cfg.seed, n, r))
            xs[r] = count(g, m)

        _dispatch(work, R, threads)
        d1 = xs - cond
        rec = _base_record(cfg, n, rho, xs, exp)
        # the latents are frozen, so the replicate mean tracks the
        # conditional expectation, not the unconditional one
        rec.mean_within_4se = (abs(rec.mean_x - cond) <= 4.0 * rec.se_x
                               if rec.se_x > 0 else rec.mean_x == cond)
        rec.cond_mean = cond
        rec.cond_var_empirical = float(np.var(d1, ddof=1))
        rec.cond_ks = _ks_or_none(d1)
        rec.ks_delta1 = rec.cond_ks
        records.append(rec)
    return _result(cfg, records, t0)


def run_experiment(cfg: ExperimentConfig, threads: int = 1) -> ExperimentResult:
    runner = {
        "containment": run_containment,
        "clt": run_clt,
        "variance_ratio": run_variance_ratio,
        "critical_kappa": run_critical_kappa,
        "conditional_clt": run_conditional_clt,
    }[cfg.experiment_kind]
    return runner(cfg, threads=threads)


def _fill_component_stats(rec: CellRecord, d1, d2):
    rec.var_delta1 = float(np.var(d1, ddof=1))
    rec.var_delta2 = float(np.var(d2, ddof=1))
    cov, _ = covariance_and_se(d1, d2)
    rec.cov_delta12 = cov
    denom = math.sqrt(rec.var_delta1 * rec.var_delta2)
    rec.corr_delta12 = cov / denom if denom > 0 else 0.0
    if rec.var_delta1 + rec.var_delta2 > 0:
        rec.r1 = rec.var_delta1 / (rec.var_delta1 + rec.var_delta2)
        rec.r2 = 1.0 - rec.r1


def _require_kind(cfg: ExperimentConfig, kind: str):
    if cfg.experiment_kind != kind:
        raise ValueError(f"config kind {cfg.experiment_kind!r}, runner {kind!r}")


def _result(cfg, records, t0) -> ExperimentResult:
    return ExperimentResult(experiment_kind=cfg.experiment_kind,
                            config=cfg.to_json_dict(),
                            records=records,
                            runtime_seconds=time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# per-replicate rows and file output

SUMMARY_CSV_COLUMNS = (
    "n", "rho", "replicates", "expected_count", "mean_x", "se_x", "var_x",
    "mean_within_4se", "containment_fraction", "var_delta1", "var_delta2",
    "cov_delta12", "corr_delta12", "r1", "r2", "ks_x", "ks_delta1",
    "ks_delta2", "c_value", "kappa_theory", "cond_ks", "cond_mean",
    "cond_var_empirical",
)


def replicate_rows(cfg: ExperimentConfig, threads: int = 1) -> list:
    """Full per-replicate decomposition rows for every (n, replicate)."""
    m, w = cfg.motif, cfg.graphon
    rows = []
    for n in cfg.n_values:
        rho = schedule_rho(cfg.schedule, n)
        exp = expected_count(m, w, n, rho)
        R = cfg.replicates
        cell = [None] * R

        def work(r: int):
            seed = replicate_seed(cfg.seed, n, r)
            g = sample(w, n, rho, seed)
            x = count(g, m)
            cond = conditional_expected_count(g.latents, m, w, rho)
            cell[r] = (seed, n, rho, x, exp, cond, x - exp, x - cond,
                       cond - exp)

        _dispatch(work, R, threads)
        rows.extend(cell)
    return rows


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, NormalityReport):
        return repr(value.ks_statistic)
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_result(result: ExperimentResult, out_dir,
                 replicate_table: list = None):
    """Write summary.json and summary.csv (and optionally replicates.csv).

    All files are byte-deterministic functions of the result contents.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "summary.json").write_text(result.to_json())
    with open(out / "summary.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SUMMARY_CSV_COLUMNS)
        for rec in result.records:
            writer.writerow([_csv_cell(getattr(rec, col))
                             for col in SUMMARY_CSV_COLUMNS])
    if replicate_table is not None:
        with open(out / "replicates.csv", "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(REPLICATE_CSV_HEADER)
            for row in replicate_table:
                writer.writerow([_csv_cell(v) for v in row])
