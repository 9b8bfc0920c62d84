"""Monte Carlo fault-resilience sweeps.

Each trial draws an exact-count fault pattern from a seed derived from
``(master seed, m, c, p, trial)`` and scores every algorithm/scheme pair on
that same pattern, so comparisons between them are paired.
"""
from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .embed_faulty import ALGORITHMS, SCHEMES
from .fabric import build_fabric, apply_faults

DEFAULT_GRIDS = (4, 8, 16, 32)
DEFAULT_RATES = (2, 4, 5, 6, 8, 10, 15, 20, 25)

# column of each (algorithm, scheme) in the kernel output
_SLOT = {("fallback", "single"): 0, ("fallback", "flip-drop"): 1,
         ("greedy", "single"): 2, ("greedy", "flip-drop"): 3}

CSV_HEADER = ["m", "c", "p", "algorithm", "scheme", "trials", "mean_n", "var_n", "pct_of_max"]


@dataclass
class ExperimentConfig:
    c: int = 4
    grids: tuple = DEFAULT_GRIDS
    rates: tuple = DEFAULT_RATES
    algorithms: tuple = ALGORITHMS
    schemes: tuple = SCHEMES
    trials: int = 10_000
    seed: int = 0
    cross: bool = False
    histogram: bool = True
    workers: int = 1

    def __post_init__(self):
        self.grids = tuple(int(m) for m in self.grids)
        self.rates = tuple(float(p) for p in self.rates)
        self.algorithms = tuple(self.algorithms)
        self.schemes = tuple(self.schemes)
        if self.c < 1 or any(m < 1 for m in self.grids):
            raise ValueError("c and every grid size must be positive")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if any(not 0 <= p <= 100 for p in self.rates):
            raise ValueError("rates are percentages in [0, 100]")
        for a in self.algorithms:
            if a not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {a!r}")
        for s in self.schemes:
            if s not in SCHEMES:
                raise ValueError(f"unknown scheme {s!r}")


@dataclass
class CaseStats:
    m: int
    c: int
    p: float
    algorithm: str
    scheme: str
    trials: int
    mean_n: float
    var_n: float
    histogram: dict = field(default_factory=dict)

    @property
    def pct_of_max(self):
        return 100.0 * self.mean_n / (self.c * self.m + 1)


def summarize(samples):
    """Mean, population variance and integer histogram of clique orders."""
    arr = np.asarray(samples, dtype=np.int64)
    if arr.size == 0:
        raise ValueError("cannot summarize an empty sample")
    values, counts = np.unique(arr, return_counts=True)
    mean = float(arr.mean())
    var = float(((arr - mean) ** 2).mean())
    return mean, var, {int(v): int(k) for v, k in zip(values, counts)}


def _rate_key(p):
    # integer key for seeding, stable for rates given to 1e-6 percent
    return int(round(p * 1_000_000))


def trial_rng(seed, m, c, p, t):
    return np.random.default_rng(np.random.SeedSequence([seed, m, c, _rate_key(p), t]))


def sample_outcomes(m, c, p, trials, seed, cross=False, backend=None):
    """``(trials, 4)`` array of kernel outcomes for one (m, p) case."""
    base = build_fabric(m, c)
    out = np.empty((trials, 4), dtype=np.int64)
    for t in range(trials):
        f = apply_faults(base, rate=p / 100.0, seed=trial_rng(seed, m, c, p, t))
        out[t] = _kernels.trial_outcomes(f.grid, c, cross, backend)
    return out


def _case_job(args):
    m, c, p, trials, seed, cross = args
    return sample_outcomes(m, c, p, trials, seed, cross)


def run_trials(cfg):
    """Statistics for every (m, p, algorithm, scheme) case, in config order."""
    jobs = [(m, cfg.c, p, cfg.trials, cfg.seed, cfg.cross) for m in cfg.grids for p in cfg.rates]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_case_job, jobs))
    else:
        results = [_case_job(j) for j in jobs]
    stats = []
    for (m, c, p, trials, _, _), res in zip(jobs, results):
        for alg in cfg.algorithms:
            for scheme in cfg.schemes:
                mean, var, hist = summarize(res[:, _SLOT[(alg, scheme)]])
                stats.append(CaseStats(m, c, p, alg, scheme, trials, mean, var, hist))
    return stats


def _fmt_rate(p):
    return f"{p:g}"


def to_csv(stats, histogram=True):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for s in stats:
        w.writerow([s.m, s.c, _fmt_rate(s.p), s.algorithm, s.scheme, s.trials,
                    f"{s.mean_n:.6f}", f"{s.var_n:.6f}", f"{s.pct_of_max:.6f}"])
    if histogram:
        for s in stats:
            for n, count in sorted(s.histogram.items()):
                w.writerow(["hist", s.m, s.c, _fmt_rate(s.p), s.algorithm, s.scheme, n, count])
    return buf.getvalue()


def read_csv(text):
    """Parse :func:`to_csv` output back into ``CaseStats`` (histograms attached)."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != CSV_HEADER:
        raise ValueError("missing or wrong CSV header")
    stats = {}
    for row in rows[1:]:
        if row and row[0] == "hist":
            _, m, c, p, alg, scheme, n, count = row
            stats[(int(m), float(p), alg, scheme)].histogram[int(n)] = int(count)
            continue
        m, c, p, alg, scheme, trials, mean, var, _ = row
        stats[(int(m), float(p), alg, scheme)] = CaseStats(
            int(m), int(c), float(p), alg, scheme, int(trials), float(mean), float(var))
    return list(stats.values())


def _split(value):
    return [x for x in value.replace(",", " ").split() if x]


def parse_config(text):
    """Flat ``key = value`` config; lists are comma or space separated."""
    kwargs = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep:
            raise ValueError(f"line {lineno}: expected key = value")
        if key in ("c", "trials", "seed", "workers"):
            kwargs[key] = int(value)
        elif key == "grids":
            kwargs[key] = tuple(int(x) for x in _split(value))
        elif key == "rates":
            kwargs[key] = tuple(float(x) for x in _split(value))
        elif key in ("algorithms", "schemes"):
            kwargs[key] = tuple(_split(value))
        elif key in ("cross", "histogram"):
            if value.lower() not in ("true", "false", "1", "0", "yes", "no"):
                raise ValueError(f"line {lineno}: {key} must be a boolean")
            kwargs[key] = value.lower() in ("true", "1", "yes")
        else:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
    return ExperimentConfig(**kwargs)
