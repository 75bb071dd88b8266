"""
.. currentmodule:: chirality

Sampling experiments
--------------------

Five point pairs fail to have a chiral reconstruction with positive
probability. :func:`census_run` makes this visible by deciding many random
inputs; :func:`perturbation_probe` checks that an answer survives small
perturbations of the data.

Each sample draws from its own generator seeded by ``(seed, index)``, so
serial and threaded runs see the same inputs.

.. autoclass:: SampleConfig
.. autofunction:: sample_pairs
.. autoclass:: CensusStats
.. autofunction:: census_run
.. autoclass:: PerturbationReport
.. autofunction:: perturbation_probe
"""

__copyright__ = """
Copyright (C) 2024 chirality contributors
"""

__license__ = """
Permission is hereby granted, free of charge, to any person obtaining a copy
of this software and associated documentation files (the "Software"), to deal
in the Software without restriction, including without limitation the rights
to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
copies of the Software, and to permit persons to whom the Software is
furnished to do so, subject to the following conditions:

The above copyright notice and this permission notice shall be included in
all copies or substantial portions of the Software.

THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN
THE SOFTWARE.
"""

import logging
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

import numpy as np

from pytools import ProcessLogger

from chirality.arithmetic import ArithmeticContext, get_thread_count, resolve
from chirality.decide import Decision, DecisionStatus, decide
from chirality.geometry import InvalidPairSet, PairSet


logger = logging.getLogger(__name__)


GENERATORS = ("grid", "rational")
OUTCOMES = ("yes", "no", "unknown", "nongeneric")


# {{{ sampling

@dataclass(frozen=True)
class SampleConfig:
    """
    .. attribute:: seed
    .. attribute:: n
    .. attribute:: generator

        ``"grid"`` draws integer coordinates from the closed range *grid*;
        ``"rational"`` draws multiples of ``1/denominator`` from the same
        range.

    .. attribute:: grid
    .. attribute:: denominator
    .. attribute:: k
    """

    seed: int = 42
    n: int = 2000
    generator: str = "grid"
    grid: Tuple[int, int] = (0, 8)
    denominator: int = 16
    k: int = 5

    def __post_init__(self) -> None:
        if self.generator not in GENERATORS:
            raise ValueError(f"unknown generator '{self.generator}'; "
                    f"expected one of {GENERATORS}")
        if self.n < 0:
            raise ValueError(f"sample count must be nonnegative, got {self.n}")
        if self.k < 1:
            raise ValueError(f"need at least one pair per sample, got {self.k}")
        lo, hi = self.grid
        if (hi - lo + 1)**2 < self.k:
            raise ValueError(f"grid {self.grid} has fewer than {self.k} points")
        if self.denominator < 1:
            raise ValueError("denominator bound must be positive")

    def rng(self, index: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, index])


def _draw_points(cfg: SampleConfig, rng: np.random.Generator) -> list:
    lo, hi = cfg.grid
    if cfg.generator == "grid":
        coords = rng.integers(lo, hi + 1, size=(cfg.k, 2))
        return [[int(x), int(y)] for x, y in coords]

    den = cfg.denominator
    coords = rng.integers(lo * den, hi * den + 1, size=(cfg.k, 2))
    return [[Fraction(int(x), den), Fraction(int(y), den)] for x, y in coords]


def sample_pairs(cfg: SampleConfig, index: int,
        actx: Optional[ArithmeticContext] = None) -> PairSet:
    """Draw sample *index*; inputs with repeated points are redrawn from the
    same generator.
    """
    rng = cfg.rng(index)
    while True:
        u = _draw_points(cfg, rng)
        v = _draw_points(cfg, rng)
        try:
            return PairSet.from_affine(u, v, actx)
        except InvalidPairSet:
            continue


def classify(decision: Decision) -> str:
    if decision.status is DecisionStatus.UNKNOWN:
        return "nongeneric" if decision.reason == "non-generic" else "unknown"
    return decision.status.value

# }}}


# {{{ census

@dataclass
class CensusStats:
    """
    .. attribute:: counts

        Number of samples per outcome in ``("yes", "no", "unknown",
        "nongeneric")``.

    .. attribute:: examples

        First sample of each outcome that occurred.

    .. attribute:: outcomes

        Outcome of every sample, by index.

    .. attribute:: runtime

        Wall clock seconds.
    """

    config: SampleConfig
    counts: Dict[str, int]
    examples: Dict[str, Tuple[int, PairSet]] = field(default_factory=dict)
    outcomes: Tuple[str, ...] = ()
    runtime: float = 0.0

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def frequency(self, outcome: str) -> float:
        if outcome not in OUTCOMES:
            raise ValueError(f"unknown outcome '{outcome}'")
        if self.total == 0:
            return 0.0
        return self.counts[outcome] / self.total


def census_run(cfg: SampleConfig,
        actx: Optional[ArithmeticContext] = None) -> CensusStats:
    actx = resolve(actx)

    def run(index: int) -> Tuple[str, PairSet]:
        pairs = sample_pairs(cfg, index, actx)
        return classify(decide(pairs, find_witness=False)), pairs

    start = time.perf_counter()
    with ProcessLogger(logger, f"census of {cfg.n} samples with k={cfg.k}"):
        nthreads = get_thread_count()
        if nthreads == 1 or cfg.n < 2:
            results = [run(index) for index in range(cfg.n)]
        else:
            from concurrent.futures import ThreadPoolExecutor
            with ThreadPoolExecutor(max_workers=nthreads) as executor:
                results = list(executor.map(run, range(cfg.n)))

    counts = Counter({outcome: 0 for outcome in OUTCOMES})
    examples: Dict[str, Tuple[int, PairSet]] = {}
    for index, (outcome, pairs) in enumerate(results):
        counts[outcome] += 1
        examples.setdefault(outcome, (index, pairs))

    stats = CensusStats(cfg, dict(counts), examples,
            tuple(outcome for outcome, _ in results),
            time.perf_counter() - start)
    logger.info("census counts: %s", stats.counts)
    return stats

# }}}


# {{{ perturbation probe

@dataclass(frozen=True)
class PerturbationReport:
    """
    .. attribute:: baseline
    .. attribute:: radius
    .. attribute:: trials
    .. attribute:: preserved

        Number of trials with the same answer as :attr:`baseline`.

    .. attribute:: outcomes
    """

    baseline: DecisionStatus
    radius: Fraction
    trials: int
    preserved: int
    outcomes: Dict[str, int]

    @property
    def preserved_fraction(self) -> float:
        return self.preserved / self.trials if self.trials else 1.0


_PERTURBATION_STEPS = 64


def _perturbed(P: PairSet, radius: Fraction,
        rng: np.random.Generator) -> PairSet:
    actx = P.actx
    u, v = P.affine()
    while True:
        offsets = rng.integers(-_PERTURBATION_STEPS, _PERTURBATION_STEPS + 1,
                size=(2,) + u.shape)
        scale = actx.scalar(radius / _PERTURBATION_STEPS)
        du, dv = offsets.astype(object) * scale
        try:
            return PairSet.from_affine(u + du, v + dv, actx)
        except InvalidPairSet:
            continue


def perturbation_probe(P: PairSet, radius: Fraction, trials: int = 200,
        seed: int = 0) -> PerturbationReport:
    """Move every coordinate by a multiple of ``radius/64`` of magnitude at
    most *radius* and count how often the decision survives.
    """
    radius = Fraction(radius)
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")

    baseline = decide(P, find_witness=False).status
    if baseline is DecisionStatus.UNKNOWN:
        raise ValueError("perturbation probes need a decided input")

    rng = np.random.default_rng(seed)
    outcomes: Counter = Counter()
    preserved = 0
    with ProcessLogger(logger, f"{trials} perturbations of radius {radius}"):
        for _ in range(trials):
            status = decide(_perturbed(P, radius, rng), find_witness=False).status
            outcomes[status.value] += 1
            preserved += status is baseline

    return PerturbationReport(baseline, radius, trials, preserved,
            dict(outcomes))

# }}}

# vim: foldmethod=marker
