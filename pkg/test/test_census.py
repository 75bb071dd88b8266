"""Testing for random sampling and perturbation probes."""

__copyright__ = "Copyright (C) 2024 chirality contributors"

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
from fractions import Fraction

import pytest

from chirality import (
    DecisionStatus, ExactArithmeticContext, SampleConfig, census_run,
    perturbation_probe, sample_pairs)
from chirality.census import OUTCOMES

from testlib import chiral_five, nonchiral_five


logger = logging.getLogger(__name__)


# {{{ test_sample_config

def test_sample_config():
    cfg = SampleConfig()
    assert (cfg.seed, cfg.n, cfg.grid, cfg.k) == (42, 2000, (0, 8), 5)

    with pytest.raises(ValueError):
        SampleConfig(generator="gaussian")
    with pytest.raises(ValueError):
        SampleConfig(n=-1)
    with pytest.raises(ValueError):
        SampleConfig(grid=(0, 1), k=5)

# }}}


# {{{ test_sample_pairs

def test_sample_pairs():
    actx = ExactArithmeticContext()
    cfg = SampleConfig(n=10)

    a = sample_pairs(cfg, 3, actx)
    b = sample_pairs(cfg, 3, actx)
    assert a.k == 5
    assert actx.is_zero(a.u - b.u) and actx.is_zero(a.v - b.v)

    lo, hi = cfg.grid
    for x in a.u[:, :2].ravel():
        assert lo <= x <= hi and x == int(x)

    cfg = SampleConfig(generator="rational", denominator=4, grid=(-1, 1))
    P = sample_pairs(cfg, 0, actx)
    for x in P.v[:, :2].ravel():
        assert -1 <= x <= 1
        assert (4 * Fraction(x)).denominator == 1

# }}}


# {{{ test_census_run

def test_census_run():
    actx = ExactArithmeticContext()
    cfg = SampleConfig(n=12, seed=7)

    stats = census_run(cfg, actx)
    assert stats.total == 12
    assert set(stats.counts) == set(OUTCOMES)
    assert len(stats.outcomes) == 12
    assert abs(sum(stats.frequency(o) for o in OUTCOMES) - 1) < 1e-12

    for outcome, (index, P) in stats.examples.items():
        assert stats.outcomes[index] == outcome
        assert P.k == 5

    # reproducible from the seed
    again = census_run(cfg, actx)
    assert again.outcomes == stats.outcomes

    with pytest.raises(ValueError):
        stats.frequency("maybe")


def test_census_small_k(monkeypatch):
    monkeypatch.setenv("CHIRALITY_THREADS", "2")
    stats = census_run(SampleConfig(n=6, k=3), ExactArithmeticContext())
    assert stats.counts["yes"] == 6


@pytest.mark.slow
def test_census_frequencies():
    stats = census_run(SampleConfig(seed=42, n=2000, grid=(0, 8)),
            ExactArithmeticContext())
    logger.info("census counts: %s", stats.counts)

    assert stats.total == 2000
    assert stats.frequency("yes") >= 0.01
    assert stats.frequency("no") >= 0.01

# }}}


# {{{ test_perturbation_probe

def test_perturbation_probe():
    actx = ExactArithmeticContext()

    # both instances keep their decision under small perturbations
    report = perturbation_probe(nonchiral_five(actx), "1/1000", trials=10, seed=1)
    assert report.baseline is DecisionStatus.NO
    assert report.radius == Fraction(1, 1000)
    assert report.trials == 10
    assert report.preserved == report.trials
    assert report.outcomes == {"no": 10}

    report = perturbation_probe(chiral_five(actx), Fraction(1, 1000), trials=10,
            seed=2)
    assert report.baseline is DecisionStatus.YES
    assert report.preserved == report.trials
    assert report.outcomes == {"yes": 10}

    with pytest.raises(ValueError):
        perturbation_probe(nonchiral_five(actx), 0)

# }}}


if __name__ == "__main__":
    import sys
    if len(sys.argv) > 1:
        exec(sys.argv[1])
    else:
        pytest.main([__file__])

# vim: fdm=marker
