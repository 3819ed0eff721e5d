"""Exit criteria.  Each test prints one PASS/FAIL line and enforces its
time bound; criteria without a stated bound get 60 s."""

import time

import pytest

from wreathmgs import acceptance as acc
from wreathmgs.errors import NotSatisfied
from wreathmgs.pscert import find_ps_witness

pytestmark = pytest.mark.acceptance
SEED = 7


def report(capsys, result, elapsed, bound):
    ok = result.passed and elapsed < bound
    with capsys.disabled():
        status = "PASS" if ok else "FAIL"
        print(f"\n[{status}] criterion {result.number}: {result.title} "
              f"({elapsed:.2f}s, bound {bound:g}s)")
    assert result.passed, result.details
    assert elapsed < bound


def timed(fn, *args):
    t0 = time.perf_counter()
    result = fn(*args)
    return result, time.perf_counter() - t0


def test_criterion_1_ps_positives(capsys):
    for name, group in acc.ps_positive_groups().items():
        _, elapsed = timed(find_ps_witness, group)
        assert elapsed < 10, name
    result, elapsed = timed(acc.criterion_1, SEED)
    report(capsys, result, elapsed, 10 * len(acc.ps_positive_groups()))


def test_criterion_2_ps_negatives(capsys):
    for name, (group, _) in acc.ps_negative_groups().items():
        t0 = time.perf_counter()
        with pytest.raises(NotSatisfied):
            find_ps_witness(group)
        assert time.perf_counter() - t0 < 1, name
    result, elapsed = timed(acc.criterion_2, SEED)
    report(capsys, result, elapsed, len(acc.ps_negative_groups()))


def test_criterion_3_lemma_replays(capsys):
    result, elapsed = timed(acc.criterion_3, SEED)
    report(capsys, result, elapsed, 30)


def test_criterion_4_generation(capsys):
    result, elapsed = timed(acc.criterion_4, SEED)
    report(capsys, result, elapsed, 5)


def test_criterion_5_parity(capsys):
    result, elapsed = timed(acc.criterion_5, SEED)
    report(capsys, result, elapsed, 20)


def test_criterion_6_theta_oracle(capsys):
    result, elapsed = timed(acc.criterion_6, SEED)
    report(capsys, result, elapsed, 30)


def test_criterion_7_growth_class(capsys):
    result, elapsed = timed(acc.criterion_7, SEED)
    report(capsys, result, elapsed, 60)


def test_criterion_8_algebra_axioms(capsys):
    result, elapsed = timed(acc.criterion_8, SEED)
    report(capsys, result, elapsed, 60)


def test_criterion_9_m0_structure(capsys):
    result, elapsed = timed(acc.criterion_9, SEED)
    report(capsys, result, elapsed, 60)
