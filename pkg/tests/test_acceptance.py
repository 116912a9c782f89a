"""Acceptance run: one line per criterion, at the stated trial counts and tolerances.

Run under pytest (``pytest tests/test_acceptance.py -s``) or directly
(``python tests/test_acceptance.py``).  Suites run with seed 42 and their
default trial counts; each criterion passes only if every check in its
suites holds.
"""
import sys
import time

import pytest

from catrand.suites import run_suite

SEED = 42
TIME_BUDGET = 300.0

CRITERIA = {
    1: ("closed-form catalytic entropies of diag(1/2, 1/4, 1/4)", ["closed_forms"]),
    2: ("REO dimension doubling for pi_d, d = 2, 3, 4", ["reo_doubling"]),
    3: ("channel and state zoo values", ["zoo"]),
    4: ("partial-transpose criterion on 200 unitaries per pair", ["theorem2"]),
    5: ("extraction bound and DREO achievability", ["theorem3", "theorem6"]),
    6: ("TQ-TQ pure states useless, C-Q states useful", ["theorem4"]),
    7: ("least disordered state example and majorization", ["theorem13"]),
    8: ("no-stealth over 200 product superunitaries", ["nostealth"]),
    9: ("randomness chains, quantum doubling and classical monotone", ["chain"]),
    10: ("classical catalytic permutations, exhaustive at 3 x 3", ["classical"]),
    11: ("preparation channel entropy equals state entropy", ["consistency"]),
}

_elapsed = {}


def evaluate(n: int):
    t0 = time.perf_counter()
    results = [r for name in CRITERIA[n][1] for r in run_suite(name, SEED)]
    _elapsed[n] = time.perf_counter() - t0
    failures = [f"{r.name}: {f}" for r in results for f in r.failures]
    return not failures, failures


def _line(n: int, ok: bool) -> str:
    return f"criterion {n}: {'PASS' if ok else 'FAIL'}  {CRITERIA[n][0]}  ({_elapsed[n]:.2f} s)"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, failures = evaluate(n)
    with capsys.disabled():
        print("\n" + _line(n, ok), end="")
    assert ok, failures


def test_total_runtime_within_budget():
    if len(_elapsed) < len(CRITERIA):
        pytest.skip("needs every criterion to have run in this session")
    assert sum(_elapsed.values()) < TIME_BUDGET


if __name__ == "__main__":
    all_ok = True
    for n in sorted(CRITERIA):
        ok, failures = evaluate(n)
        all_ok &= ok
        print(_line(n, ok))
        for f in failures:
            print(f"    {f}")
    total = sum(_elapsed.values())
    print(f"total {total:.1f} s (budget {TIME_BUDGET:.0f} s)")
    sys.exit(0 if all_ok and total < TIME_BUDGET else 1)
