"""End-to-end acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line (visible with or without
``-s``); ``python tests/test_acceptance.py`` prints just the ten lines.
"""

import math
import time

import numpy as np
import pytest

from projconst.bounds import Cubic, cubic_root_upper, kadets_snobar, kll_upper, pair_sum_cubic
from projconst.families import enumerate_two_graphs
from projconst.search import OptimizerConfig, random_sign_matrix, table
from projconst.verify import (
    complement_deviation,
    gradient_instance,
    gradient_relative_error,
    kronecker_deviation,
    blow_up_deviation,
    polygon_profile,
    pruning_agreement,
    random_real_cubic,
    verify_pi2,
    verify_pi36,
    verify_pi46,
)

GOLDEN = (1 + math.sqrt(5)) / 2
_reports = {}


def _report(key, fn):
    # criteria 1-3 are reused by criterion 8
    if key not in _reports:
        start = time.perf_counter()
        rep = fn(OptimizerConfig())
        _reports[key] = (rep, time.perf_counter() - start)
    return _reports[key]


def _announce(request, number, title, ok, detail):
    line = f"[criterion {number:2d}] {'PASS' if ok else 'FAIL'}  {title}  ({detail})"
    capman = request.config.pluginmanager.getplugin("capturemanager") if request else None
    if capman is not None:
        with capman.global_and_fixture_disabled():
            print("\n" + line)
    else:
        print(line)
    return ok


@pytest.fixture
def announce(request):
    return lambda *args: _announce(request, *args)


def check_1():
    rep, secs = _report("pi2", verify_pi2)
    best = rep.values["best"]
    ok = rep.passed and abs(best - 4 / 3) <= 1e-7 and secs < 30
    return ok, f"best={best:.12g}, {secs:.1f}s"


def check_2():
    from oracles import brute_class_count

    rep, secs = _report("pi36", verify_pi36)
    classes = len(enumerate_two_graphs(6))
    oracle = all(len(enumerate_two_graphs(d)) == brute_class_count(d) for d in (3, 4, 5))
    value = rep.values["Pi(3,6)"]
    ok = (classes == 16 and oracle and abs(value - GOLDEN) <= 1e-6
          and abs(kll_upper(3, 6) - GOLDEN) <= 1e-12 and secs < 120)
    return ok, f"classes={classes}, Pi(3,6)={value:.12g}, {secs:.1f}s"


def check_3():
    rep, secs = _report("pi46", verify_pi46)
    value = rep.values["Pi(4,6)"]
    ok = rep.passed and abs(value - 5 / 3) <= 1e-6 and secs < 120
    return ok, f"Pi(4,6)={value:.12g}, {secs:.1f}s"


def check_4():
    rng = np.random.default_rng(2024)
    dev = max(blow_up_deviation(rng, d_max=8) for _ in range(200))
    return dev <= 1e-9, f"max deviation {dev:.2e}"


def check_5():
    rng = np.random.default_rng(5)
    mats = [random_sign_matrix(int(rng.integers(2, 11)), rng) for _ in range(100)]
    kron = max(kronecker_deviation(A) for A in mats)
    comp = max(complement_deviation(A) for A in mats)
    return kron <= 1e-10 and comp <= 1e-9, f"kronecker {kron:.2e}, complement {comp:.2e}"


def check_6():
    rows = polygon_profile(10)
    values = [v for _, v, _ in rows]
    mono = all(b <= a for a, b in zip(values, values[1:]))
    gap = max(g for _, _, g in rows)
    return mono and gap <= 1e-8, f"nonincreasing={mono}, max lambda1-lambda2={gap:.2e}"


def check_7():
    rng = np.random.default_rng(7)
    err = max(gradient_relative_error(*gradient_instance(rng)) for _ in range(50))
    return err <= 1e-4, f"max relative error {err:.2e}"


def check_8():
    certs = [c for key, fn in (("pi2", verify_pi2), ("pi36", verify_pi36), ("pi46", verify_pi46))
             for c in _report(key, fn)[0].certificates]
    slack = max(c.value - min(kll_upper(c.n, c.d), kadets_snobar(c.n)) for c in certs)
    t = table(3, 6)
    mono = all(v <= t[(n, d + 1)] + 1e-9 for (n, d), v in t.items() if (n, d + 1) in t)
    return slack <= 1e-9 and mono, f"{len(certs)} certificates, max value-bound {slack:.2e}, table monotone={mono}"


def check_9():
    rng = np.random.default_rng(9)
    worst = -np.inf
    for _ in range(1000):
        p, _ = random_real_cubic(rng)
        worst = max(worst, p.roots()[0] - cubic_root_upper(p))
    exact = 0.0
    for _ in range(200):
        p, _ = random_real_cubic(rng, symmetric=True)
        exact = max(exact, abs(cubic_root_upper(p) - p.roots()[0]))
    q = pair_sum_cubic(Cubic.from_roots(1, 2, 3))
    pair = float(np.max(np.abs(np.sort(q.roots()) - [3, 4, 5])))
    ok = worst <= 1e-9 and exact <= 1e-9 and pair <= 1e-9
    return ok, f"max(root - bound)={worst:.2e}, C=0 gap {exact:.2e}, pair sums {pair:.2e}"


def check_10():
    agree = pruning_agreement(2, range(3, 7))
    dev = max(abs(a - b) for a, b in agree.values())
    return dev <= 1e-9, f"max |pruned - full| = {dev:.2e} over d=3..6"


CRITERIA = [
    (1, "Pi_2 = 4/3 reproduction", check_1),
    (2, "Pi(3,6) = golden ratio reproduction", check_2),
    (3, "Pi(4,6) = 5/3 reproduction", check_3),
    (4, "blow-up spectrum identity", check_4),
    (5, "Kronecker and complement identities", check_5),
    (6, "polygon monotonicity and multiplicity", check_6),
    (7, "gradient vs finite differences", check_7),
    (8, "bound dominance and table monotonicity", check_8),
    (9, "cubic root tools", check_9),
    (10, "K4-free pruning soundness", check_10),
]


@pytest.mark.parametrize("number,title,check", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, check, announce):
    ok, detail = check()
    assert announce(number, title, ok, detail), detail


if __name__ == "__main__":
    import sys

    failures = sum(not _announce(None, n, title, *check()) for n, title, check in CRITERIA)
    sys.exit(1 if failures else 0)
