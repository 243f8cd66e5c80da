"""Acceptance criteria 1-9, one test each.

Every test prints a single ``ACCEPTANCE <n> PASS|FAIL ...`` line (run with
``pytest tests/test_acceptance.py -s`` to see them).
"""

import contextlib
import io
import random
import time

import pytest

from strongedge import certifier as cert
from strongedge.cli import main, run_campaign
from strongedge.coloring import ListAssignment, solve_strong_k, strong_chromatic_index, verify
from strongedge.graph import build_graph, conflict_graph, gen_cnplus, gen_cycle, gen_petersen
from strongedge.polynomial import (
    CapVector,
    FactorProduct,
    Monomial,
    degree,
    eta_derivative_oracle,
    eta_partial,
    expand_capped,
    is_homogeneous,
    random_polynomial,
)

from conftest import brute_strong_colorable


@contextlib.contextmanager
def criterion(num, label):
    t0 = time.perf_counter()
    info = {}
    try:
        yield info
    except BaseException:
        print(f"\nACCEPTANCE {num} FAIL {label} ({time.perf_counter() - t0:.1f}s) {info.get('detail', '')}")
        raise
    print(f"\nACCEPTANCE {num} PASS {label} ({time.perf_counter() - t0:.1f}s) {info.get('detail', '')}")


def cli(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def result_lines(text, name):
    return [line.split()[2] for line in text.splitlines() if line.startswith(f"RESULT {name} ")]


def test_criterion_1_claim1():
    with criterion(1, "C_6 coefficient is -5, deg 45") as info:
        t0 = time.perf_counter()
        code, text = cli("verify-paper", "--claim", "1")
        elapsed = time.perf_counter() - t0
        lines = text.splitlines()
        assert lines.index("CHECK factor-count ok deg(P1)=45") < lines.index("RESULT eta -5")
        assert code == 0 and result_lines(text, "eta") == ["-5"]
        assert elapsed <= 15 * 60
        info["detail"] = f"eta=-5 in {elapsed:.2f}s"


def test_criterion_2_claim2_direct_n7():
    with criterion(2, "n=7 direct coefficient is 1") as info:
        t0 = time.perf_counter()
        code, text = cli("verify-paper", "--claim", "2", "--n", "7", "--method", "direct")
        elapsed = time.perf_counter() - t0
        assert code == 0 and result_lines(text, "eta") == ["1"]
        assert elapsed <= 5 * 60
        info["detail"] = f"{elapsed:.2f}s"


def test_criterion_3_claim2_staged():
    with criterion(3, "staged n=8..20 gives (-1)^(n-1); direct agrees at 8, 9") as info:
        worst = 0.0
        for n in range(8, 21):
            t0 = time.perf_counter()
            rep = cert.verify_claim2_staged(n)
            elapsed = time.perf_counter() - t0
            worst = max(worst, elapsed)
            assert rep.value == (-1) ** (n - 1), n
            assert rep.passed, n
            assert elapsed <= 60, n
        for n in (8, 9):
            assert cert.verify_claim2_direct(n).value == cert.verify_claim2_staged(n).value
        info["detail"] = f"slowest n {worst:.2f}s"


def test_criterion_4_intermediate_identities():
    with criterion(4, "stage-0 identity and telescoping steps k=5..10") as info:
        for n in range(8, 21):
            rep = cert.verify_claim2_staged(n)
            name, ok, _ = rep.checks[0]
            assert name == "eta_J(0)" and ok, n
            assert all(ok for _, ok, _ in rep.checks), n
        for k in range(5, 11):
            assert cert.verify_telescope_step(k), k
        info["detail"] = "exact polynomial equality"


def test_criterion_5_bridge():
    with criterion(5, "factor pairs of the n-cycle product equal the C_n^+ conflicts") as info:
        for n in range(7, 21):
            p, _, _ = cert.build_claim2(n)
            pairs = [tuple(sorted(f)) for f in p.factors]
            assert len(pairs) == 7 * n == len(set(pairs))
            assert set(pairs) == conflict_graph(gen_cnplus(n)).edge_pairs()
        info["detail"] = "n=7..20"


def _small_graph(rng):
    n = rng.randint(2, 7)
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    rng.shuffle(pairs)
    return build_graph(n, pairs[:rng.randint(1, min(10, len(pairs)))])


def test_criterion_6_certificate_soundness():
    with criterion(6, "100 searched certificates x 20 soundness trials") as info:
        rng = random.Random(6)
        certs = []
        while len(certs) < 100:
            g = _small_graph(rng)
            if g.m > 10:
                continue
            c = cert.certificate_for_conflicts(conflict_graph(g), seed=rng.randrange(10**6))
            if c is not None:
                assert cert.check_certificate(c)
                certs.append(c)
        ok = total = 0
        for idx, c in enumerate(certs):
            palette = max(c.s_bounds) + 6
            rep = cert.soundness_trial(c, idx, 20, palette)
            ok += rep.successes
            total += rep.trials
        info["detail"] = f"{ok}/{total}"
        assert (ok, total) == (2000, 2000)


def test_criterion_7_polynomial_properties():
    with criterion(7, "1000 random instances, five engine properties") as info:
        rng = random.Random(7)
        for _ in range(1000):
            nv = rng.randint(2, 5)
            factors = []
            for _ in range(rng.randint(0, 7)):
                a, b = rng.sample(range(nv), 2)
                factors.append((a, b))
            fp = FactorProduct(nv, factors)
            full = fp.expand_naive()
            # cap soundness
            caps = CapVector(tuple(rng.randint(0, 4) for _ in range(nv)))
            capped = expand_capped(fp, caps)
            assert all(caps.admits(m) for m in capped.terms)
            assert all(capped.coefficient(m) == c for m, c in full.terms.items() if caps.admits(m))
            # homogeneity
            assert is_homogeneous(full)
            assert not full or degree(full) == len(factors)
            # sign antisymmetry
            if factors:
                assert expand_capped(fp.flipped(rng.randrange(len(factors)))) == -full
            # eta linearity and the derivative oracle
            p = random_polynomial(rng, nv, 6, 3)
            q = random_polynomial(rng, nv, 6, 3)
            a, b = rng.randint(-5, 5), rng.randint(-5, 5)
            j = Monomial((v, rng.randint(0, 3)) for v in rng.sample(range(nv), rng.randint(1, nv)))
            assert eta_partial(p * a + q * b, j) == eta_partial(p, j) * a + eta_partial(q, j) * b
            assert eta_partial(p, j) == eta_derivative_oracle(p, j)
            assert eta_partial(full, j) == eta_derivative_oracle(full, j)
        info["detail"] = "1000/1000"


def test_criterion_8_solver_oracle():
    with criterion(8, "solver vs exhaustive enumeration; small strong indices") as info:
        rng = random.Random(8)
        checked = 0
        for _ in range(200):
            n = rng.randint(2, 8)
            pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
            rng.shuffle(pairs)
            g = build_graph(n, pairs[:rng.randint(0, min(8, len(pairs)))])
            for k in range(0, 5):
                sol = solve_strong_k(g, k)
                assert (sol is not None) == brute_strong_colorable(g, [range(1, k + 1)] * g.m)
                if sol is not None:
                    assert verify(g, sol) == []
                checked += 1
        for n, want in ((5, 5), (6, 3), (7, 4)):
            g = gen_cycle(n)
            assert strong_chromatic_index(g) == want
            assert brute_strong_colorable(g, [range(want)] * g.m)
            assert not brute_strong_colorable(g, [range(want - 1)] * g.m)
        t0 = time.perf_counter()
        pet = gen_petersen()
        assert strong_chromatic_index(pet) == 5
        assert verify(pet, solve_strong_k(pet, 5)) == []
        assert time.perf_counter() - t0 <= 600
        info["detail"] = f"{checked} (graph, k) pairs"


@pytest.mark.parametrize("kind", ["cubic", "weight6"])
def test_criterion_9_campaigns(kind):
    with criterion(9, f"{kind} campaign, 100 graphs, 10-lists from 30 colors") as info:
        ok = 0
        for _, g, lists, sol in run_campaign(kind, 100, 24 if kind == "cubic" else 20, 1, 30):
            assert isinstance(lists, ListAssignment)
            if kind == "cubic":
                assert g.n <= 24
            if sol is not None and not verify(g, sol, lists):
                ok += 1
        info["detail"] = f"{ok}/100"
        assert ok == 100
