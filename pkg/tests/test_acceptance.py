"""Acceptance suite: one test per numbered criterion, each with a wall-clock
budget and an independent oracle where the expected value is not pinned by
hand.  Every test logs a single [C*] PASS line; a budget overrun or a wrong
value fails the test outright.
"""

import json
import logging
import random
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction

from oracles import laurent_ideal_member, random_code, random_poly, window_log2_count

from starshift import codes, gf2, laurent, rigidity, windows
from starshift.codes import (
    even_weight_code,
    full_code,
    hamming8_code,
    repetition_code,
)
from starshift.gf2 import F2Vector
from starshift.laurent import LaurentPoly, LinearFormIdeal, annihilator_ideal
from starshift.windows import Box, build_window_space, cube

log = logging.getLogger("acceptance")


@contextmanager
def budget(label, seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"{label} took {elapsed:.2f}s, budget {seconds}s"
    log.info("[%s] PASS in %.2fs (budget %ss)", label, elapsed, seconds)


def test_c1_code_facts():
    with budget("C1", 1.0):
        c8 = hamming8_code()
        assert c8.dim == 4
        assert codes.dual(c8) == c8
        assert codes.weight_class(c8) == "doubly-even"
        assert codes.is_self_orthogonal(c8)
        assert codes.contains_all_ones(c8)
        for d in range(2, 13):
            assert codes.dual(even_weight_code(d)) == repetition_code(d)
        rng = random.Random(10)
        for _ in range(100):
            d = rng.randint(1, 16)
            c = random_code(rng, d, d)
            assert c.dim + codes.dual(c).dim == d


def test_c2_weight_and_support_sum_identities():
    with budget("C2", 1.0):
        rng = random.Random(20)
        for _ in range(10_000):
            d = rng.randint(1, 12)
            v = F2Vector(d, rng.getrandbits(d))
            w = F2Vector(d, rng.getrandbits(d))
            m = [rng.randint(-(10**6), 10**6) for _ in range(d)]
            vw = gf2.cw_product(v, w)
            assert gf2.weight(v + w) == gf2.weight(v) + gf2.weight(w) - 2 * gf2.weight(vw)
            assert 2 * codes.support_sum(m, vw) == (
                codes.support_sum(m, v)
                + codes.support_sum(m, w)
                - codes.support_sum(m, v + w)
            )


def test_c3_integral_nondegeneracy():
    with budget("C3", 5.0):
        c8 = hamming8_code()
        assert codes.is_integrally_nondegenerate(c8).verdict
        rng = random.Random(30)
        for _ in range(1000):
            n = [rng.randint(-(10**6), 10**6) for _ in range(8)]
            if not any(n):
                n[rng.randrange(8)] = 1
            w = codes.nondegeneracy_witness(c8, n)
            assert codes.contains_vector(c8, w)
            assert codes.support_sum(n, w) != 0
        cert = codes.is_integrally_nondegenerate(even_weight_code(2))
        assert not cert.verdict
        k = cert.kernel_witness
        assert k is not None and any(k)
        for v in codes.codewords(even_weight_code(2)):
            assert codes.support_sum(k, v) == 0


def _cleared_degree(p: LaurentPoly) -> int:
    if p.is_zero:
        return 0
    shift = tuple(max(0, -e) for e in p.min_exponents())
    return max(sum(e + s for e, s in zip(t, shift)) for t in p.terms)


def _random_member(rng: random.Random, gcode) -> LaurentPoly:
    gens = [laurent.linear_form(v) for v in gcode.basis.row_vectors()]
    q = LaurentPoly.zero(gcode.length)
    for _ in range(rng.randint(1, 2)):
        mono = LaurentPoly.monomial(tuple(rng.randint(-1, 1) for _ in range(gcode.length)))
        q = q + mono * rng.choice(gens)
    return q


def test_c4_ideal_membership_against_oracle():
    with budget("C4", 30.0):
        rng = random.Random(40)
        confirmed = 0
        for k in range(200):
            d = rng.randint(1, 4)
            gcode = random_code(rng, d, min(3, d))
            ideal = LinearFormIdeal(d, gcode)
            while True:
                if k % 2 == 0 and gcode.dim > 0:
                    q = _random_member(rng, gcode)
                else:
                    q = random_poly(rng, d, max_terms=4, exp_bound=2)
                if _cleared_degree(q) <= 6:
                    break
            got = laurent.ideal_contains(ideal, q)
            assert got == laurent_ideal_member(gcode, q)
            if got:
                cofs = laurent.membership_cofactors(ideal, q)
                assert cofs is not None
                assert laurent.verify_cofactors(ideal, q, cofs)
                confirmed += 1
        assert confirmed >= 50

        e2_ideal = annihilator_ideal(even_weight_code(2))
        p = LaurentPoly.from_terms(2, [(1, -1), (0, 0)])
        assert laurent.ideal_contains(e2_ideal, p)
        cofs = laurent.membership_cofactors(e2_ideal, p)
        assert cofs is not None and laurent.verify_cofactors(e2_ideal, p, cofs)

        c8_ideal = annihilator_ideal(hamming8_code())
        u1_plus_1 = LaurentPoly.from_terms(8, [(1,) + (0,) * 7, (0,) * 8])
        assert not laurent.ideal_contains(c8_ideal, u1_plus_1)
        assert laurent.membership_cofactors(c8_ideal, u1_plus_1) is None


def test_c5_window_counts_against_enumeration():
    with budget("C5", 5.0):
        shapes = [(2, 2), (2, 3), (3, 2), (3, 3)]
        for code in (even_weight_code(2), repetition_code(2), full_code(2)):
            for shape in shapes:
                box = Box((0, 0), shape)
                space = build_window_space(box, code)
                assert windows.log2_count(space) == window_log2_count(box, code)
        e2 = even_weight_code(2)
        assert windows.log2_count(build_window_space(cube(2, 2), e2)) == 3
        assert windows.log2_count(build_window_space(cube(2, 3), e2)) == 5


def test_c6_entropy_profiles():
    with budget("C6", 60.0):
        assert windows.entropy_profile(even_weight_code(2), [2, 3, 4]) == [
            Fraction(3, 4),
            Fraction(5, 9),
            Fraction(7, 16),
        ]
        for code in (even_weight_code(8), hamming8_code()):
            profile = windows.entropy_profile(code, [2, 3])
            assert all(v < 1 for v in profile)
            assert profile[0] > profile[1]
        assert windows.entropy_profile(full_code(2), [2, 3]) == [
            Fraction(1),
            Fraction(1),
        ]


def _run_verify(d, *, as_json=False, extra=()):
    argv = [
        sys.executable,
        "-m",
        "starshift",
        "verify",
        "-d",
        str(d),
        "--box",
        "2",
        "--samples",
        "100",
        "--seed",
        "0",
    ]
    if as_json:
        argv.append("--json")
    argv.extend(extra)
    return subprocess.run(argv, capture_output=True, text=True)


def test_c7_full_verification_sweep():
    with budget("C7", 120.0):
        for d in (8, 9, 10):
            proc = _run_verify(d)
            assert proc.returncode == 0, proc.stdout + proc.stderr
            assert "RESULT: PASS" in proc.stdout


def test_c8_exhaustive_toy():
    rigidity.exhaustive_toy_report.cache_clear()
    with budget("C8", 10.0):
        report = rigidity.exhaustive_toy_report()
        assert report.passed
        by_name = {c.name: c for c in report.checks}
        sweep = by_name["toy_exhaustive_involution"].witness
        assert sweep["solutions"] == 64
        assert sweep["triples"] == 262_144
        assert by_name["toy_exhaustive_closure"].passed
        assert by_name["toy_exhaustive_equivariance"].passed
        witness = by_name["toy_nonaffine_witness"]
        assert witness.passed
        assert witness.witness["star_square_equals_x"] is True


def _strip_millis(obj):
    if isinstance(obj, dict):
        return {k: _strip_millis(v) for k, v in obj.items() if k != "millis"}
    if isinstance(obj, list):
        return [_strip_millis(v) for v in obj]
    return obj


def test_c9_deterministic_reports():
    with budget("C9", 120.0):
        runs = []
        for _ in range(2):
            proc = _run_verify(8, as_json=True)
            assert proc.returncode == 0, proc.stderr
            runs.append(proc.stdout)
        a, b = (json.dumps(_strip_millis(json.loads(text)), indent=2) for text in runs)
        assert a.encode() == b.encode()
