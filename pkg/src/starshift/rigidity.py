"""Construction and machine verification of the non-affine symmetry systems.

A triple system is a pair of codes (code, product_code) with the code
contained in the product code and closed under coordinatewise products
into it.  On the product of window spaces the shear map

    (x, y, z) -> (x, y, x * y + z)

is then a constraint-preserving involution commuting with all shifts,
yet fails the affine second-difference test.  This module builds the
standard family of such pairs, checks the premises exactly, and runs the
dynamical checks on sampled windows plus one exhaustive toy sweep.
"""

from __future__ import annotations

import functools
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import codes as codes_mod
from . import laurent as laurent_mod
from . import windows as windows_mod
from .codes import BinaryCode
from .errors import DegenerateCodeError, UnsupportedDimensionError
from .windows import Box, WindowConfig, WindowSpace, cube

__all__ = [
    "TripleSystem",
    "TripleConfig",
    "CheckResult",
    "VerificationReport",
    "construct_system",
    "describe_system",
    "shear",
    "shift_triple",
    "second_difference",
    "verify_premises",
    "verify_dynamics",
    "non_affine_witness",
    "exhaustive_toy_report",
    "run_full_verification",
]


@dataclass(frozen=True)
class TripleSystem:
    """A code pair driving the triple product of window spaces."""

    d: int
    code: BinaryCode
    product_code: BinaryCode

    def __post_init__(self):
        if self.code.length != self.d or self.product_code.length != self.d:
            raise ValueError("code lengths disagree with the declared dimension")


@dataclass(frozen=True)
class TripleConfig:
    """Three configurations on one shared box."""

    x: WindowConfig
    y: WindowConfig
    z: WindowConfig

    def __post_init__(self):
        if self.x.box != self.y.box or self.x.box != self.z.box:
            raise ValueError("components live on different boxes")

    @property
    def box(self) -> Box:
        return self.x.box

    def __add__(self, other: TripleConfig) -> TripleConfig:
        return TripleConfig(self.x + other.x, self.y + other.y, self.z + other.z)


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: object
    millis: float

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "witness": self.witness,
            "millis": round(self.millis, 3),
        }


@dataclass
class VerificationReport:
    system: dict
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "system": self.system,
            "checks": [c.to_dict() for c in self.checks],
            "passed": self.passed,
        }


def _timed_check(name: str, fn: Callable[[], tuple[bool, object]]) -> CheckResult:
    start = time.perf_counter()
    try:
        passed, witness = fn()
    except (ValueError, DegenerateCodeError) as exc:
        passed, witness = False, {"error": str(exc)}
    millis = (time.perf_counter() - start) * 1000.0
    return CheckResult(name, passed, witness, millis)


def _code_dict(c: BinaryCode) -> dict:
    return {
        "length": c.length,
        "dim": c.dim,
        "generators": [str(v) for v in c.basis.row_vectors()],
    }


def describe_system(system: TripleSystem) -> dict:
    return {
        "d": system.d,
        "code": _code_dict(system.code),
        "product_code": _code_dict(system.product_code),
    }


def construct_system(d: int) -> TripleSystem:
    """The standard code pair in dimension ``d``.

    Dimension 8 pairs the self-dual doubly even [8, 4] code with the
    even-weight code; higher dimensions pad both with a full block on
    the extra coordinates.

    Raises:
        UnsupportedDimensionError: for d < 8, where no such pair is
            provided by this construction.
    """
    if d < 8:
        raise UnsupportedDimensionError(
            f"the code-pair construction is defined only for dimension 8 and above, got {d}"
        )
    base = codes_mod.hamming8_code()
    even8 = codes_mod.even_weight_code(8)
    if d == 8:
        code, product_code = base, even8
    else:
        tail = codes_mod.full_code(d - 8)
        code = codes_mod.direct_sum(base, tail)
        product_code = codes_mod.direct_sum(even8, tail)
    system = TripleSystem(d, code, product_code)
    problems = _invariant_failures(system)
    if problems:
        raise RuntimeError("constructed system violates its invariants: " + "; ".join(problems))
    return system


def _invariant_failures(system: TripleSystem) -> list[str]:
    out = []
    if system.code.dim >= system.d:
        out.append("code is not a proper subspace")
    if system.product_code.dim >= system.d:
        out.append("product code is not a proper subspace")
    if not codes_mod.contains_all_ones(system.code):
        out.append("code misses the all-ones vector")
    if not codes_mod.star_closure_check(system.code, system.product_code):
        out.append("coordinatewise products escape the product code")
    if not codes_mod.is_subcode(system.code, system.product_code):
        out.append("code is not contained in the product code")
    if not codes_mod.is_integrally_nondegenerate(system.code).verdict:
        out.append("code is integrally degenerate")
    if not codes_mod.is_integrally_nondegenerate(system.product_code).verdict:
        out.append("product code is integrally degenerate")
    return out


def shear(t: TripleConfig) -> TripleConfig:
    """The map (x, y, z) -> (x, y, x * y + z), sitewise."""
    return TripleConfig(t.x, t.y, windows_mod.star(t.x, t.y) + t.z)


def shift_triple(t: TripleConfig, m: Sequence[int]) -> TripleConfig:
    """Componentwise shift to the common overlap domain."""
    return TripleConfig(
        windows_mod.shift_restrict(t.x, m),
        windows_mod.shift_restrict(t.y, m),
        windows_mod.shift_restrict(t.z, m),
    )


def second_difference(x: WindowConfig) -> TripleConfig:
    """Affineness defect of the shear map along ``x``.

    Componentwise sum of the shear over the four corner triples
    (x,x,0), (x,0,0), (0,x,0), (0,0,0); an affine map would sum to zero,
    the shear leaves (0, 0, x * x).
    """
    zero = WindowConfig.zero(x.box)
    return (
        shear(TripleConfig(x, x, zero))
        + shear(TripleConfig(x, zero, zero))
        + shear(TripleConfig(zero, x, zero))
        + shear(TripleConfig(zero, zero, zero))
    )


def _random_nonzero_int_vector(rng: random.Random, d: int, bound: int = 10**6) -> tuple[int, ...]:
    while True:
        n = tuple(rng.randint(-bound, bound) for _ in range(d))
        if any(n):
            return n


def verify_premises(system: TripleSystem, *, n_samples: int = 50, seed: int = 0) -> VerificationReport:
    """Check every structural premise of the system; failures become entries."""
    report = VerificationReport(describe_system(system))
    code, product_code, d = system.code, system.product_code, system.d

    def proper(c: BinaryCode) -> Callable[[], tuple[bool, object]]:
        def run():
            return c.dim < d, {"dim": c.dim, "length": d, "entropy": laurent_mod.entropy_verdict(c)}

        return run

    def ones(c: BinaryCode) -> Callable[[], tuple[bool, object]]:
        def run():
            return codes_mod.contains_all_ones(c), None

        return run

    def nondeg(c: BinaryCode) -> Callable[[], tuple[bool, object]]:
        def run():
            cert = codes_mod.is_integrally_nondegenerate(c)
            witness = None if cert.verdict else {"kernel_witness": list(cert.kernel_witness)}
            return cert.verdict, witness

        return run

    def mixing(c: BinaryCode, tag: int) -> Callable[[], tuple[bool, object]]:
        def run():
            rng = random.Random(f"{seed}:{tag}")
            example = None
            for _ in range(n_samples):
                n = _random_nonzero_int_vector(rng, d)
                w = laurent_mod.mixing_certificate(c, n)
                b = codes_mod.support_sum(n, w)
                if b == 0:
                    return False, {"n": list(n), "codeword": str(w)}
                if example is None:
                    example = {"n": list(n), "codeword": str(w), "support_sum": b}
            return True, {"samples": n_samples, "example": example}

        return run

    report.checks.append(_timed_check("code_proper", proper(code)))
    report.checks.append(_timed_check("product_code_proper", proper(product_code)))
    report.checks.append(_timed_check("code_contains_all_ones", ones(code)))
    report.checks.append(_timed_check("product_code_contains_all_ones", ones(product_code)))
    report.checks.append(
        _timed_check(
            "star_closure",
            lambda: (codes_mod.star_closure_check(code, product_code), None),
        )
    )
    report.checks.append(
        _timed_check(
            "code_inside_product_code",
            lambda: (codes_mod.is_subcode(code, product_code), None),
        )
    )
    report.checks.append(_timed_check("code_nondegenerate", nondeg(code)))
    report.checks.append(_timed_check("product_code_nondegenerate", nondeg(product_code)))
    report.checks.append(_timed_check("code_mixing_witnesses", mixing(code, 1)))
    report.checks.append(_timed_check("product_code_mixing_witnesses", mixing(product_code, 2)))
    return report


def _config_tag(x: WindowConfig) -> str:
    return x.to_bit_string()


def verify_dynamics(
    system: TripleSystem,
    box: Box,
    *,
    seed: int = 0,
    samples: int = 100,
    shift_bound: int = 3,
    extra_shifts: int = 12,
    equivariance_triples: int = 25,
    max_sites: int = windows_mod.MAX_SITES,
    max_rows: int = windows_mod.MAX_CONSTRAINT_ROWS,
    _map: Callable[[TripleConfig], TripleConfig] | None = None,
) -> VerificationReport:
    """Sampled dynamical checks plus the fixed exhaustive toy sweep.

    The sampled checks draw (x, y) from the code's window space and z
    from the product code's window space, then test that the shear map
    is an involution, preserves the window constraints, and commutes
    with shifts on overlap domains.  ``_map`` substitutes a deliberately
    corrupted map for harness self-tests.
    """
    fmap = shear if _map is None else _map
    space_xy = windows_mod.build_window_space(
        box, system.code, max_sites=max_sites, max_rows=max_rows
    )
    space_z = windows_mod.build_window_space(
        box, system.product_code, max_sites=max_sites, max_rows=max_rows
    )
    rng = random.Random(seed)
    triples = [
        TripleConfig(
            windows_mod.sample_with(space_xy, rng),
            windows_mod.sample_with(space_xy, rng),
            windows_mod.sample_with(space_z, rng),
        )
        for _ in range(samples)
    ]
    shifts: list[tuple[int, ...]] = [
        tuple(1 if a == j else 0 for a in range(system.d)) for j in range(system.d)
    ]
    seen = set(shifts)
    attempts = 0
    while len(shifts) < system.d + extra_shifts and attempts < 200:
        attempts += 1
        m = tuple(rng.randint(-shift_bound, shift_bound) for _ in range(system.d))
        if any(m) and m not in seen:
            seen.add(m)
            shifts.append(m)

    report = VerificationReport(describe_system(system))

    def involution() -> tuple[bool, object]:
        for k, t in enumerate(triples):
            if fmap(fmap(t)) != t:
                return False, {"triple_index": k}
        return True, {"triples": len(triples)}

    def preservation() -> tuple[bool, object]:
        for k, t in enumerate(triples):
            u = fmap(t)
            ok = (
                windows_mod.contains(space_xy, u.x)
                and windows_mod.contains(space_xy, u.y)
                and windows_mod.contains(space_z, u.z)
            )
            if not ok:
                return False, {"triple_index": k, "z_image": _config_tag(u.z)}
        return True, {"triples": len(triples)}

    def equivariance() -> tuple[bool, object]:
        tested = 0
        skipped = 0
        subset = triples[: min(len(triples), equivariance_triples)]
        for k, t in enumerate(subset):
            for m in shifts:
                try:
                    lhs = fmap(shift_triple(t, m))
                    rhs = shift_triple(fmap(t), m)
                except ValueError:
                    skipped += 1
                    continue
                if lhs != rhs:
                    return False, {"triple_index": k, "shift": list(m)}
                tested += 1
        return tested > 0, {
            "triples": len(subset),
            "shifts": len(shifts),
            "tested": tested,
            "skipped_empty_overlap": skipped,
        }

    report.checks.append(_timed_check("involution_on_samples", involution))
    report.checks.append(_timed_check("constraint_preservation_on_samples", preservation))
    report.checks.append(_timed_check("equivariance_on_samples", equivariance))
    for check in exhaustive_toy_report().checks:
        report.checks.append(check)
    return report


@functools.lru_cache(maxsize=1)
def exhaustive_toy_report() -> VerificationReport:
    """Exhaustive shear-map verification on the length-3 repetition toy.

    Sweeps the full solution set of the 2x2x2 box (its own product code),
    checking involution, constraint preservation and shift equivariance
    on every one of the 64^3 triples, plus the second-difference witness.
    """
    code = codes_mod.repetition_code(3)
    system = TripleSystem(3, code, code)
    box = cube(3, 2)
    space = windows_mod.build_window_space(box, code)
    basis = space.solution_basis.rows
    sols = [0]
    for row in basis:
        sols.extend([s ^ row for s in sols])
    sols.sort()
    n_sites = space.site_count
    rows = space.constraint_matrix.rows
    valid = [
        all((row & w).bit_count() % 2 == 0 for row in rows) for w in range(1 << n_sites)
    ]
    shifts = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
    tables: list[list[int]] = []
    for m in shifts:
        overlap = box.intersect(box.translate(tuple(-v for v in m)))
        assert overlap is not None
        idxs = [
            box.index(tuple(a + b for a, b in zip(site, m))) for site in overlap.sites()
        ]
        tbl = []
        for b in range(1 << n_sites):
            acc = 0
            for k, src in enumerate(idxs):
                acc |= ((b >> src) & 1) << k
            tbl.append(acc)
        tables.append(tbl)

    report = VerificationReport(describe_system(system))
    start = time.perf_counter()
    inv_ok = True
    clo_ok = True
    eqv_ok = True
    n_triples = 0
    for x in sols:
        gx = [tbl[x] for tbl in tables]
        for y in sols:
            xy = x & y
            gxy = [a & tbl[y] for a, tbl in zip(gx, tables)]
            for z in sols:
                n_triples += 1
                w = xy ^ z
                # involution: the z-image of the double shear is xy ^ w
                if xy ^ w != z:
                    inv_ok = False
                if not valid[w]:
                    clo_ok = False
                # equivariance: the x and y components are the same
                # gathers on both sides, the z component is the real test
                for s in range(4):
                    if gxy[s] ^ tables[s][z] != tables[s][w]:
                        eqv_ok = False
    elapsed = (time.perf_counter() - start) * 1000.0
    witness = {"solutions": len(sols), "triples": n_triples, "shifts": len(shifts)}
    third = elapsed / 3.0
    report.checks.append(CheckResult("toy_exhaustive_involution", inv_ok, witness, third))
    report.checks.append(CheckResult("toy_exhaustive_closure", clo_ok, witness, third))
    report.checks.append(CheckResult("toy_exhaustive_equivariance", eqv_ok, witness, third))

    def toy_witness() -> tuple[bool, object]:
        x = WindowConfig(box, next(s for s in sols if s))
        sq = windows_mod.star(x, x)
        ok = sq == x and not x.is_zero
        return ok, {"x": _config_tag(x), "star_square_equals_x": sq == x}

    report.checks.append(_timed_check("toy_nonaffine_witness", toy_witness))
    return report


def non_affine_witness(
    system: TripleSystem,
    box: Box,
    *,
    seed: int = 0,
    max_sites: int = windows_mod.MAX_SITES,
    max_rows: int = windows_mod.MAX_CONSTRAINT_ROWS,
) -> dict:
    """A nonzero window solution certifying the shear map is not affine.

    The second difference of an affine map vanishes; for the shear it
    equals (0, 0, x * x) = (0, 0, x) on an idempotent-friendly input, so
    any nonzero solution x is a witness.

    Raises:
        ValueError: when the window solution space is trivial.
    """
    space = windows_mod.build_window_space(box, system.code, max_sites=max_sites, max_rows=max_rows)
    if windows_mod.log2_count(space) == 0:
        raise ValueError("the window solution space is trivial; no nonzero witness exists")
    x = windows_mod.sample(space, seed)
    if x.is_zero:
        x = WindowConfig(box, space.solution_basis.rows[0])
    diff = second_difference(x)
    return {
        "x": _config_tag(x),
        "box": {"lower": list(box.lower), "upper": list(box.upper)},
        "second_difference_x_zero": diff.x.is_zero,
        "second_difference_y_zero": diff.y.is_zero,
        "second_difference_z": _config_tag(diff.z),
        "z_equals_star_square": diff.z == windows_mod.star(x, x),
        "nonzero": not diff.z.is_zero,
    }


def run_full_verification(
    d: int,
    *,
    box_size: int = 2,
    samples: int = 100,
    premise_samples: int = 50,
    seed: int = 0,
    max_sites: int = windows_mod.MAX_SITES,
    max_rows: int = windows_mod.MAX_CONSTRAINT_ROWS,
) -> VerificationReport:
    """Construct the dimension-``d`` system and run every verification stage."""
    system = construct_system(d)
    box = cube(d, box_size)
    report = VerificationReport(describe_system(system))

    premises = verify_premises(system, n_samples=premise_samples, seed=seed)
    for check in premises.checks:
        report.checks.append(
            CheckResult("premises:" + check.name, check.passed, check.witness, check.millis)
        )
    dynamics = verify_dynamics(
        system, box, seed=seed, samples=samples, max_sites=max_sites, max_rows=max_rows
    )
    for check in dynamics.checks:
        report.checks.append(
            CheckResult("dynamics:" + check.name, check.passed, check.witness, check.millis)
        )

    def witness_check() -> tuple[bool, object]:
        record = non_affine_witness(system, box, seed=seed, max_sites=max_sites, max_rows=max_rows)
        ok = (
            record["second_difference_x_zero"]
            and record["second_difference_y_zero"]
            and record["z_equals_star_square"]
            and record["nonzero"]
        )
        return ok, record

    report.checks.append(_timed_check("non_affine_witness", witness_check))

    sizes = list(range(2, box_size + 1)) or [box_size]

    def entropy_check(c: BinaryCode) -> Callable[[], tuple[bool, object]]:
        def run():
            profile = windows_mod.entropy_profile(c, sizes, max_sites=max_sites, max_rows=max_rows)
            ok = all(v < 1 for v in profile) and all(
                profile[i] > profile[i + 1] for i in range(len(profile) - 1)
            )
            return ok, {
                "sizes": sizes,
                "ratios": [str(v) for v in profile],
                "verdict": laurent_mod.entropy_verdict(c),
            }

        return run

    report.checks.append(_timed_check("entropy:code_profile", entropy_check(system.code)))
    report.checks.append(
        _timed_check("entropy:product_code_profile", entropy_check(system.product_code))
    )
    return report
