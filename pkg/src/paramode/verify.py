"""Verification suites: every computational claim the package makes, rechecked.

Each suite runs a family of exact checks and returns a VerifyReport; the CLI
and the acceptance tests share this module.  All randomness flows through
seeded generators, so a report is reproducible byte for byte (timings aside).
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from . import linalg
from .chevalley import (ChevalleyRep, _sp_bracket, _sp_to_dense, _span_solve,
                        build_rep, centralizer_basis, complement_rank_test,
                        find_complementary_roots, parameter_matrix,
                        verify_bplus_decomposition)
from .gauge import exp_root, gauge_apply, matrices_equal, reduce_to_complement
from .jets import DiffPoly, DiffRat, diff_equals
from .operators import (DEFAULT_CYCLIC_INDEX, adjoint_symmetry,
                        matrix_to_scalar, reference_operator)
from .roots import build_root_system, classical_exponents, supported_systems
from .scalars import Scalar
from .series import (JetPoint, diagram_check, matrix_jets, ode_residual,
                     taylor_solution)
from .unipoly import SpecializationError, UniPoly, specialize

FAMILY_CASES = [("A", 2, "sl"), ("C", 2, "sp"), ("B", 2, "so_odd"),
                ("D", 3, "so_even"), ("G2", 2, "g2")]

SCALARIZE_CASES = ([("A", l, "sl") for l in (2, 3, 4, 5)] +
                   [("C", l, "sp") for l in (2, 3, 4)] +
                   [("B", l, "so_odd") for l in (2, 3, 4)] +
                   [("D", l, "so_even") for l in (3, 4)] +
                   [("G2", 2, "g2")])


@dataclass
class CheckResult:
    name: str
    target: str
    status: str  # "pass" | "fail"
    detail: str
    seconds: float

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class VerifyReport:
    checks: List[CheckResult] = field(default_factory=list)

    def add(self, name: str, target: str, passed: bool, detail: str, seconds: float):
        self.checks.append(
            CheckResult(name, target, "pass" if passed else "fail", detail, seconds)
        )

    def extend(self, other: "VerifyReport"):
        self.checks.extend(other.checks)

    def finalize(self) -> "VerifyReport":
        self.checks.sort(key=lambda c: (c.name, c.target))
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_json(self, with_timings: bool = True) -> dict:
        return {
            "passed": self.passed,
            "checks": [
                {
                    "name": c.name,
                    "target": c.target,
                    "status": c.status,
                    "detail": c.detail,
                    **({"seconds": round(c.seconds, 3)} if with_timings else {}),
                }
                for c in self.checks
            ],
        }

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            lines.append(
                f"[{'PASS' if c.passed else 'FAIL'}] {c.name} {c.target}: "
                f"{c.detail} ({c.seconds:.2f}s)"
            )
        lines.append(f"{'OK' if self.passed else 'FAILED'}: "
                     f"{sum(c.passed for c in self.checks)}/{len(self.checks)} checks passed")
        return "\n".join(lines)


def _run(report: VerifyReport, name: str, target: str, fn: Callable[[], Tuple[bool, str]]):
    start = time.perf_counter()
    try:
        passed, detail = fn()
    except Exception as exc:  # a crash is a failed check, not a crashed report
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    report.add(name, target, passed, detail, time.perf_counter() - start)


# --- random generators (all deterministic via the caller's rng) -------------

def random_scalar(rng: random.Random, sqrt2: bool = False) -> Scalar:
    a = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    b = Fraction(rng.randint(-6, 6), rng.randint(1, 4)) if sqrt2 else 0
    return Scalar(a, b)


def random_diffpoly(rng: random.Random, width: int = 2, depth: int = 2,
                    terms: int = 2, degree: int = 2) -> DiffPoly:
    out = DiffPoly.zero()
    for _ in range(rng.randint(1, terms)):
        mono = DiffPoly.const(Fraction(rng.randint(-3, 3)))
        for _ in range(rng.randint(0, degree)):
            mono = mono * DiffPoly.jet(rng.randint(1, width), rng.randint(0, depth - 1))
        out = out + mono
    return out


def random_diffrat(rng: random.Random, width: int = 2, depth: int = 2) -> DiffRat:
    num = random_diffpoly(rng, width, depth)
    den = DiffPoly.zero()
    while not den:
        den = random_diffpoly(rng, width, depth, terms=1, degree=1)
    return DiffRat(num, den)


def random_plane_matrix(rep: ChevalleyRep, rng: random.Random) -> List[List[DiffRat]]:
    """Seeded A in A_0^+ + b^- with small integer jet coefficients."""
    a = [[DiffRat.from_scalar(s) for s in row]
         for row in _sp_to_dense(rep.a0_plus_sparse(), rep.n)]
    for g, m in rep.basis_sparse():
        if g > 0:
            continue
        coeff = DiffRat.const(rng.randint(-2, 2))
        if rng.random() < 0.7:
            coeff = coeff + (DiffRat.const(rng.randint(-2, 2))
                             * DiffRat.jet(rng.randint(1, rep.rank), rng.randint(0, 1)))
        if not coeff:
            continue
        for (i, j), v in m.items():
            a[i][j] = a[i][j] + coeff * DiffRat.from_scalar(v)
    return a


def random_jet_point(rng: random.Random, width: int, depth: int) -> JetPoint:
    return JetPoint.from_rows(
        [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(depth)]
         for _ in range(width)]
    )


def random_poly_tuple(rng: random.Random, width: int, max_degree: int = 2) -> List[UniPoly]:
    out = []
    for _ in range(width):
        coeffs = [Fraction(rng.randint(-3, 3)) for _ in range(max_degree + 1)]
        if not any(coeffs):
            coeffs[rng.randint(0, max_degree)] = Fraction(1)
        out.append(UniPoly(coeffs))
    return out


# --- suite: exponents --------------------------------------------------------

def suite_exponents(max_rank: int = 8, seed: int = 0) -> VerifyReport:
    report = VerifyReport()
    for kind, rank in supported_systems(max_rank):
        def check(kind=kind, rank=rank):
            rs = build_root_system(kind, rank)
            got = rs.exponents()
            want = classical_exponents(kind, rank)
            if got != want:
                return False, f"exponents {got} != {want}"
            census = rs.census()
            npos = len(rs.positive_roots)
            if sum(census) != npos:
                return False, "census does not count the positive roots"
            if sum(got) != npos:
                return False, "sum of exponents != number of positive roots"
            if any(census[i] < census[i + 1] for i in range(len(census) - 1)):
                return False, "census is not weakly decreasing"
            return True, f"exponents {got}"
        _run(report, "exponents", f"{kind}{rank}", check)
    return report.finalize()


# --- suite: complementary roots ----------------------------------------------

def suite_roots(max_rank: int = 6, seed: int = 0) -> VerifyReport:
    report = VerifyReport()
    for kind, rank in supported_systems(max_rank):
        def check(kind=kind, rank=rank):
            rep = build_rep(kind, rank)
            gammas = rep.rs.closed_form_complementary_roots()
            if sorted(g.height for g in gammas) != rep.rs.exponents():
                return False, "closed-form heights disagree with exponents"
            for polarity in ("standard", "flipped"):
                if not complement_rank_test(rep, gammas, polarity):
                    return False, f"closed-form list fails the rank test ({polarity})"
                found = find_complementary_roots(rep, polarity)
                if not complement_rank_test(rep, found, polarity):
                    return False, f"greedy list fails the rank test ({polarity})"
            return True, f"closed-form and greedy lists valid ({len(gammas)} roots)"
        _run(report, "complementary-roots", f"{kind}{rank}", check)
    return report.finalize()


# --- suite: structural decompositions -----------------------------------------

def _check_grading(rep: ChevalleyRep) -> Tuple[bool, str]:
    """Bracket of graded pieces lands in the right graded piece, all pairs.

    Verified in the sharper root-space form: [g_a, g_b] is a multiple of
    X_{a+b}, lies in the Cartan when b = -a, and vanishes when a + b is
    neither; together with [h, g_a] = a(h) g_a this gives the graded law.
    """
    roots = rep.roots()
    cartan = rep._cartan_sp
    for i, h in enumerate(cartan):
        for h2 in cartan[i + 1:]:
            if _sp_bracket(h, h2):
                return False, "Cartan generators do not commute"
    pairs = 0
    for a in roots:
        xa = rep.root_vector_sparse(a)
        for b in roots:
            if b.sort_key() < a.sort_key():
                continue
            xb = rep.root_vector_sparse(b)
            br = _sp_bracket(xa, xb)
            pairs += 1
            total = [x + y for x, y in zip(a.coords, b.coords)]
            if all(c == 0 for c in total):
                if br and _span_solve([br], cartan) is None:
                    return False, f"[X_{a}, X_{b}] is not in the Cartan"
            elif rep.rs.is_root_coords(total):
                xc = rep.root_vector_sparse(rep.rs.root(total))
                if br and _span_solve([br], [xc]) is None:
                    return False, f"[X_{a}, X_{b}] leaves the root space of the sum"
            else:
                if br:
                    return False, f"[X_{a}, X_{b}] should vanish"
    return True, f"graded bracket law on {pairs} root pairs"


def suite_decomposition(max_rank: int = 6, seed: int = 0) -> VerifyReport:
    report = VerifyReport()
    for kind, rank in supported_systems(max_rank):
        rep = build_rep(kind, rank)
        _run(report, "grading-bracket", f"{kind}{rank}",
             lambda rep=rep: _check_grading(rep))

        def check_centralizer(rep=rep):
            zs = centralizer_basis(rep)
            grades = [g for g, _ in zs]
            if grades != rep.rs.exponents():
                return False, f"grades {grades} != exponents"
            a0p = _sp_to_dense(rep.a0_plus_sparse(), rep.n)
            for _, z in zs:
                if any(any(e for e in row) for row in linalg.bracket(a0p, z)):
                    return False, "claimed centralizer element does not commute"
            return True, f"dim {len(zs)}, grades {grades}"
        _run(report, "centralizer", f"{kind}{rank}", check_centralizer)

        def check_bplus(rep=rep):
            rpt = verify_bplus_decomposition(rep)
            ok = bool(rpt["full_rank"])
            return ok, (f"dim b+ = {rpt['dim_b']} = {rpt['centralizer_dim']} + "
                        f"{rpt['image_dim']}, rank {rpt['rank_found']}")
        _run(report, "bplus-direct-sum", f"{kind}{rank}", check_bplus)
    return report.finalize()


# --- suite: gauge reduction ----------------------------------------------------

def suite_gauge(seed: int = 0, count: int = 50) -> VerifyReport:
    report = VerifyReport()
    for kind, rank, family in FAMILY_CASES:
        def check(kind=kind, rank=rank, family=family):
            rep = build_rep(kind, rank)
            gammas = rep.rs.closed_form_complementary_roots()
            comp_vecs = [rep.root_vector_sparse(-g) for g in gammas]
            rng = random.Random(f"{seed}:gauge:{kind}{rank}")
            a0 = [[DiffRat.from_scalar(s) for s in row]
                  for row in _sp_to_dense(rep.a0_plus_sparse(), rep.n)]
            done = 0
            for _ in range(count):
                a = random_plane_matrix(rep, rng)
                u, b = reduce_to_complement(a, rep, gammas, "flipped")
                if not matrices_equal(gauge_apply(u, a), b):
                    return False, f"gauge_apply(u, A) != B after {done} cases"
                if not _in_complement_plane(b, a0, comp_vecs):
                    return False, f"output escapes the plane after {done} cases"
                done += 1
            return True, f"{done}/{count} reductions landed in the plane"
        _run(report, "gauge-reduction", f"{kind}{rank}", check)
    return report.finalize()


def _in_complement_plane(b, a0, comp_vecs) -> bool:
    delta = linalg.mat_sub(b, a0)
    support = sorted({k for v in comp_vecs for k in v})
    pos = {k: i for i, k in enumerate(support)}
    zero = DiffRat.zero()
    cols = [[zero] * len(comp_vecs) for _ in support]
    for c, v in enumerate(comp_vecs):
        for k, val in v.items():
            cols[pos[k]][c] = DiffRat.from_scalar(val)
    rhs = [[zero] for _ in support]
    for i, row in enumerate(delta):
        for j, e in enumerate(row):
            if e:
                if (i, j) not in pos:
                    return False
                rhs[pos[(i, j)]][0] = e
    sol, _ = linalg.solve_unique(cols, rhs, zero)
    return sol is not None


# --- suite: scalarization --------------------------------------------------------

def suite_scalarize(seed: int = 0) -> VerifyReport:
    report = VerifyReport()
    for kind, rank, family in SCALARIZE_CASES:
        def check(kind=kind, rank=rank, family=family):
            a = parameter_matrix(kind, rank, family)
            j = DEFAULT_CYCLIC_INDEX[family]
            got = matrix_to_scalar(a, j)
            want = reference_operator(kind, rank)
            if got != want:
                bad = [i for i, (x, y) in enumerate(zip(got.coeffs, want.coeffs))
                       if not diff_equals(x, y)]
                return False, f"coefficients differ at orders {bad}"
            return True, f"order {got.order} operator reproduced"
        _run(report, "scalar-reproduction", f"{family}:{kind}{rank}", check)
    return report.finalize()


# --- suite: adjoint symmetry ------------------------------------------------------

def suite_adjoint(seed: int = 0) -> VerifyReport:
    expected = ([("C", l, "selfadjoint") for l in (2, 3, 4)] +
                [("B", l, "antiselfadjoint") for l in (2, 3, 4)] +
                [("G2", 2, "antiselfadjoint")] +
                [("A", l, "none") for l in (2, 3, 4, 5)])
    report = VerifyReport()
    for kind, rank, want in expected:
        def check(kind=kind, rank=rank, want=want):
            got = adjoint_symmetry(reference_operator(kind, rank))
            return got == want, f"classified {got}, expected {want}"
        _run(report, "adjoint-symmetry", f"{kind}{rank}", check)
    return report.finalize()


# --- suite: Taylor and the specialization diagram ---------------------------------

def suite_taylor(seed: int = 0, order: int = 10, diagrams: int = 10) -> VerifyReport:
    report = VerifyReport()
    for kind, rank, family in FAMILY_CASES:
        a = parameter_matrix(kind, rank, family)
        width, depth = matrix_jets(a)

        def check_residual(a=a, width=width, depth=depth, kind=kind, rank=rank):
            rng = random.Random(f"{seed}:taylor:{kind}{rank}")
            point = random_jet_point(rng, max(width, rank), depth + order + 2)
            res = ode_residual(a, point, order)
            if not res.is_zero():
                return False, "nonzero ODE residual"
            x = taylor_solution(a, point, order)
            if not x.is_invertible():
                return False, "constant term is not invertible"
            return True, f"residual zero mod T^{order - 1}"
        _run(report, "taylor-residual", f"{family}:{kind}{rank}", check_residual)

        def check_diagram(a=a, width=width, kind=kind, rank=rank):
            rng = random.Random(f"{seed}:diagram:{kind}{rank}")
            for t in range(diagrams):
                polys = random_poly_tuple(rng, max(width, rank))
                c = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
                if not diagram_check(a, polys, c, order):
                    return False, f"diagram failed on trial {t}"
            return True, f"{diagrams} specializations commute at order {order}"
        _run(report, "specialization-diagram", f"{family}:{kind}{rank}", check_diagram)
    return report.finalize()


# --- suite: property-based round trips ---------------------------------------------

def suite_properties(seed: int = 0, scalar_cases: int = 10000,
                     diff_cases: int = 1000, gauge_cases: int = 1000) -> VerifyReport:
    report = VerifyReport()

    def check_field():
        rng = random.Random(f"{seed}:field")
        one = Scalar.one()
        for i in range(scalar_cases):
            sqrt2 = i % 2 == 0
            x = random_scalar(rng, sqrt2)
            y = random_scalar(rng, sqrt2)
            z = random_scalar(rng, not sqrt2)
            if (x + y) + z != x + (y + z):
                return False, f"associativity of + failed at case {i}"
            if (x * y) * z != x * (y * z):
                return False, f"associativity of * failed at case {i}"
            if x * (y + z) != x * y + x * z:
                return False, f"distributivity failed at case {i}"
            if x and x * x.invert() != one:
                return False, f"x * invert(x) != 1 at case {i}"
        return True, f"{scalar_cases} random triples"
    _run(report, "field-axioms", "exact-scalars", check_field)

    def check_derive_specialize():
        rng = random.Random(f"{seed}:spec")
        done = 0
        attempts = 0
        while done < diff_cases and attempts < diff_cases * 20:
            attempts += 1
            x = random_diffrat(rng)
            polys = random_poly_tuple(rng, 2)
            try:
                lhs = specialize(x.derive(), polys)
                rhs = specialize(x, polys).derivative()
            except (SpecializationError, ZeroDivisionError):
                continue
            if lhs != rhs:
                return False, f"commutation failed at case {done}"
            done += 1
        if done < diff_cases:
            return False, f"only generated {done} valid specializations"
        return True, f"{done} derive/specialize round trips"
    _run(report, "derive-specialize", "jet-fractions", check_derive_specialize)

    def check_gauge_composition():
        rng = random.Random(f"{seed}:gaugecomp")
        rep = build_rep("A", 2)
        xs = [rep.root_vector(-r) for r in rep.rs.positive_roots]
        zero = DiffRat.zero()
        for i in range(gauge_cases):
            rho1 = DiffRat.const(rng.randint(-2, 2)) + DiffRat.jet(1, rng.randint(0, 1))
            rho2 = DiffRat.const(rng.randint(-2, 2)) * DiffRat.jet(2, rng.randint(0, 1))
            u1 = exp_root(rho1, xs[rng.randrange(len(xs))])
            u2 = exp_root(rho2, xs[rng.randrange(len(xs))])
            a = [[DiffRat.const(rng.randint(-1, 1)) for _ in range(rep.n)]
                 for _ in range(rep.n)]
            lhs = gauge_apply(u2, gauge_apply(u1, a))
            rhs = gauge_apply(linalg.mat_mul(u2, u1), a)
            if not matrices_equal(lhs, rhs):
                return False, f"composition law failed at case {i}"
        return True, f"{gauge_cases} gauge compositions"
    _run(report, "gauge-composition", "root-group-elements", check_gauge_composition)

    return report.finalize()


# --- dispatcher ---------------------------------------------------------------------

SUITES: Dict[str, Callable[..., VerifyReport]] = {
    "exponents": suite_exponents,
    "roots": suite_roots,
    "decomposition": suite_decomposition,
    "gauge": suite_gauge,
    "scalarize": suite_scalarize,
    "adjoint": suite_adjoint,
    "taylor": suite_taylor,
    "properties": suite_properties,
}


def run_suite(name: str, max_rank: Optional[int] = None, seed: int = 0) -> VerifyReport:
    """Run one named suite, or all of them."""
    if name == "all":
        report = VerifyReport()
        for key in ("exponents", "roots", "decomposition", "gauge",
                    "scalarize", "adjoint", "taylor", "properties"):
            report.extend(run_suite(key, max_rank, seed))
        return report.finalize()
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from "
                         f"{sorted(SUITES) + ['all']}")
    fn = SUITES[name]
    kwargs = {"seed": seed}
    if name in ("exponents", "roots", "decomposition"):
        kwargs["max_rank"] = max_rank if max_rank is not None else (8 if name == "exponents" else 6)
    return fn(**kwargs)
