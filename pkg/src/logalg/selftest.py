"""Randomized invariant suite runnable from the CLI.

Covers the F-norm axioms, multiplication bounds, Orlicz equivalence,
truncation/density behavior, the matrix-side inequalities, the Nevanlinna
corpus checks and the witness constructions.  Deterministic for a fixed
seed so CI runs are reproducible.
"""
from __future__ import annotations

import math

import numpy as np

from . import holo, operators as ops, stepfn, witnesses

SLACK = 1e-10


def random_step(rng: np.random.Generator, total_measure: float = 1.0,
                max_pieces: int = 6, max_scale: float = 10.0) -> stepfn.StepFunction:
    k = int(rng.integers(0, max_pieces + 1))
    cuts = np.sort(rng.uniform(0, total_measure, size=2 * k))
    pieces = []
    for i in range(k):
        l, r = cuts[2 * i], cuts[2 * i + 1]
        if r <= l:
            continue
        v = complex(rng.normal(0, max_scale), rng.normal(0, max_scale))
        pieces.append((l, r, v))
    return stepfn.StepFunction.make(pieces, total_measure)


def random_matrix(rng: np.random.Generator, n: int,
                  scale: float = 3.0) -> ops.MatrixOperator:
    a = rng.normal(0, scale, (n, n)) + 1j * rng.normal(0, scale, (n, n))
    return ops.MatrixOperator.make(a)


def _check(name, ok, failures):
    status = "pass" if ok else "FAIL"
    print(f"[selftest] {status}: {name}")
    if not ok:
        failures.append(name)


def _step_suite(rng, trials, failures):
    ok_axioms = ok_mult = ok_orlicz = ok_density = ok_rearr = True
    for _ in range(trials):
        f = random_step(rng)
        g = random_step(rng)
        nf, ng = stepfn.lognorm(f), stepfn.lognorm(g)
        if not f.is_zero() and not nf > 0:
            ok_axioms = False
        alpha = rng.uniform(0, 1) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        if stepfn.lognorm(stepfn.scale(f, alpha)) > nf + SLACK:
            ok_axioms = False
        prev = nf
        for k in range(1, 8):
            cur = stepfn.lognorm(stepfn.scale(f, 2.0 ** (-k)))
            if cur > prev + SLACK:
                ok_axioms = False
            prev = cur
        if not (prev < 0.1 * nf + 1e-9 or nf == 0):
            ok_axioms = False
        if stepfn.lognorm(stepfn.pointwise(f, g, "add")) > nf + ng + SLACK:
            ok_axioms = False

        K = rng.uniform(0.1, 10)
        if stepfn.lognorm(stepfn.scale(f, K)) > max(K, 1.0) * nf + SLACK:
            ok_mult = False
        if stepfn.lognorm(stepfn.pointwise(f, g, "mul")) > nf + ng + SLACK:
            ok_mult = False
        # monotonicity in a dominated factor: |g| <= |2g|
        fg = stepfn.lognorm(stepfn.pointwise(f, g, "mul"))
        fg2 = stepfn.lognorm(stepfn.pointwise(f, stepfn.scale(g, 2), "mul"))
        if fg > fg2 + SLACK:
            ok_mult = False

        if not f.is_zero():
            phi = stepfn.orlicz_fnorm(f)
            if phi < 1 and nf > phi + 1e-10:
                ok_orlicz = False
            N = int(rng.integers(2, 8))
            fs = stepfn.scale(f, _scale_to_lognorm(f, 1.0 / N ** 2))
            if not stepfn.orlicz_fnorm(fs) < 1.0 / N:
                ok_orlicz = False

        prev_d = math.inf
        for M in (0.5, 1, 2, 4, 8, 16, 1e6):
            d = stepfn.dlog(f, stepfn.truncate(f, M))
            if d > prev_d + SLACK:
                ok_density = False
            prev_d = d
        if prev_d != 0.0:
            ok_density = False

        if abs(stepfn.decreasing_rearrangement(f).log_integral() - nf) > 1e-12:
            ok_rearr = False
    _check("step F-norm axioms", ok_axioms, failures)
    _check("step multiplication bounds", ok_mult, failures)
    _check("Orlicz equivalence", ok_orlicz, failures)
    _check("truncation density", ok_density, failures)
    _check("rearrangement invariance", ok_rearr, failures)


def _scale_to_lognorm(f: stepfn.StepFunction, target: float) -> float:
    """Positive c with lognorm(c f) = target, by bisection."""
    lo, hi = 0.0, 1.0
    while stepfn.lognorm(stepfn.scale(f, hi)) < target:
        hi *= 2
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if stepfn.lognorm(stepfn.scale(f, mid)) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _matrix_suite(rng, trials, failures):
    ok_axioms = ok_mult = ok_submaj = ok_dtau = ok_embed = True
    for _ in range(trials):
        n = int(rng.integers(1, 9))
        S = random_matrix(rng, n)
        T = random_matrix(rng, n)
        nS, nT = ops.lognorm_op(S), ops.lognorm_op(T)
        if not nT > 0:
            ok_axioms = False
        if abs(ops.lognorm_op(T.adjoint()) - nT) > 1e-12:
            ok_axioms = False
        alpha = rng.uniform(0, 1) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        if ops.lognorm_op(T.scaled(alpha)) > nT + SLACK:
            ok_axioms = False
        if ops.lognorm_op(S + T) > nS + nT + SLACK:
            ok_axioms = False

        if ops.lognorm_op(S @ T) > nS + nT + SLACK:
            ok_mult = False
        if ops.lognorm_op(S @ T) > max(S.operator_norm(), 1.0) * nT + SLACK:
            ok_mult = False

        muS = [h for _, h in ops.singular_numbers(S).steps]
        muT = [h for _, h in ops.singular_numbers(T).steps]
        lhs = ops.lognorm_op(S @ T)
        rhs = sum(math.log1p(a * b) for a, b in zip(muS, muT)) / n
        if lhs > rhs + SLACK:
            ok_submaj = False
        if ops.lognorm_op(S + T) > nS + nT + SLACK:
            ok_submaj = False

        d_closed = ops.dtau(S, T)
        d_series = sum(2.0 ** (-k) * ops.measure_above(S - T, 1.0 / k)
                       for k in range(1, 61))
        if abs(d_closed - d_series) > 2.0 ** (-60) + 1e-12:
            ok_dtau = False
        for delta in (0.1, 1.0, 10.0):
            if ops.measure_above(S, delta) > ops.lognorm_op(S.scaled(3.0 / delta)) + SLACK:
                ok_dtau = False

    for _ in range(max(1, trials // 4)):
        n = int(rng.integers(1, 9))
        k = int(rng.integers(0, n + 1))
        vals = rng.normal(0, 5, k) + 1j * rng.normal(0, 5, k)
        pieces = [(i / n, (i + 1) / n, complex(v)) for i, v in enumerate(vals)]
        f = stepfn.StepFunction.make(pieces, 1.0)
        D = ops.embed_diagonal(f, n)
        if abs(ops.lognorm_op(D) - stepfn.lognorm(f)) > 1e-12:
            ok_embed = False
        a = ops.singular_numbers(D).stripped()
        b = stepfn.decreasing_rearrangement(f).stripped()
        if len(a) != len(b) or any(abs(x[0] - y[0]) > 1e-12 or abs(x[1] - y[1]) > 1e-9
                                   for x, y in zip(a, b)):
            ok_embed = False

    _check("matrix F-norm axioms", ok_axioms, failures)
    _check("matrix multiplication bounds", ok_mult, failures)
    _check("submajorization inequalities", ok_submaj, failures)
    _check("measure-topology metric and comparison", ok_dtau, failures)
    _check("diagonal embedding consistency", ok_embed, failures)


def nevanlinna_corpus():
    """Small corpus spanning polynomials, rationals, inner functions and N \\ N+."""
    z = holo.Polynomial.make([0, 1])
    return [
        holo.constant(0),
        holo.constant(2 + 1j),
        z,
        holo.Polynomial.make([1, 1, 0.5j]),
        holo.SafeRational.make([1], [1, -0.9]),
        holo.BlaschkeFactor.make(0.5),
        holo.BlaschkeFactor.make(0.3 - 0.4j),
        holo.Mul(holo.BlaschkeFactor.make(0.5), holo.BlaschkeFactor.make(-0.2j)),
        holo.SingularInner.make(1.0),
        holo.Mul(holo.BlaschkeFactor.make(0.5), holo.Polynomial.make([1, 1])),
        holo.Div(holo.constant(1), holo.SingularInner.make(1.0)),
    ]


def _nevanlinna_suite(failures):
    corpus = nevanlinna_corpus()
    ok_mono = ok_fatou = ok_dn = ok_hom = ok_inner = True
    for f in corpus:
        means = [holo.radial_mean(f, 1 - 2.0 ** (-k), 4096) for k in range(1, 13)]
        if any(b < a - 1e-9 for a, b in zip(means, means[1:])):
            ok_mono = False
        bn = holo.boundary_norm(f, 1 << 14)
        if holo.has_singular_atom(f):
            # radial means of singular inner atoms close the Fatou gap only
            # like sqrt(1 - r); check the direction at a realistic slack
            cn = holo.class_norm(f, 1e-3, k_max=14)
            if cn.estimate < bn - 0.02:
                ok_fatou = False
        else:
            cn = holo.class_norm(f, 1e-7, k_max=24)
            if cn.estimate < bn - 1e-6:
                ok_fatou = False

    f, g, h = corpus[2], corpus[5], corpus[4]
    m = 4096
    if holo.d_N(f, h, m) > holo.d_N(f, g, m) + holo.d_N(g, h, m) + 1e-9:
        ok_dn = False
    fg = holo.Sub(f, g)
    if holo.boundary_norm(holo.Mul(holo.constant(0.5), fg), m) > \
            holo.boundary_norm(fg, m) + 1e-9:
        ok_dn = False

    sf = holo.phi_sample(f, 256).values
    sg = holo.phi_sample(g, 256).values
    sfg = holo.phi_sample(holo.Mul(f, g), 256).values
    ssum = holo.phi_sample(holo.Add(f, g), 256).values
    if max(abs(a * b - c) for a, b, c in zip(sf, sg, sfg)) > 1e-10:
        ok_hom = False
    if max(abs(a + b - c) for a, b, c in zip(sf, sg, ssum)) > 1e-10:
        ok_hom = False

    for f in (corpus[5], corpus[6], corpus[7], corpus[8]):
        if abs(holo.boundary_norm(f, 4096) - math.log(2)) > 1e-6:
            ok_inner = False

    _check("radial monotonicity", ok_mono, failures)
    _check("Fatou direction", ok_fatou, failures)
    _check("boundary F-norm axioms", ok_dn, failures)
    _check("boundary homomorphism", ok_hom, failures)
    _check("inner function normalization", ok_inner, failures)


def _witness_suite(failures):
    ok_unb = all(witnesses.unboundedness_witness(eps, N).verify()
                 for eps in (0.1, 1.0) for N in (2, 10))
    _check("unboundedness witnesses", ok_unb, failures)

    f = stepfn.StepFunction.make([(0.0, 1.0, 1.0)], 1.0)
    split = witnesses.convex_split(f, 0.1)
    target = stepfn.lognorm(stepfn.scale(f, split.n)) / split.n
    ok_split = (split.n == 37
                and all(abs(stepfn.lognorm(p) - target) < 1e-12 for p in split.pieces)
                and all(stepfn.lognorm(p) < 0.1 for p in split.pieces)
                and stepfn.dlog(split.average(), f) == 0.0)
    if split.n > 1:
        ok_split = ok_split and \
            stepfn.lognorm(stepfn.scale(f, split.n - 1)) / (split.n - 1) >= 0.1
    _check("convex split", ok_split, failures)

    seq = [witnesses.separation_sequence(k) for k in range(1, 21)]
    ok_sep = all(a.support_measure > b.support_measure
                 and a.lognorm_value < b.lognorm_value
                 for a, b in zip(seq, seq[1:]))
    _check("separation sequence", ok_sep, failures)

    base = stepfn.StepFunction.make([(0, 1, 2.0), (1, 2, 50.0)], 4.0)
    truncs = [stepfn.truncate(base, 2.0 ** k) for k in range(0, 8)]
    limit, report = witnesses.cauchy_limit(truncs, 1e-9)
    ok_cauchy = report.is_cauchy and stepfn.dlog(limit, base) == 0.0
    alt = [stepfn.StepFunction.zero(1.0),
           stepfn.StepFunction.make([(0, 1, 1.0)], 1.0)] * 4
    _, report2 = witnesses.cauchy_limit(alt, 1e-9)
    ok_cauchy = ok_cauchy and not report2.is_cauchy \
        and abs(report2.gap - math.log(2)) < 1e-12
    _check("Cauchy mechanics", ok_cauchy, failures)


def run_all(seed: int = 0, trials: int = 200) -> bool:
    rng = np.random.default_rng(seed)
    failures: list[str] = []
    _step_suite(rng, trials, failures)
    _matrix_suite(rng, trials, failures)
    _nevanlinna_suite(failures)
    _witness_suite(failures)
    if failures:
        print(f"[selftest] {len(failures)} suite(s) failed: {', '.join(failures)}")
    else:
        print("[selftest] all suites passed")
    return not failures
