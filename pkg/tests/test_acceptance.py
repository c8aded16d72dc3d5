"""Acceptance criteria 1-8, each at its stated tolerance.

Every test records one PASS/FAIL line; the lines are printed together in the
terminal summary.
"""

import csv
import math
import time

import numpy as np

from bridge_spectra.bounds import (
    LOEWNER_FAMILIES,
    REGISTRY,
    default_grid,
    full_grid,
    random_bases,
)
from bridge_spectra.cli import main
from bridge_spectra.eigensolver import lambda2, laplacian_spectrum
from bridge_spectra.families import bridge_chain, complete, path, star
from bridge_spectra.graph_core import Graph, build_laplacian, rayleigh_quotient
from bridge_spectra.loewner import family_scale, loewner_geq
from bridge_spectra.vectors import certified_upper_bound, family_vector

from conftest import ACCEPTANCE_LINES, charpoly_exact, poly_from_roots


def record(num: int, title: str, ok: bool, detail: str) -> None:
    line = f"criterion {num} {'PASS' if ok else 'FAIL'}: {title} ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_1_complete_graph_anchor():
    t0 = time.perf_counter()
    worst = max(abs(lambda2(complete(N)) - N) for N in range(2, 41))
    elapsed = time.perf_counter() - t0
    record(1, "lambda2(K_N) = N for N in 2..40", worst <= 1e-9 and elapsed < 5.0,
           f"max error {worst:.2e}, {elapsed:.2f} s")


def test_criterion_2_tight_chain():
    g = bridge_chain(Graph(1, ()), 2)
    err = abs(lambda2(g) - 2.0)
    record(2, "chain of two single-vertex blocks has lambda2 = 2", g == path(2) and err <= 1e-12,
           f"error {err:.2e}")


def test_criterion_3_universal_chain_bound():
    t0 = time.perf_counter()
    bad = []
    count = 0
    for base in random_bases(20, seed=42, n_min=2, n_max=10):
        n = base.num_vertices
        for l in range(2, 6):
            g = bridge_chain(base, l)
            lam = lambda2(g)
            cut = lambda2(g.remove_edge(n, n + 1))
            count += 1
            if not (lam > 0 and lam <= 2 + 1e-9 and cut < 1e-9):
                bad.append((n, l, lam, cut))
    elapsed = time.perf_counter() - t0
    record(3, "0 < lambda2 <= 2 on chains; cutting the first bridge disconnects",
           not bad and elapsed < 30.0, f"{count} chains, {len(bad)} violations, {elapsed:.2f} s")


def test_criterion_4_test_vectors_dominate():
    specs = full_grid()
    bad = []
    for spec in specs:
        g = spec.build()
        x, _ = family_vector(spec)
        ub = certified_upper_bound(g, x)
        if not lambda2(g) <= ub.value + 1e-9:
            bad.append(spec)
    fams = {s.family for s in specs}
    record(4, "lambda2 <= certified test-vector bound on the default grid",
           not bad and len(fams) == 8, f"{len(specs)} instances, {len(fams)} families, {len(bad)} exceptions")


def test_criterion_5_loewner_lower_bounds():
    bad = []
    count = 0
    for family in LOEWNER_FAMILIES:
        for spec in default_grid(family):
            g = spec.build()
            N = g.num_vertices
            c = family_scale(family, spec.n, spec.m, spec.l)
            cert = loewner_geq(g, complete(N), c)
            count += 1
            if not (cert.holds and lambda2(g) >= N / c - 1e-9):
                bad.append((spec, cert.min_eig_of_difference))
    record(5, "K_N <= c G certified and lambda2 >= N/c", not bad, f"{count} instances, {len(bad)} failures")


def test_criterion_6_closed_form_spot_checks():
    worst_multi = 0.0
    for spec in default_grid("dumbbell_multi"):
        x, _ = family_vector(spec)
        rq = rayleigh_quotient(build_laplacian(spec.build()), x)
        worst_multi = max(worst_multi, abs(rq - 2 * spec.k / spec.n))
    worst_chain = 0.0
    for spec in default_grid("tree_chain"):
        x, _ = family_vector(spec)
        rq = rayleigh_quotient(build_laplacian(spec.build()), x)
        worst_chain = max(worst_chain, abs(rq - 2 / (spec.n - 1)))
    record(6, "two-block RQ = 2k/n and tree-chain RQ = 2/(n-1)",
           worst_multi <= 1e-12 and worst_chain <= 1e-12,
           f"errors {worst_multi:.1e} and {worst_chain:.1e}")


def test_criterion_7_eigensolver_oracle():
    def path_closed(n):
        return np.sort([2 - 2 * math.cos(k * math.pi / n) for k in range(n)])

    def star_closed(n):
        return np.array([0.0] + [1.0] * (n - 2) + [float(n)])

    oracle_err = 0.0
    for n in range(2, 7):
        for g, closed in ((path(n), path_closed(n)), (star(n), star_closed(n))):
            exact = [float(c) for c in charpoly_exact(build_laplacian(g).entries)]
            oracle_err = max(oracle_err, float(np.abs(np.array(exact) - poly_from_roots(closed)).max()))
    solver_err = 0.0
    for n in range(2, 21):
        solver_err = max(solver_err, float(np.abs(laplacian_spectrum(path(n)).eigenvalues - path_closed(n)).max()))
    for n in range(2, 11):
        solver_err = max(solver_err, float(np.abs(laplacian_spectrum(star(n)).eigenvalues - star_closed(n)).max()))
    record(7, "path and star spectra, oracle first", oracle_err <= 1e-9 and solver_err <= 1e-9,
           f"oracle error {oracle_err:.1e}, solver error {solver_err:.1e}")


def test_criterion_8_errata_audit(tmp_path, capsys):
    code = main(["sweep", "--out", str(tmp_path)])
    capsys.readouterr()
    with open(tmp_path / "errata.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    got = {(r["claim_id"], r["claim_variant"]) for r in rows}
    want = {(c.formula_id, c.variant) for claims in REGISTRY.values() for c in claims}
    want |= {(f"{f}_lower_loewner", "proof") for f in LOEWNER_FAMILIES}
    complete_stats = all(r["held_fraction"] != "" and r["worst_margin"] != "" for r in rows)
    duals = {fid for fid, v in want if v == "proof" and (fid, "statement") in want}
    record(8, "sweep exits 0 with a verdict row for every claim variant",
           code == 0 and got == want and complete_stats,
           f"exit {code}, {len(got)}/{len(want)} claim variants, {len(duals)} dual claims")
