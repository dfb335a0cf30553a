"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

The lines are also collected and shown in the terminal summary.
"""

import io
import json
import time
from fractions import Fraction
from pathlib import Path


from conflap import cli, flat, numcheck, properties, sphere
from conflap.exactfn import RadicalElement
from conflap.numcheck import SampleConfig
from conflap.report import Report

RESULTS = {}
GOLDEN = Path(__file__).parent / "golden"


def record(number, title, report_or_ok, detail=""):
    ok = report_or_ok.passed if isinstance(report_or_ok, Report) else bool(report_or_ok)
    if isinstance(report_or_ok, Report):
        counts = report_or_ok.counts()
        detail = detail or f"{counts['pass']} pass, {counts['fail']} fail, {counts['limit']} limit"
    line = f"criterion {number:2d} [{'PASS' if ok else 'FAIL'}] {title} ({detail})"
    RESULTS[number] = line
    print(line)
    return ok


def failures(report, limit=5):
    bad = [c for c in report.sorted_cases() if c.status != "pass"]
    return "\n".join(f"{c.id}: {c.status} {c.witness or ''}" for c in bad[:limit])


def test_criterion_01_factorized_power():
    report = Report("acceptance 1")
    slowest = 0.0
    for n in range(1, 5):
        for k in range(1, 5):
            t0 = time.perf_counter()
            report.merge(flat.verify_rn(n, k))
            elapsed = time.perf_counter() - t0
            slowest = max(slowest, elapsed)
            report.add(f"rn/n={n}/k={k}/time", "under 60 s", elapsed < 60, f"{elapsed:.1f} s")
    lhs, rhs = flat.build_rn_sides(2, 1)
    report.add("rn/k=1/trivial", "k=1 sides are both the Laplacian", lhs == rhs)
    ok = record(1, "factorized power identity, n,k in 1..4", report, f"slowest case {slowest:.1f} s")
    assert ok, failures(report)


def test_criterion_02_commutators():
    report = Report("acceptance 2")
    for n in range(1, 5):
        report.merge(flat.verify_commutators(n, (-3, 3), 5))
    ids = {c.id for c in report.cases}
    needed = {"comm/1", "comm/3forms/w=-3", "comm/3forms/w=3", "comm/4/k=5", "comm/4/k=1~3alt/w=-1"}
    report.add("comm/coverage", "both printed forms and the k=1/w=-1 coincidence are checked", needed <= ids)
    ok = record(2, "commutator identities, n in 1..4, w in [-3,3], k <= 5", report)
    assert ok, failures(report)


def test_criterion_03_covariance():
    report = Report("acceptance 3")
    for n in (2, 3, 4):
        for k in (1, 2):
            for motion in flat.motion_family(n):
                report.merge(flat.verify_translaw(n, k, motion, max_degree=2 * k + 2))
    radical = isinstance(flat.inversion(3).omega_power(Fraction(3, 2) - 1), RadicalElement)
    report.add("covariance/n=3/radical", "odd-n inversion runs through the radical", radical)
    names = {m.name for m in flat.motion_family(2)}
    report.add("covariance/family", "four generators and all 16 ordered pairs", len(names) == 20)
    ok = record(3, "conformal covariance under 20 motions, n in {2,3,4}, k in {1,2}", report)
    assert ok, failures(report)


def test_criterion_04_conformality():
    report = Report("acceptance 4")
    for n in range(1, 5):
        report.merge(sphere.verify_conformality(n))
    ok = record(4, "inverse stereographic projection is conformal, n in 1..4", report)
    assert ok, failures(report)


def test_criterion_05_yamabe():
    report = Report("acceptance 5")
    for n, mode in ((2, "off"), (4, "off"), (3, "on")):
        report.merge(sphere.verify_yamabe(n, 3, radical=mode))
    ids = {c.id for c in report.cases if c.status == "pass"}
    report.add("yamabe/witnesses", "both witness identities pass", {"yamabe/n=2/witness", "yamabe/n=4/witness"} <= ids)
    ok = record(5, "second-order sphere identity, n in {2,4} rational and n=3 radical", report)
    assert ok, failures(report)


def test_criterion_06_main():
    report = Report("acceptance 6")
    pairs = ((2, 1), (2, 2), (2, 3), (4, 1), (4, 2), (3, 1), (3, 2))
    for n, k in pairs:
        report.merge(sphere.verify_main(n, k, 2 * k + 1))
    main21 = {c.id.split("/f=")[1] for c in report.cases if c.id.startswith("main/n=2/k=1/")}
    yamabe2 = sphere.verify_yamabe(2, 3)
    same = yamabe2.passed and main21 == {c.id.split("/f=")[1] for c in yamabe2.cases if "/f=" in c.id}
    report.add("main/n=2/k=1/reproduces", "k=1 run matches the second-order run case for case", same)
    ok = record(6, "sphere intertwining identity on seven (n,k) pairs", report)
    assert ok, failures(report)


def test_criterion_07_spectrum():
    report = Report("acceptance 7")
    for n in (2, 3, 4):
        for k in (1, 2):
            report.merge(sphere.spectrum(n, k, 4))
            for j, c in enumerate(sphere.c_constants(n, k), start=1):
                want = (Fraction(n, 2) + j - 1) * (Fraction(n, 2) - j)
                report.add(f"spectrum/n={n}/c{j}", "constant matches its closed form", c == want)
    report.add("spectrum/mu1/n=2/k=2", "mu_1 = 0", sphere.eigenvalue(2, 2, 1) == 0)
    report.add("spectrum/mu0/n=4/k=2", "mu_0 = 0", sphere.eigenvalue(4, 2, 0) == 0)
    report.add("spectrum/c/n=4/k=3", "(c1, c2, c3) = (2, 0, -4)", sphere.c_constants(4, 3) == [2, 0, -4])
    ok = record(7, "spectrum oracle, n in {2,3,4}, k <= 2, l <= 4", report)
    assert ok, failures(report)


def test_criterion_08_properties():
    report = properties.run_all(200, 42)
    sizes = {}
    for c in report.cases:
        suite = c.id.split("/")[1]
        sizes[suite] = sizes.get(suite, 0) + 1
    required = [
        "leibniz",
        "commuting_partials",
        "compose_associativity",
        "apply_homomorphism",
        "commutator_laws",
        "reduce_idempotence",
        "extension_independence",
    ]
    report.add("property/sizes", "200 instances in each required suite", all(sizes.get(s) == 200 for s in required))
    ok = record(8, "seeded property suites, 200 instances each", report)
    assert ok, failures(report)


def test_criterion_09_numeric_shadow():
    cfg = SampleConfig(sample_count=20, tolerance=1e-8, seed=42)
    report = Report("acceptance 9")
    for n in range(1, 5):
        for k in range(1, 5):
            report.merge(numcheck.shadow_rn(n, k, cfg))
        report.merge(numcheck.shadow_comm(n, (-3, 3), 5, cfg))
        report.merge(numcheck.shadow_conformality(n, cfg))
    for n in (2, 3, 4):
        for k in (1, 2):
            for motion in flat.motion_family(n):
                report.merge(numcheck.shadow_covariance(n, k, motion, cfg=cfg))
        report.merge(numcheck.shadow_main(n, 1, 3, cfg, command="yamabe"))
        for k in (1, 2):
            report.merge(numcheck.shadow_spectrum(n, k, 4, cfg))
    for n, k in ((2, 1), (2, 2), (2, 3), (4, 1), (4, 2), (3, 1), (3, 2)):
        report.merge(numcheck.shadow_main(n, k, cfg=cfg))
    fd = numcheck.fd_suite(count=100, points_per=5, seed=42)
    report.merge(fd)
    report.add("fd/size", "100 functions at 5 points", len(fd.cases) == 500)
    ok = record(9, "numeric shadow at 20 samples, tol 1e-8, plus finite differences", report)
    assert ok, failures(report)


def _run_cli(argv):
    out = io.StringIO()
    code = cli.run(argv, out=out, err=io.StringIO())
    return code, out.getvalue()


def test_criterion_10_cli_contract():
    from test_cli import GOLDEN_RUNS

    report = Report("acceptance 10")
    for name, argv, code in GOLDEN_RUNS:
        got_code, out = _run_cli(argv)
        report.add(f"cli/golden/{name}", "output matches the golden file", out == (GOLDEN / name).read_text())
        report.add(f"cli/exit/{name}", "exit code as recorded", got_code == code)
        if name.endswith(".json"):
            status = json.loads(out)["status"]
            report.add(f"cli/mapping/{name}", "exit 0 iff status pass", (got_code == 0) == (status == "pass"))
            report.add(f"cli/roundtrip/{name}", "JSON round-trips", Report.from_json(out).to_json() + "\n" == out)
    small_all = ["all", "--n-max", "2", "--k-max", "2", "--instances", "10", "--format", "json"]
    first, second = _run_cli(small_all), _run_cli(small_all)
    report.add("cli/all/deterministic", "repeated full-suite runs are identical", first == second and first[0] == 0)
    report.add("cli/usage", "k=0 is a usage error", _run_cli(["verify", "main", "--k", "0"])[0] == 2)
    report.add(
        "cli/limit",
        "term cap maps to exit 3",
        _run_cli(["verify", "rn", "--n", "3", "--k", "4", "--term-cap", "100"])[0] == 3,
    )
    ok = record(10, "CLI contract: golden files, exit codes, round-trip, determinism", report)
    assert ok, failures(report)
