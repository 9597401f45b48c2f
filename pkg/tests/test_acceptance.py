"""End-to-end acceptance checks, one test per criterion.

Each test records a one-line verdict in LINES; conftest prints them in
the terminal summary. Runtimes are measured from cold caches.
"""

import time
from fractions import Fraction

from flint import arb

from zfr import arith, smoothing
from zfr.certificate import Status
from zfr.certifier import run_suites
from zfr.cli import main
from zfr.mp_core import endpoints, num
from zfr.region import PROFILES, HypothesisAB, M1_of, best_width, q_coefficient, sup_X, width, width_mccurley
from zfr.trig_poly import coefficients_from
from zfr.zero_counts import zerocount_constants

LINES = []


def verdict(n, title, problems, seconds, limit):
    if seconds > limit:
        problems.append(f"runtime {seconds:.1f}s over {limit}s")
    ok = not problems
    LINES.append(f"criterion {n} {title}: {'PASS' if ok else 'FAIL'} ({seconds:.1f}s)"
                 + ("" if ok else " - " + "; ".join(problems)))
    assert ok, "; ".join(problems)


def printed_digits(value: arb, printed: str) -> bool:
    """Enclosure lies within the truncation or rounding cell of ``printed``."""
    p = Fraction(printed)
    ulp = Fraction(1, 10 ** len(printed.split(".")[1]))
    lo, hi = endpoints(value)
    return (p <= lo and hi < p + ulp) or (p - ulp / 2 <= lo and hi <= p + ulp / 2)


def test_criterion_1_constant_reproduction():
    smoothing._kernel_system.cache_clear()
    start = time.perf_counter()
    ks = smoothing.kernel_system()
    problems = []
    for name, value, printed in [
        ("theta", ks.theta, "1.152214629976363048877"),
        ("w(0)", ks.w0, "6.82602968445295450905"),
        ("c0", ks.c0, "16.2983216223932350562"),
        ("c1", ks.c1, "19.9352005926244107856"),
        ("c2", ks.c2, "9.4813169452950521682"),
        ("c3", ks.c3, "3.945405755634895592"),
    ]:
        if not printed_digits(value, printed):
            problems.append(f"{name} = {value.str(len(printed), radius=False)} does not match printed {printed}")
    p = coefficients_from("0.225", "0.9")
    table = (p.b0, p.b1, p.b2, p.b3, p.b4, p.b5)
    want = tuple(Fraction(x) for x in ("10.01055", "17.145", "10.6825", "4.5", "1", "33.3275"))
    if table != want:
        problems.append(f"b-table {table} != {want}")
    verdict(1, "constant reproduction", problems, time.perf_counter() - start, 10)


def test_criterion_2_kernel_bounds():
    smoothing._kernel_system.cache_clear()
    start = time.perf_counter()
    ks = smoothing.kernel_system()
    problems = []
    if not ks.sup_exp_w <= num("7.23"):
        problems.append(f"sup e^x w = {ks.sup_exp_w.str(10)} not <= 7.23")
    if not ks.H_R <= num("66.3307"):
        problems.append(f"H(197) = {ks.H_R.str(10)} not <= 66.3307")
    if not ks.c4 <= num("1.055656"):
        problems.append(f"c4 = {ks.c4.str(10)} not <= 1.055656")
    for z, name in ((0, "W(0)"), (-1, "W(-1)")):
        closed, quad = smoothing.laplace_W(ks, z), smoothing.laplace_W_quad(ks, z)
        widest = max(endpoints(closed)[1] - endpoints(closed)[0], endpoints(quad)[1] - endpoints(quad)[0])
        if not closed.overlaps(quad):
            problems.append(f"{name}: closed form and quadrature disjoint")
        if widest > Fraction(1, 10**15):
            problems.append(f"{name}: width {float(widest):.2e} > 1e-15")
    verdict(2, "kernel bounds", problems, time.perf_counter() - start, 60)


def test_criterion_3_main_chain():
    start = time.perf_counter()
    certs = {c.id: c for c in run_suites(["leading", "second", "third", "contradiction"])}
    problems = [f"{i} {c.status}" for i, c in certs.items() if not c.proved]
    lead = certs["leading.constant"]
    lo, hi = endpoints(lead.lhs)
    if hi - lo > Fraction(1, 10**7):
        problems.append(f"leading constant enclosure width {float(hi - lo):.2e} > 1e-7")
    if not lead.lhs < num("2.99968") or not lead.lhs > num("2.99967"):
        problems.append("leading constant does not round up to 2.99968 in the fifth decimal")
    m_logq = certs["contradiction.crossmult_logq"].margin
    m_ll = certs["contradiction.crossmult_loglogq"].margin
    if not (m_logq > 0 and m_logq < num("1e-4")):
        problems.append(f"log q margin {m_logq.str(5)} not in (0, 1e-4)")
    if not (m_ll > num("3e-5") and m_ll < num("5e-5")):
        problems.append(f"loglog q margin {m_ll.str(5)} not near 4e-5")
    for needed in ("contradiction.crossmult_sweep", "contradiction.lastequation", "contradiction.ratio_bound",
                   "contradiction.ratio_bound_tail", "second.secondequation", "second.secondequation_tail",
                   "third.b5_over_2b0", "third.b234_over_b0"):
        if needed not in certs:
            problems.append(f"missing {needed}")
    verdict(3, "main chain certification", problems, time.perf_counter() - start, 300)


def test_criterion_4_deduction():
    start = time.perf_counter()
    problems = []
    s = sup_X("e^1944")
    if not s.value <= num("5.61718"):
        problems.append(f"sup X = {s.value.str(10)} not <= 5.61718")
    if not (s.argmax > 23900 and s.argmax < 24100):
        problems.append(f"maximiser log tau = {s.argmax.str(8)} outside [23900, 24100]")
    ratio = HypothesisAB.of().B ** (num(2) / 3) / M1_of("e^1944", supX=s.value)
    if not (ratio > num("61.29") and ratio < num("61.32")):
        problems.append(f"B^(2/3)/M1 = {ratio.str(10)} outside [61.29, 61.32]")
    if not q_coefficient("e^1944") <= num("10.3"):
        problems.append("10.082 + 1.607/loglog T0 not <= 10.3")
    verdict(4, "deduction constants", problems, time.perf_counter() - start, 60)


def test_criterion_5_arithmetic():
    arith._mertens.cache_clear()
    arith.prime_table.cache_clear()
    start = time.perf_counter()
    problems = []
    c = arith.corollary_last_check(2310)
    if not c.proved:
        problems.append(f"divisor sweep {c.status} at {c.witness}")
    elif c.extra["min_margin_q"] != 6:
        problems.append(f"minimum margin at q={c.extra['min_margin_q']}, not 6")
    elif not (c.extra["min_margin"] > num("7e-4") and c.extra["min_margin"] < num("8e-4")):
        problems.append(f"q=6 margin {c.extra['min_margin'].str(5)} not near 7.5e-4")
    E = arith.mertens_E().E
    if E.rad() > num("1e-10"):
        problems.append(f"E radius {E.rad().str(3)} > 1e-10")
    target = -arb.const_euler() - num("0.75537")
    if not abs(E - target) < num("1e-5"):
        problems.append("E not within 1e-5 of -gamma - 0.75537")
    verdict(5, "divisor sums and E", problems, time.perf_counter() - start, 30)


def test_criterion_6_weak_region():
    start = time.perf_counter()
    certs = {c.id: c for c in run_suites(["weak_region", "errata"])}
    problems = []
    for needed in ("weak.lazymainterm", "weak.1minusb", "weak.weak86", "weak.weak104"):
        if not certs[needed].proved:
            problems.append(f"{needed} {certs[needed].status}")
    if certs["errata.weak_a0_9"].status is not Status.FAILED:
        problems.append("reading a2 = 9 was not flagged")
    for cid, bound in (("weak.weak86", 86), ("weak.weak104", 104)):
        lhs = certs[cid].lhs
        if not (lhs > bound - 1 and lhs <= bound):
            problems.append(f"{cid}: c B^(2/3) = {lhs.str(8)} does not round up to {bound}")
    verdict(6, "weak region coefficients", problems, time.perf_counter() - start, 60)


def test_criterion_7_zero_count_constants():
    start = time.perf_counter()
    C1, C2 = zerocount_constants("0.00019")
    problems = []
    if not C1 <= num("0.2297"):
        problems.append(f"C1 = {C1.str(10)} not <= 0.2297")
    if not C2 <= num("24.77"):
        problems.append(f"C2 = {C2.str(10)} not <= 24.77")
    elif not num("24.77") - C2 < num("1e-3"):
        problems.append(f"C2 margin {(num('24.77') - C2).str(5)} not < 1e-3")
    verdict(7, "zero-count constants", problems, time.perf_counter() - start, 60)


def test_criterion_8_sensitivity(capsys):
    start = time.perf_counter()
    problems = []
    for p in ("2.99968=2.98", "0.16521=0.166", "30.26576=30.2"):
        code = main(["verify", "--perturb", p])
        capsys.readouterr()
        if code != 1:
            problems.append(f"--perturb {p} exits {code}")
    verdict(8, "sensitivity to broken constants", problems, time.perf_counter() - start, 300)


def test_criterion_9_region_queries():
    start = time.perf_counter()
    problems = []
    w = width(PROFILES["smallt"], 3, 10)
    if not (w > num("0.00888") and w < num("0.00890")):
        problems.append(f"smallt width at (3, 10) = {w.str(8)}")
    exact = 1 / (num("9.64590880") * arb(30).log())
    if not (width_mccurley(3, 10).overlaps(exact) and width_mccurley(3, 10).rad() < num("1e-70")):
        problems.append("McCurley width differs from its closed form")
    qs = [3, 4, 7, 30, 210, 10**3, 10**5, 10**7, 10**9, 10**12]
    ts = [1, 2, 10, 1000, 10**6, 10**30, 10**300, "e^2000", "e^100000", "e^10000000"]
    grid = [[best_width(q, t)[0] for t in ts] for q in qs]
    for i in range(len(qs)):
        for j in range(len(ts)):
            if i and grid[i][j] > grid[i - 1][j]:
                problems.append(f"width increases in q at q={qs[i]}, t={ts[j]}")
            if j and grid[i][j] > grid[i][j - 1]:
                problems.append(f"width increases in t at q={qs[i]}, t={ts[j]}")
    verdict(9, "region queries", problems, time.perf_counter() - start, 60)
