import pytest

from zfr.certificate import Status, check
from zfr.certifier import (
    DEFAULT_SUITES,
    PRINTED,
    SUITES,
    Constants,
    exit_code,
    expand_suites,
    render,
    run_suites,
    summary,
)
from zfr.mp_core import interval, num


@pytest.fixture(scope="module")
def default_run():
    return run_suites(["all"])


def test_default_suites_all_proved(default_run):
    s = summary(default_run)
    assert s["total"] > 100
    assert s["proved"] == s["total"], [c.id for c in default_run if not c.proved]
    assert exit_code(default_run) == 0


def test_ids_unique_and_prefixed(default_run):
    ids = [c.id for c in default_run]
    assert len(ids) == len(set(ids)) and ids == sorted(ids)
    prefixes = {"kernel", "coeffs", "zero_counts", "deduction", "leading", "second", "third",
                "contradiction", "appendixA", "weak"}
    assert {i.split(".")[0] for i in ids} == prefixes


def test_render_is_deterministic(default_run):
    again = run_suites(["all"])
    assert render(default_run) == render(again)
    last = render(default_run).splitlines()[-1]
    assert last == f"SUMMARY total={len(default_run)} proved={len(default_run)} failed=0 inconclusive=0"


def test_errata_fail_with_witnesses():
    certs = run_suites(["errata"])
    assert certs and all(c.status is Status.FAILED for c in certs)
    assert all(c.witness for c in certs)
    ids = {c.id for c in certs}
    assert {"errata.H_R_printed", "errata.c1_printed", "errata.prime_sum_literal"} <= ids
    assert exit_code(certs) == 1


@pytest.mark.parametrize("name, value, failing", [
    ("2.99968", "2.98", "leading.constant"),
    ("0.16521", "0.166", "coeffs.cos2_theta"),
    ("30.26576", "30.2", "weak.lazymainterm"),
])
def test_adverse_perturbation_is_caught(name, value, failing):
    suites = {"leading": "leading", "coeffs": "coefficients", "weak": "weak_region"}
    certs = run_suites([suites[failing.split(".")[0]]], constants=Constants({name: value}))
    failed = [c.id for c in certs if c.status is Status.FAILED]
    assert failed == [failing]
    assert exit_code(certs) == 1


def test_benign_perturbation_keeps_suite_green():
    # moving an upper bound up cannot break it
    certs = run_suites(["leading"], constants=Constants({"2.99968": "2.9997"}))
    assert exit_code(certs) == 0


def test_constants_parse():
    k = Constants.parse(["2.99968=2.98"])
    assert k("2.99968").overlaps(num("2.98"))
    assert k("0.16521").overlaps(num("0.16521"))
    with pytest.raises(KeyError):
        Constants.parse(["1.234567=1"])
    with pytest.raises(ValueError):
        Constants.parse(["2.99968"])
    with pytest.raises(ValueError):
        Constants.parse(["2.99968=abc"])


def test_every_printed_constant_reads_as_decimal():
    k = Constants()
    for name in PRINTED:
        assert k(name).overlaps(num(name))


def test_expand_suites():
    assert expand_suites(["all"]) == list(DEFAULT_SUITES)
    assert "errata" not in DEFAULT_SUITES and "errata" in SUITES
    assert expand_suites(["kernel", "kernel", "errata"]) == ["kernel", "errata"]
    with pytest.raises(KeyError):
        expand_suites(["nope"])


def test_exit_code_ranks_failed_over_inconclusive():
    ok = check("x.ok", num(1), num(2))
    bad = check("x.bad", num(3), num(2))
    unsure = check("x.unsure", interval(num(1), num(3)), num(2))
    assert unsure.status is Status.INCONCLUSIVE
    assert exit_code([ok]) == 0
    assert exit_code([ok, bad]) == 1
    assert exit_code([ok, unsure]) == 2
    assert exit_code([bad, unsure]) == 1
