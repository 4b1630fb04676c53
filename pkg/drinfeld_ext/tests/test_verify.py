import logging
import sys
from types import SimpleNamespace

import pytest

from drinfeld_ext.base_field import ABORT_DEGREE_ENV, DEFAULT_ABORT_DEGREE, FqConfig
from drinfeld_ext.config import CliConfig, abort_degree_from_env
from drinfeld_ext.exceptions import ConfigError
from drinfeld_ext.ext_logger import get_logger, set_console_level
from drinfeld_ext.verify import (
    SUITES,
    expand_suites,
    make_rng,
    random_drinfeld,
    random_k,
    run_suite,
    run_suites,
)


def test_expand_suites():
    assert expand_suites(["all"]) == list(SUITES)
    assert expand_suites(["cocycle,inner", "cocycle"]) == ["cocycle", "inner"]
    with pytest.raises(ConfigError, match="unknown suite"):
        expand_suites(["cocycle,nope"])


def test_generators_are_reproducible(f3):
    first = [random_k(make_rng(7, 1, trial), f3) for trial in range(5)]
    second = [random_k(make_rng(7, 1, trial), f3) for trial in range(5)]
    assert first == second
    E = random_drinfeld(make_rng(3), f3, monic_top=True)
    assert 2 <= E.rank <= 5
    assert E.a(E.rank).is_one()


def test_random_k_denominator_degree(f2):
    rng = make_rng(11)
    for _ in range(20):
        x = random_k(rng, f2)
        assert x.den.degree <= 2 and x.num.degree <= 2


@pytest.mark.parametrize("name", ["field", "skew", "phi", "idempotence", "linearity"])
def test_suites_pass(name, f3):
    result = run_suite(name, f3, seed=1, trials=3)
    assert result.passed, result.failure
    assert result.to_json() == {"name": name, "trials": 3, "failed_trial": None, "failure": None}


def test_failing_suite_reports_trial(f2, monkeypatch):
    monkeypatch.setitem(SUITES, "field", lambda rng, config, bound: "broken")
    result = run_suite("field", f2, seed=0, trials=4)
    assert not result.passed
    assert result.failed_trial == 0 and result.failure == "broken"


def test_run_suites_uses_cli_config(f2):
    config = CliConfig(field=f2, seed=5, trials=2)
    results = run_suites(["phi"], config)
    assert [r.name for r in results] == ["phi"]
    assert results[0].trials == 2


def test_cli_config_validation(f2):
    with pytest.raises(ConfigError):
        CliConfig(field=f2, trials=0)
    with pytest.raises(ConfigError):
        CliConfig(field=f2, degree_bound=-1)
    with pytest.raises(ConfigError):
        CliConfig(field=f2, output="xml")
    with pytest.raises(ConfigError):
        CliConfig(field=f2, seed=-1)


def test_cli_config_from_args(monkeypatch):
    monkeypatch.setenv(ABORT_DEGREE_ENV, "500")
    args = SimpleNamespace(
        q=9, modulus=None, seed=3, trials=7, bound=4, output="json", normalize=True, verbose=1
    )
    config = CliConfig.from_args(args)
    assert config.field == FqConfig.from_q(9)
    assert config.abort_theta_degree == 500
    assert config.degree_bound == 4 and config.normalize


def test_abort_degree_from_env(monkeypatch):
    monkeypatch.delenv(ABORT_DEGREE_ENV, raising=False)
    assert abort_degree_from_env() == DEFAULT_ABORT_DEGREE
    monkeypatch.setenv(ABORT_DEGREE_ENV, "many")
    with pytest.raises(ConfigError):
        abort_degree_from_env()


def test_logger():
    logger = get_logger("tests")
    assert logger.name == "drinfeld_ext.tests"
    assert get_logger("drinfeld_ext.verify").name == "drinfeld_ext.verify"
    assert get_logger().propagate is False
    assert set_console_level(0) == logging.WARNING
    assert set_console_level(1) == logging.INFO
    assert set_console_level(3) == logging.DEBUG
    set_console_level(0)


def test_logger_handlers_stay_off_stdout(tmp_path):
    logger = get_logger(log_dir=str(tmp_path))
    streams = [h.stream for h in logger.handlers if type(h) is logging.StreamHandler]
    assert streams and all(s is not sys.stdout for s in streams)
