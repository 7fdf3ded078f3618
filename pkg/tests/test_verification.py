#!/usr/bin/env python3
"""
Tests for the invariant suite behind `verify`
"""

import os
import sys

import numpy as np

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.config import NumericsConfig
from src.qsymb import Generator
from src.verification import (
    CHECKS,
    all_passed,
    check_golden_identities,
    check_qnum,
    random_polynomial,
    run_verification,
)


def test_cheap_checks_pass(capsys):
    results = run_verification(NumericsConfig(), checks=['qnum', 'opcore', 'golden_identities'],
                               print_table=False)
    assert set(results) == {'qnum', 'opcore', 'golden_identities'}
    assert all_passed(results)
    out = capsys.readouterr().out
    assert "Total checks: 3" in out
    assert "Bracket conventions" not in out


def test_failing_check_is_reported(mocker, capsys):
    mocker.patch.dict(CHECKS, {'qnum': ("🔢", lambda numerics: ["forced issue"])})
    results = run_verification(checks=['qnum'], print_table=False)
    assert results['qnum']['status'] == 'issues_found'
    assert not all_passed(results)
    assert "forced issue" in capsys.readouterr().out


def test_raising_check_is_failed(mocker):
    def explode(numerics):
        raise RuntimeError("boom")

    mocker.patch.dict(CHECKS, {'qnum': ("🔢", explode)})
    results = run_verification(checks=['qnum'], print_table=False)
    assert results['qnum'] == {'status': 'failed', 'error': 'boom'}


def test_individual_checks_return_no_issues():
    numerics = NumericsConfig()
    assert check_qnum(numerics) == []
    assert check_golden_identities(numerics) == []


def test_random_polynomial_is_seeded():
    alphabet = [Generator.X, Generator.P]
    first = random_polynomial(np.random.default_rng(7), alphabet)
    second = random_polynomial(np.random.default_rng(7), alphabet)
    assert first == second
    assert all(set(word) <= set(alphabet) for word in first.terms)
