"""Acceptance gate: one line per criterion, each checked exactly."""

import json

import pytest

from veritas.pipeline import REGISTRY, Pipeline, run_claim

from conftest import ACCEPTANCE_LINES


@pytest.fixture(scope="module")
def gate():
    return Pipeline(jobs=2)


@pytest.mark.parametrize("cid", list(REGISTRY))
def test_criterion(gate, cid):
    rec = run_claim(gate, cid)
    line = (
        f"{cid.split('_')[0]} {rec.status.upper():4} {cid:<28} "
        f"expected={json.dumps(rec.expected)} observed={json.dumps(rec.observed)}"
    )
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert rec.passed, json.dumps(rec.details, indent=1)[:4000]
