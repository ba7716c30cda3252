import os
import sys

import pytest
from hypothesis import settings

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")

ROOT = os.path.dirname(os.path.abspath(__file__))


@pytest.fixture(autouse=True)
def _no_env_seed(monkeypatch):
    monkeypatch.delenv("IWA_SEED", raising=False)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    cache = getattr(mod, "_CACHE", None)
    if not cache:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(cache):
        r = cache[cid]
        line = f"criterion {cid:2d} [{'PASS' if r.passed else 'FAIL'}] {r.title}"
        terminalreporter.write_line(line if r.passed else f"{line} -- {r.witness}")
