"""Every acceptance criterion is wired into ``iwa verify``."""
import io

from iwasawa.checks import REGISTRY
from iwasawa.cli import run_command

EXPECTED = set(range(1, 14))


def test_registry_enumerates_all_criteria():
    assert set(REGISTRY) == EXPECTED
    for cid, (title, fn) in REGISTRY.items():
        assert title and callable(fn)


def test_verify_reports_every_registered_check():
    out, err = io.StringIO(), io.StringIO()
    run_command(["verify", "--only", "1,4,12", "--format", "csv"], out, err)
    ids = [line.split(",")[0] for line in out.getvalue().splitlines()[1:]]
    assert ids == ["1", "4", "12"]


def test_unknown_criterion_is_usage_error():
    assert run_command(["verify", "--only", "99"], io.StringIO(), io.StringIO()) == 2
