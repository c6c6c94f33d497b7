import pytest

from pyrgrow import certificate
from pyrgrow.validate import failures, validate

tests = [
    ("E101", 0),
    ("E101", 1),
    ("E101", 2),
    ("E102", 0),
    ("E201", 0),
    ("E201", 1),
    ("E202", 0),
    ("E203", 0),
    ("E301", 0),
    ("E302", 0),
    ("E303", 0),
    ("E304", 0),
    ("W401", 0),
    ("W402", 0),
]
test_ids = [f"{code}-{i}" for code, i in tests]


@pytest.mark.parametrize("code,i", tests, ids=test_ids)
def test_validate(datadir, code: str, i: int) -> None:
    path = datadir / f"{code}-{i}.json"
    cert = certificate.load(path)
    report = validate(cert, select=[code], progress_handler=None)
    print(report)
    assert len(report[code]["items"]) > 0


def test_validate_valid_chain(datadir) -> None:
    cert = certificate.load(datadir / "chain.json")
    report = validate(cert, progress_handler=None)
    assert failures(report) == []
    assert set(report) >= {"E101", "E201", "W401"}


def test_validate_select_category(datadir) -> None:
    cert = certificate.load(datadir / "W401-0.json")
    report = validate(cert, select=["W"], progress_handler=None)
    assert all(code.startswith("W") for code in report)
    assert failures(report) == ["W401"]


def test_validate_skips_steps_of_malformed_initial(datadir) -> None:
    cert = certificate.load(datadir / "E101-1.json")
    report = validate(cert, progress_handler=None)
    assert failures(report) == ["E101"]
