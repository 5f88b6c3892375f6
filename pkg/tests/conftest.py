import json
import pathlib
import warnings

import pytest

from mtzeta.errors import AccuracyWarning

ORACLE_FILE = pathlib.Path(__file__).parent / "oracles" / "frozen.json"


@pytest.fixture(scope="session")
def oracle():
    """Values computed once by tests/oracles/make_oracles.py (mpmath, 30 digits)."""
    return json.loads(ORACLE_FILE.read_text())


@pytest.fixture(autouse=True)
def _quiet_accuracy_warnings():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", AccuracyWarning)
        yield
