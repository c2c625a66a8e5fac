import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from fuchsian_doubles.cli import Pipeline  # noqa: E402
from fuchsian_doubles.fixtures import FIXTURES  # noqa: E402


@pytest.fixture(scope="session")
def fd():
    return Pipeline(*FIXTURES["FD"]())


@pytest.fixture(scope="session")
def fx():
    return Pipeline(*FIXTURES["FX"]())


@pytest.fixture(scope="session", params=["FD", "FX"])
def both(request, fd, fx):
    return fd if request.param == "FD" else fx
