import os
import sys

import pytest

from hopfolog.exactfield import set_self_check

sys.path.insert(0, os.path.dirname(__file__))


@pytest.fixture(autouse=True, scope="session")
def _self_check():
    set_self_check(True)
    yield
    set_self_check(False)
