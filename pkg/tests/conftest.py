import os
from os import path

import hypothesis
import pytest

from cdo_workbench.lie.builtins import abelian, builtin_algebra, heisenberg, sl


hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.register_profile("ci", max_examples=100, deadline=None)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "fast"))

DATA = path.join(path.dirname(__file__), "..", "cdo_workbench", "data", "algebras")
GOLDEN = path.join(path.dirname(__file__), "golden")


@pytest.fixture(scope="session")
def sl2():
    return sl(2)


@pytest.fixture(scope="session")
def sl3():
    return sl(3)


@pytest.fixture(scope="session")
def heisenberg3():
    return heisenberg(3)


@pytest.fixture(scope="session")
def borel_sl2():
    return builtin_algebra("borel(sl2)")


@pytest.fixture(scope="session")
def abelian2():
    return abelian(2)
