import json
import os
from importlib import resources

import pytest

from realforms.algebra import LieAlgebra


def pytest_collection_modifyitems(config, items):
    if os.environ.get("RUN_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="long-running regression; set RUN_SLOW=1 to enable")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


_ALG_CACHE: dict = {}


@pytest.fixture(scope="session")
def alg():
    """Shared algebra builder; tables are immutable so caching is safe."""

    def get(name: str) -> LieAlgebra:
        if name not in _ALG_CACHE:
            _ALG_CACHE[name] = LieAlgebra.build(name)
        return _ALG_CACHE[name]

    return get


@pytest.fixture(scope="session")
def fixture_json():
    def load(name: str) -> dict:
        path = resources.files("realforms").joinpath("data").joinpath(name + ".json")
        return json.loads(path.read_text())

    return load
