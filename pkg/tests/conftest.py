import json
from pathlib import Path

import pytest

_CFG_PATH = Path(__file__).parent / "gridconfig.json"


@pytest.fixture(scope="session")
def gridcfg() -> dict:
    """Pinned parameter grids and seeds; keep failures reproducible."""
    with open(_CFG_PATH) as fh:
        return json.load(fh)
