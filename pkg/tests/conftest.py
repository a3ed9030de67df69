import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from damptune import reference_plant


@pytest.fixture(scope="session")
def ref_plant():
    return reference_plant()
