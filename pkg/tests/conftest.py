import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def rp2():
    from ggtbench.fixtures import projective_plane
    return projective_plane()
