import random

import pytest

from uqsl2_studio.config import STUDIO_DEFAULTS


@pytest.fixture
def rng():
    return random.Random(STUDIO_DEFAULTS.random_seed)
