import os

import pytest
from hypothesis import settings

from semired import SplitMix64

settings.register_profile("semired", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("semired")

SEED = int(os.environ.get("SEMIRED_SEED", "7"))


@pytest.fixture
def rng(request):
    return SplitMix64(SEED).spawn(request.node.name)
