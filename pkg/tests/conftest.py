import os
import tempfile

# loggers are created at import time; keep their files out of the checkout
os.environ.setdefault("KNSUPER_LOG_DIR", tempfile.mkdtemp(prefix="knsuper-log-"))

import pytest  # noqa: E402

from knsuper.core.merofun import PunctureConfig  # noqa: E402


@pytest.fixture
def cfg3() -> PunctureConfig:
    return PunctureConfig.three_point()


@pytest.fixture
def cfg2() -> PunctureConfig:
    return PunctureConfig.two_point()
