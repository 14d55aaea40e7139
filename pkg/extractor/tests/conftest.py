import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from wav_support import make_tone_wavs  # noqa: E402


@pytest.fixture
def tone_wavs(tmp_path):
    return make_tone_wavs(tmp_path)
