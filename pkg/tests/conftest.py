import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make oracles importable

from mixentropy import FbmSpec, generate_fbm


@pytest.fixture(scope="session")
def brownian_path():
    """One long seed-fixed Brownian path shared by the statistical tests."""
    return generate_fbm(FbmSpec(0.5, 2 ** 17, seed=424242))


@pytest.fixture()
def rng():
    return np.random.default_rng(20260810)


def write_price_file(path, values, header=True):
    lines = ["price"] if header else []
    lines.extend(repr(float(v)) for v in values)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
