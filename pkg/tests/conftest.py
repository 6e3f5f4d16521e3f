import numpy as np
import pytest
from click.testing import CliRunner

from tripartite_hardy.cli import cli
from tripartite_hardy.services.hardy3 import HardySettings
from tripartite_hardy.services.tensor_core import make_state

X_GEDANKEN = (1j - 2) / 5

GEDANKEN_STATE = """\
# |000> + |100> + |110> + |111>
dims 2 2 2
0 0 0 1 0
1 0 0 1 0
1 1 0 1 0
1 1 1 1 0
"""

GEDANKEN_SETTINGS = """\
1 a 1 0 -0.4 0.2
1 b 1 0 0 1
2 a 1 0 0 1
2 b 1 0 1 0
3 a -0.4 0.2 1 0
3 b 1 0 0 1
"""

NEAR_OPTIMAL_STATE = """\
dims 2 2 2
0 0 0 1 0
0 0 1 1 0
0 1 0 1 0
1 0 0 -1 0
1 0 1 -1 0
0 1 1 -3 0
1 1 0 -3 0
1 1 1 -3 0
"""

Z_X_SETTINGS = """\
1 a 1 0 0 0
1 b 1 0 1 0
2 a 1 0 0 0
2 b 1 0 1 0
3 a 1 0 0 0
3 b 1 0 1 0
"""

GHZ_STATE = """\
dims 2 2 2
0 0 0 1 0
1 1 1 1 0
"""

PRODUCT_STATE = """\
dims 2 2 2
0 0 0 1 0
"""

QUTRIT_GHZ_STATE = """\
dims 3 3 3
0 0 0 1 0
1 1 1 1 0
2 2 2 1 0
"""


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def invoke(runner):
    def _invoke(*args):
        return runner.invoke(cli, [str(arg) for arg in args])
    return _invoke


@pytest.fixture
def write_file(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path
    return _write


@pytest.fixture
def gedanken_state():
    return make_state((2, 2, 2), [((0, 0, 0), 1), ((1, 0, 0), 1), ((1, 1, 0), 1), ((1, 1, 1), 1)])


@pytest.fixture
def gedanken_settings():
    plus_i = [1, 1j]
    return HardySettings.from_rays(
        a_rays=[[1, X_GEDANKEN], plus_i, [X_GEDANKEN, 1]],
        b_rays=[plus_i, [1, 1], plus_i],
    )


@pytest.fixture
def near_optimal_state():
    """|00+> + |010> - |10+> - 3|011> - 3|11+> with |+> = |0> + |1>."""
    entries = [
        ((0, 0, 0), 1), ((0, 0, 1), 1),
        ((0, 1, 0), 1),
        ((1, 0, 0), -1), ((1, 0, 1), -1),
        ((0, 1, 1), -3),
        ((1, 1, 0), -3), ((1, 1, 1), -3),
    ]
    return make_state((2, 2, 2), entries)


@pytest.fixture
def z_x_settings():
    return HardySettings.from_rays(a_rays=[[1, 0]] * 3, b_rays=[[1, 1]] * 3)


@pytest.fixture
def ghz_state():
    return make_state((2, 2, 2), [((0, 0, 0), 1), ((1, 1, 1), 1)])


@pytest.fixture
def random_state():
    def _random_state(seed, dims=(2, 2, 2)):
        rng = np.random.default_rng(seed)
        amps = rng.standard_normal(dims) + 1j * rng.standard_normal(dims)
        return make_state(dims, [(index, amps[index]) for index in np.ndindex(*dims)])
    return _random_state


INPUT_TEXTS = {
    "gedanken": GEDANKEN_STATE,
    "gedanken_settings": GEDANKEN_SETTINGS,
    "near_optimal": NEAR_OPTIMAL_STATE,
    "z_x_settings": Z_X_SETTINGS,
    "ghz": GHZ_STATE,
    "product": PRODUCT_STATE,
    "qutrit_ghz": QUTRIT_GHZ_STATE,
}


@pytest.fixture
def input_file(write_file):
    """Write one of the canned state or settings texts and return its path."""
    def _input_file(name):
        return write_file(f"{name}.txt", INPUT_TEXTS[name])
    return _input_file
