import pytest

from handlers.field import Field
from handlers.quiver import Quiver, StabilityWeights
from handlers.representation import Representation
from utils.config import Config


@pytest.fixture
def config():
    return Config.from_dict({})


@pytest.fixture
def f2():
    return Field.prime(2)


@pytest.fixture
def a2():
    return Quiver.build(["v1", "v2"], [("a", "v1", "v2")])


@pytest.fixture
def kronecker():
    return Quiver.build(["v1", "v2"], [("a", "v1", "v2"), ("b", "v1", "v2")])


@pytest.fixture
def a3():
    return Quiver.build(["v1", "v2", "v3"], [("a", "v1", "v2"), ("b", "v2", "v3")])


@pytest.fixture
def weights(a2):
    """Θ = (1, 0), σ = (1, 1)."""
    return StabilityWeights.of(a2, (1, 0), (1, 1))


@pytest.fixture
def ex1(a2, f2):
    """A2 over F_2, d = (1, 1), zero map: unstable."""
    return Representation.from_rows(a2, f2, (1, 1), {"a": [[0]]})


@pytest.fixture
def ex2(a2, f2):
    """A2 over F_2, d = (1, 1), identity map: semistable."""
    return Representation.from_rows(a2, f2, (1, 1), {"a": [[1]]})


@pytest.fixture
def kronecker_zero(kronecker, f2):
    return Representation.from_rows(kronecker, f2, (1, 1), {"a": [[0]], "b": [[0]]})


EX1_PROBLEM = """{
  "quiver": {"vertices": ["v1", "v2"], "arrows": [{"id": "a", "src": "v1", "tgt": "v2"}]},
  "field": {"kind": "prime", "p": 2},
  "dims": {"v1": 1, "v2": 1},
  "matrices": {"a": [[0]]},
  "theta": {"v1": 1, "v2": 0},
  "sigma": {"v1": 1, "v2": 1}
}
"""


@pytest.fixture
def ex1_text():
    return EX1_PROBLEM


@pytest.fixture
def ex2_text():
    return EX1_PROBLEM.replace('"a": [[0]]', '"a": [[1]]')
