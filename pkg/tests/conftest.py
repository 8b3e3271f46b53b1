import pytest

from iaforge.game import Game


@pytest.fixture
def strict_game():
    # Both D and R are strictly dominated.
    return Game.bimatrix("UD", "LR", [[1, 1], [0, 0]], [[1, 0], [1, 0]])


@pytest.fixture
def two_round_game():
    # Round 1 removes D; only then is R dominated by L.
    return Game.bimatrix("UD", "LR", [[1, 1], [1, 0]], [[1, 0], [0, 1]])


@pytest.fixture
def abc_game():
    # C = (2, 2) is admissible yet pointwise-best at no column.
    return Game.bimatrix("ABC", ["X", "Y"], [[3, 0], [0, 3], [2, 2]], [[0, 0], [0, 0], [0, 0]])


@pytest.fixture
def single_game():
    return Game.bimatrix(["a"], ["b"], [[5]], [[7]])


@pytest.fixture
def constant_game():
    return Game.bimatrix("UD", "LR", [[0, 0], [0, 0]], [[0, 0], [0, 0]])


_ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def acceptance_log(request):
    """Lines reported by the acceptance module, printed in the terminal summary."""
    return request.config.stash.setdefault(_ACCEPTANCE_KEY, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
