import numpy as np
import pytest

from polyes.equations import EquationOfState


def random_states(rng, n, dim=2, rho_range=(0.1, 5.0), vmax=3.0):
    rho = rng.uniform(*rho_range, size=n)
    v = rng.uniform(-vmax, vmax, size=(dim, n))
    return np.vstack([rho, rho * v])


def eos_for_gamma(gamma, kappa=0.7, c=1.3):
    if gamma == 1.0:
        return EquationOfState.isothermal(c)
    return EquationOfState.polytropic(kappa, gamma)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=["isothermal", "polytropic"])
def eos(request):
    if request.param == "isothermal":
        return EquationOfState.isothermal(1.0)
    return EquationOfState.polytropic(0.5, 1.4)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
