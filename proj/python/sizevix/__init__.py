"""VIX-normalized size-CAPM market model.

Thin wrapper around the compiled core: model fitting (OLS with Ljung-Box /
Jarque-Bera diagnostics, log-AR(1) volatility), market simulation and
capital-distribution curves, stability checks, and the Poisson/Gumbel
asymptotics of the curve ends.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
