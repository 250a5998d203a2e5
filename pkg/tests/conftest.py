import random

from hypothesis import HealthCheck, settings, strategies as st

from ordcoh.ordcore import ZERO, add, nat, omega_power
from ordcoh.sampling import random_below

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

ACCEPTANCE_LINES = []


@st.composite
def small_ordinals(draw, max_exp=3, cmax=4):
    """Ordinals below w^(max_exp+1) with natural exponents."""
    out = ZERO
    for e in range(max_exp, -1, -1):
        c = draw(st.integers(0, cmax))
        if c:
            out = add(out, omega_power(e, c) if e else nat(c))
    return out


@st.composite
def tower_ordinals(draw):
    """Ordinals that may carry ordinal exponents such as w^(w+1)."""
    rng = random.Random(draw(st.integers(0, 10 ** 6)))
    return random_below(omega_power(omega_power(2)), rng, cmax=3)


@st.composite
def ordinal_pairs(draw, max_exp=3):
    a = draw(small_ordinals(max_exp))
    b = draw(small_ordinals(max_exp))
    from ordcoh.ordcore import compare
    if compare(a, b) > 0:
        a, b = b, a
    return a, b


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
