from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def small_fractions(height=9):
    return st.builds(Fraction, st.integers(-height, height), st.integers(1, height))


def fraction_rows(n, m=None, height=9):
    m = n if m is None else m
    return st.lists(st.lists(small_fractions(height), min_size=m, max_size=m), min_size=n, max_size=n)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import SUMMARY

    if SUMMARY:
        terminalreporter.section("acceptance criteria")
        for line in SUMMARY:
            terminalreporter.write_line(line)
