from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lacunary.sparse_poly import SparsePoly

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

rationals = st.builds(
    Fraction,
    st.integers(-12, 12),
    st.integers(1, 6),
)
nonzero_rationals = rationals.filter(bool)


@st.composite
def polys(draw, max_deg=8, max_terms=5, min_terms=0):
    exps = draw(st.lists(st.integers(0, max_deg), min_size=min_terms, max_size=max_terms, unique=True))
    return SparsePoly({e: draw(nonzero_rationals) for e in exps})


@st.composite
def nonconstant_polys(draw, max_deg=6, max_terms=4):
    top = draw(st.integers(1, max_deg))
    p = draw(polys(max_deg=top - 1, max_terms=max_terms)) if top > 1 else SparsePoly()
    return p + SparsePoly({top: draw(nonzero_rationals)})


@st.composite
def deltas(draw, max_deg=6, max_terms=3):
    """Sparse polynomials with constant term 1."""
    exps = draw(st.lists(st.integers(1, max_deg), max_size=max_terms, unique=True))
    return SparsePoly({0: 1, **{e: draw(nonzero_rationals) for e in exps}})


# -- acceptance summary ------------------------------------------------------------

_acceptance: dict[int, tuple[str, str, float | None]] = {}


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    number = props["criterion"]
    failed = report.outcome == "failed"
    if report.when == "call" or failed:
        outcome = "FAIL" if failed else "PASS"
        _acceptance[number] = (outcome, props.get("title", ""), props.get("elapsed"))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        outcome, title, elapsed = _acceptance[number]
        took = f" ({elapsed:.2f} s)" if elapsed is not None else ""
        terminalreporter.write_line(f"criterion {number}: {outcome}  {title}{took}")
