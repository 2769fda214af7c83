import sys
from fractions import Fraction
from pathlib import Path

from hypothesis import strategies as st

from blocklie import BasisIndex, Element, InnerOuterDerivation, Scalar

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(__file__).parent / "data"

rationals = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6))
scalars = st.builds(Scalar, rationals, st.one_of(st.just(Fraction(0)), rationals))
nonzero_scalars = scalars.filter(bool)
indices = st.builds(BasisIndex, st.integers(-6, 6), st.integers(0, 5))
elements = st.dictionaries(indices, nonzero_scalars, max_size=5).map(Element)
derivations = st.builds(InnerOuterDerivation, elements, scalars)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance.acceptance_lines():
        terminalreporter.write_line(line)
