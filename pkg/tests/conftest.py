import sys
from pathlib import Path

from hypothesis import settings

# the exact-arithmetic helpers live next to the tests
sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(acceptance.RESULTS, key=lambda k: int(k.split("-")[1])):
        terminalreporter.write_line(acceptance.RESULTS[key])
