import os
import shutil
import sys

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

HAVE_Z3 = shutil.which("z3") is not None

needs_smt = pytest.mark.skipif(
    not (HAVE_Z3 or os.environ.get("MMS_SMT_CMD")), reason="no SMT solver on PATH"
)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
