import time

_START = time.perf_counter()
SUITE_BUDGET = 60.0


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # the runtime part of acceptance criterion 8 only makes sense for a full run
    if config.args and any("test_acceptance" in a for a in config.args):
        return
    elapsed = time.perf_counter() - _START
    status = "PASS" if elapsed < SUITE_BUDGET else "FAIL"
    terminalreporter.write_line(f"[acceptance 8b] full suite runtime {elapsed:.1f} s < {SUITE_BUDGET:.0f} s: {status}")
