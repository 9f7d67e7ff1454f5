import sys


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[number])
    passed = sum(line.startswith("[PASS]") for line in module.RESULTS.values())
    terminalreporter.write_line(f"{passed}/{len(module.RESULTS)} criteria passed")
