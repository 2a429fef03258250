import os

from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=1000, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("quick", max_examples=10, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


# acceptance criteria report, one line per criterion
_CRITERIA: dict[int, str] = {}


def record_criterion(n: int, checks: dict, capsys=None) -> bool:
    """checks maps a label to (ok, detail). Prints and stores one PASS/FAIL line."""
    ok = all(v[0] for v in checks.values())
    parts = "; ".join(f"{k} {'ok' if v[0] else 'FAILS'} ({v[1]})" for k, v in checks.items())
    line = f"CRITERION {n}: {'PASS' if ok else 'FAIL'}: {parts}"
    _CRITERIA[n] = line
    if capsys is not None:
        with capsys.disabled():
            print("\n" + line)
    else:
        print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(_CRITERIA[n])
