"""Collects acceptance outcomes and prints one line per criterion at the end of the run."""

OUTCOMES = {}


def record(cid: int, title: str, passed: bool, detail: str) -> None:
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {cid:>2}: {title} ({detail})"
    OUTCOMES[cid] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(OUTCOMES):
        terminalreporter.write_line(OUTCOMES[cid])
    missing = sorted(set(range(1, 12)) - set(OUTCOMES))
    if missing:
        terminalreporter.write_line(f"not run: {missing}")
