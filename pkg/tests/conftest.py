def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One line per acceptance criterion at the end of the run."""
    results = []
    for status in ("passed", "failed", "error", "skipped"):
        for rep in terminalreporter.stats.get(status, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance" in nodeid and "::" in nodeid:
                results.append((nodeid.split("::")[-1], status))
    if results:
        terminalreporter.write_sep("=", "acceptance criteria")
        for name, status in sorted(set(results)):
            terminalreporter.write_line(f"{status.upper():8s} {name}")
