def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    reports = getattr(test_acceptance, "REPORTS", {})
    if not reports:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(reports):
        rep = reports[cid]
        gaps = sum(1 for c in rep.checks if not c.ok and c.known_gap)
        status = "PASS" if rep.ok else "FAIL"
        note = f" ({gaps} known gap{'s' if gaps != 1 else ''})" if gaps else ""
        terminalreporter.write_line(
            f"criterion {cid} {status}: {rep.title} [{rep.seconds:.1f}s of {rep.limit:.0f}s]{note}")
