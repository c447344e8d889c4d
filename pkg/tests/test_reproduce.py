from metalie.reproduce import ITEMS, SuiteConfig, run_suite


def test_suite_passes():
    report = run_suite(SuiteConfig(seed=0))
    assert report.ok, "\n".join(report.lines(verbose=True))
    assert len(report.items) == len(ITEMS) == 11


def test_failed_items_show_details():
    report = run_suite(SuiteConfig(seed=1))
    lines = report.lines()
    assert lines[-1] == "11/11 passed"
    assert all(not line.startswith("    ") for line in lines)
    assert any(line.startswith("    ") for line in report.lines(verbose=True))


def test_crashing_item_is_reported():
    def broken(cfg):
        raise RuntimeError("boom")

    ITEMS.append(broken)
    try:
        report = run_suite()
    finally:
        ITEMS.pop()
    assert not report.ok
    assert report.items[-1].name == "broken" and "boom" in report.items[-1].lines[0]
