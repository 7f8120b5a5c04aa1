import pytest

_CRITERIA: dict[tuple[int, str], str] = {}


@pytest.fixture
def criterion(request):
    """Record a one-line verdict for an acceptance criterion.

    Usage: ``with criterion(3, "single-vertex tables") as note: ...``; the body may
    append detail to ``note``.  Exceptions mark the criterion FAIL and propagate.
    """

    class _Recorder:
        def __init__(self, number, title, variant=""):
            self.number, self.title, self.variant, self.detail = number, title, variant, []

        def __enter__(self):
            return self.detail

        def __exit__(self, exc_type, exc, tb):
            status = "PASS" if exc_type is None else "FAIL"
            label = f"{self.number}{self.variant}"
            extra = "; ".join(self.detail)
            if exc_type is not None and not self.detail:
                extra = f"{exc_type.__name__}: {exc}".splitlines()[0][:160]
            _CRITERIA[(self.number, self.variant)] = f"criterion {label:>3} {status}  {self.title}" + (
                f"  ({extra})" if extra else "")
            return False

    return _Recorder


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        terminalreporter.write_line(_CRITERIA[k])
