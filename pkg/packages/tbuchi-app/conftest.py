from typing import List

import pytest

BENCH_MARK = "bench"


def pytest_addoption(parser: pytest.Parser) -> None:
    group = parser.getgroup("tbuchi")
    # Both workspace packages ship this conftest; register options only once when run from the repo root.
    if any("--bench" in opt.names() for opt in group.options):
        return
    group.addoption("--bench", action="store_true", default=False, help="run benchmark reproduction tests only")
    group.addoption("--bench-seeds", type=int, default=20, help="seeded runs per mode in benchmark tests")


def pytest_collection_modifyitems(config: pytest.Config, items: List[pytest.Item]) -> None:
    bench_only = config.getoption("--bench")
    skip_bench = pytest.mark.skip(reason="Need --bench option to run")
    skip_other = pytest.mark.skip(reason="Skipped since --bench passed")

    for item in items:
        is_bench = item.get_closest_marker(BENCH_MARK) is not None
        if is_bench and not bench_only:
            item.add_marker(skip_bench)
        elif not is_bench and bench_only:
            item.add_marker(skip_other)


@pytest.fixture
def bench_seeds(request: pytest.FixtureRequest) -> int:
    return int(request.config.getoption("--bench-seeds"))
