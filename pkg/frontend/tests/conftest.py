import pathlib

import pytest

GOLDEN = pathlib.Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def golden() -> pathlib.Path:
    return GOLDEN


@pytest.fixture(scope="session")
def spectrum_paths(golden) -> list[str]:
    return [str(golden / f"spectrum_{tag}.json") for tag in "ABC"]
