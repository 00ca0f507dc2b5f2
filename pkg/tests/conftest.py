import pathlib

import pytest

DATA = pathlib.Path(__file__).parent / "data"

# every prime power 2 <= q <= 64
DESK_QS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32,
           37, 41, 43, 47, 49, 53, 59, 61, 64]


@pytest.fixture
def data_dir():
    return DATA
