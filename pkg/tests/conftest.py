import pathlib

import pytest

from insightd.tabular import parse_table

DATA_DIR = pathlib.Path(__file__).resolve().parent.parent / "data"

MINI_CSV = b"""x,y,color,shape
1.5,9.1,red,square
2.5,8.2,red,circle
3.5,7.9,blue,circle
4.5,6.4,red,square
5.5,6.1,blue,circle
6.5,4.8,red,square
7.5,4.2,blue,square
8.5,3.1,red,circle
9.5,2.6,blue,circle
10.5,1.9,red,square
11.5,1.2,blue,square
12.5,0.4,red,circle
"""


@pytest.fixture(scope="session")
def cars_path() -> pathlib.Path:
    return DATA_DIR / "cars.csv"


@pytest.fixture(scope="session")
def cars_bytes(cars_path) -> bytes:
    return cars_path.read_bytes()


@pytest.fixture(scope="session")
def cars(cars_bytes):
    return parse_table(cars_bytes, "csv", name="cars")


@pytest.fixture()
def mini_dataset():
    """Two numerical + two categorical fields: exactly 14 tasks."""
    return parse_table(MINI_CSV, "csv", name="mini")
