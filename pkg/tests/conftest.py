import pathlib

import pytest

from kindb.kdb import load_database_file

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture
def budgets_db():
    return load_database_file(str(DATA / "budgets.json"))


@pytest.fixture
def warehouse_db():
    return load_database_file(str(DATA / "warehouse.json"))
