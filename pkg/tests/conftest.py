import pytest

from hochdual.specio import corpus


@pytest.fixture(scope="session")
def algebras():
    return corpus()
