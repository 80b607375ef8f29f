import pytest

from core.coeffs import CoeffTable


@pytest.fixture
def table():
    """A fresh coefficient table, so tests never share cached cells."""
    return CoeffTable()
