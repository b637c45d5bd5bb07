"""Shared test fixtures."""

import os

import pytest
from click.testing import CliRunner

from bar_tor import tor_bialgebra
from corings import exterior_bialgebra
from presentations import parse_presentation, realize

# Ensure settings can be constructed without a real .env
os.environ.setdefault("CORINGLAB_MAX_DEGREE", "6")
os.environ.setdefault("CORINGLAB_BATTERY_SIZE", "5")


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def exterior_two():
    return exterior_bialgebra(2)


@pytest.fixture
def tor_plane():
    """Tor over Q[x,y] with room for every class."""
    return tor_bialgebra(realize(parse_presentation("Q[x,y]"), 4), 4, 4)
