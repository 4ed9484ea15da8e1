import pytest

from grouplab import theoremlab
from grouplab.cli import build, load_catalog


@pytest.fixture(scope="session")
def catalog_entries():
    return load_catalog("default")


@pytest.fixture(scope="session")
def groups(catalog_entries):
    """Label -> FiniteGroup for the default catalog, built once per session."""
    return {e["label"]: build(e["expr"]) for e in catalog_entries}


@pytest.fixture(scope="session")
def catalog(catalog_entries, groups):
    return [(e["label"], groups[e["label"]]) for e in catalog_entries]


@pytest.fixture(scope="session")
def full_reports(catalog):
    """Every statement evaluated on every catalog group (shared; ~1 min)."""
    return theoremlab.run_suite(catalog)
