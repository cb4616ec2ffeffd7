import pytest

from socialbot import kbgen
from socialbot.kb import load_kb_dir
from socialbot.model import PropertyCatalog


@pytest.fixture(scope="session")
def small_kb_dir(tmp_path_factory):
    directory = tmp_path_factory.mktemp("kb-small")
    kbgen.generate_small_kb(directory)
    return directory


@pytest.fixture(scope="session")
def small_kb(small_kb_dir):
    """Curated-core KB. Session-scoped: treat as read-only."""
    return load_kb_dir(small_kb_dir)


@pytest.fixture(scope="session")
def full_kb_dir(tmp_path_factory):
    directory = tmp_path_factory.mktemp("kb-full")
    kbgen.generate_kb(directory)
    return directory


@pytest.fixture(scope="session")
def full_kb(full_kb_dir):
    return load_kb_dir(full_kb_dir)


@pytest.fixture(scope="session")
def catalog():
    return PropertyCatalog.default()


@pytest.fixture()
def fresh_kb(tmp_path):
    """Private KB copy for tests that mutate the extra-rule store."""
    kbgen.generate_small_kb(tmp_path / "kb")
    return load_kb_dir(tmp_path / "kb")
