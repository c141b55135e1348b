import pytest

from biso import config


@pytest.fixture(autouse=True)
def restore_config():
    """main() writes command-line overrides into the shared settings."""
    saved = config.model_dump()
    yield
    for key, value in saved.items():
        setattr(config, key, value)
