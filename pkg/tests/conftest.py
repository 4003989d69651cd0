import pytest

from weylinv import build_root_system

_SYSTEMS = {}


@pytest.fixture
def system():
    """Session-shared root systems so classifications are computed once."""
    def get(name):
        if name not in _SYSTEMS:
            _SYSTEMS[name] = build_root_system(name)
        return _SYSTEMS[name]
    return get
