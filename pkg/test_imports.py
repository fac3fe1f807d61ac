"""
Import checks for every package of the calculator.
"""
import importlib

import pytest

MODULES = [
    'src',
    'src.config',
    'src.errors',
    'src.lattice',
    'src.manifolds',
    'src.kahler',
    'src.families',
    'src.torelli',
    'src.parsing',
    'src.reports',
    'cli',
]


@pytest.mark.parametrize('name', MODULES)
def test_module_imports(name):
    assert importlib.import_module(name) is not None


def test_public_names_resolve():
    for name in MODULES[:-1]:
        module = importlib.import_module(name)
        for public in getattr(module, '__all__', []):
            assert hasattr(module, public), f"{name}.{public}"


def test_version():
    import src
    assert src.__version__ == '1.0.0'
