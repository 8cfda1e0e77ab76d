import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'scripts'))

import registro  # noqa: E402


@pytest.fixture(autouse=True)
def log_silencioso():
    registro.definir_silencioso(True)
    registro.limpar_historico()
    yield
    registro.definir_silencioso(False)
