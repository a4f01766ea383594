import pytest

from guibridge.demo import build_demo_graph, load_config_doc, load_demo_config
from guibridge.session import GuiSession


@pytest.fixture()
def banking_doc():
    return load_config_doc("banking")


@pytest.fixture()
def banking_config():
    return load_demo_config("banking")


@pytest.fixture()
def banking_session(banking_config):
    return GuiSession(banking_config)


@pytest.fixture()
def incidents_config():
    return load_demo_config("incidents")


@pytest.fixture()
def demo_session():
    return GuiSession(build_demo_graph())
