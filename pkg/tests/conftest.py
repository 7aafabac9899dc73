import pytest

from csiec.cr import load_idioms, load_personas
from csiec.grammar import load_grammar
from csiec.lexicon import load_lexicon
from csiec.resources import data_path
from csiec.worldmodel import load_net


@pytest.fixture(scope="session")
def grammar():
    return load_grammar(data_path("grammar.cfg"))


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon(data_path("lexicon.txt"))


@pytest.fixture(scope="session")
def net():
    return load_net(data_path("semantic_net.txt"))


@pytest.fixture(scope="session")
def idioms():
    return load_idioms(data_path("idioms.txt"))


@pytest.fixture(scope="session")
def personas():
    return load_personas(data_path("personas.txt"))


@pytest.fixture()
def store(tmp_path):
    from csiec.nldb import DialogStore

    return DialogStore(tmp_path / "dialog.log")


@pytest.fixture()
def deps(grammar, lexicon, net, idioms, store):
    from csiec.cr import CrDeps

    return CrDeps(grammar, lexicon, net, idioms, store)
