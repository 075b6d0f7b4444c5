import pytest

from lpa.graph import graph_from_document
from lpa.sweep import corpus


def make(vertices, *edges):
    return graph_from_document({"vertices": list(vertices), "edges": [list(e) for e in edges]})


LOOP = make("v", ("v", "v", 1))
BREAKING = make("wh", ("w", "h", "inf"), ("w", "w", 1))
LINE = make("uv", ("u", "v", 1))
POINT = make("u")
PAIR_OF_POINTS = make("ab")
ROSE2 = make("v", ("v", "v", 2))
FORK = make(["u", "a", "b"], ("u", "a", 1), ("u", "b", 1))
LOOP_TAIL = make("vw", ("v", "v", 1), ("v", "w", 1))


@pytest.fixture(scope="session")
def sweep_corpus():
    """Every graph on at most 3 vertices with multiplicities 0, 1, 2, inf, up to isomorphism."""
    return corpus(3)
