import pytest

from treechild import GenSpec, parse, random_tree_child


@pytest.fixture(scope="session")
def cherry():
    return parse("(x,y);")


@pytest.fixture(scope="session")
def triangle():
    """Level-1 triangle with the reticulation on y."""
    return parse("((x,(y)#H1),#H1);")


@pytest.fixture(scope="session")
def diamond():
    """Level-2 single-leaf network whose central reticulation edge is invalid."""
    return parse("((((x)#H2)#H1,#H2),#H1);")


@pytest.fixture(scope="session")
def remote_cherry_level2():
    """Level-2 network with a remote cherry on (x, y) in its only blob."""
    return parse("((((x,(y)#H1),(z)#H2),#H1),#H2);")


@pytest.fixture(scope="session")
def small_corpus():
    """Mixed-level corpus for structural property tests."""
    networks = []
    for seed in range(30):
        k = seed % 4
        l = 1 if k else 0
        if k and seed % 3 == 0:
            l = 2
        n_leaves = max(2, k * l + max(1, l) + 2 + seed % 4)
        networks.append(
            random_tree_child(
                GenSpec(n_leaves=n_leaves, target_level=k, n_level_k_blobs=l or None, seed=seed)
            )
        )
    return networks


@pytest.fixture(scope="session")
def level2plus_corpus():
    """Networks of level >= 2 for reconstruction-oriented tests."""
    networks = []
    for seed in range(18):
        k = 2 + seed % 3
        l = 1 + (seed % 2 if k == 2 else 0)
        n_leaves = k * l + max(1, l) + 2 + seed % 5
        networks.append(
            random_tree_child(
                GenSpec(n_leaves=n_leaves, target_level=k, n_level_k_blobs=l, seed=100 + seed)
            )
        )
    return networks


@pytest.fixture(scope="session")
def tiny_corpus():
    """Small instances within range of the exponential oracles."""
    networks = []
    for seed in range(12):
        k = 1 + seed % 2
        n_leaves = min(6, k + 2 + seed % 3)
        networks.append(
            random_tree_child(GenSpec(n_leaves=n_leaves, target_level=k, seed=500 + seed))
        )
    return networks
