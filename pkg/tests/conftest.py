import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from nacoh.corpus import CORPUS_DIR, build_corpus, load_corpus  # noqa: E402
from nacoh.gamma import GammaGroup, trivial_gamma_group  # noqa: E402
from nacoh.groups import cyclic, direct_product, symmetric  # noqa: E402


def std_groups():
    return {
        "Z1": cyclic(1),
        "Z2": cyclic(2),
        "Z3": cyclic(3),
        "Z4": cyclic(4),
        "Z2xZ2": direct_product(cyclic(2), cyclic(2)),
        "S3": symmetric(3),
    }


def gamma_group(a: str, g: str, inversion: bool = False) -> GammaGroup:
    G = std_groups()
    if inversion:
        A = G[a]
        inv = tuple(A.inv(x) for x in range(A.order))
        return GammaGroup(G[g], A, [tuple(range(A.order)), inv], name=f"{a}_inv_{g}")
    return trivial_gamma_group(G[g], G[a], name=f"{a}_triv_{g}")


# The coefficient grid of the closure/action/lambda checks.
GRID = [(a, g, False) for a in ("Z2", "Z3", "Z4", "Z2xZ2", "S3") for g in ("Z2", "Z3")] + [("Z3", "Z2", True)]


@pytest.fixture(scope="session")
def corpus():
    return {ses.name: ses for ses in load_corpus()}


@pytest.fixture(scope="session")
def corpus_dir():
    return CORPUS_DIR


@pytest.fixture(scope="session")
def built_corpus():
    return build_corpus()
