"""The fixed corpus of short exact sequences shipped as JSON under ``data/corpus``.

The files are generated by :func:`write_corpus` from the builders below and
checked against them by the test suite.
"""

from __future__ import annotations

from pathlib import Path

from .exactness import ShortExactSequence
from .gamma import GammaGroup, trivial_gamma_group
from .groups import FiniteGroup, GroupHom, cyclic, direct_product, symmetric
from .io import Loader, dumps, gamma_group_doc, group_doc, ses_doc

CORPUS_DIR = Path(__file__).parent / "data" / "corpus"


def base_groups() -> dict[str, FiniteGroup]:
    V = direct_product(cyclic(2), cyclic(2))
    return {"Z2": cyclic(2), "Z3": cyclic(3), "Z4": cyclic(4), "S3": symmetric(3), V.name: V}


def _trivial(gamma, G, name):
    return trivial_gamma_group(gamma, G, name=name)


def z4_extension(gamma: FiniteGroup) -> ShortExactSequence:
    """Z2 -> Z4 -> Z2 with i(1) = 2 and j = reduction mod 2."""
    g = base_groups()
    tag = gamma.name
    A = _trivial(gamma, g["Z2"], f"Z2_triv_{tag}")
    B = _trivial(gamma, g["Z4"], f"Z4_triv_{tag}")
    C = _trivial(gamma, g["Z2"], f"Z2_triv_{tag}")
    i = GroupHom(A.group, B.group, [0, 2])
    j = GroupHom(B.group, C.group, [0, 1, 0, 1])
    return ShortExactSequence(A, B, C, i, j, name=f"Z2-Z4-Z2_triv_{tag}")


def s3_extension(gamma: FiniteGroup) -> ShortExactSequence:
    """Z3 -> S3 -> Z2, onto the 3-cycles (3, 4), with j the sign."""
    g = base_groups()
    tag = gamma.name
    A = _trivial(gamma, g["Z3"], f"Z3_triv_{tag}")
    B = _trivial(gamma, g["S3"], f"S3_triv_{tag}")
    C = _trivial(gamma, g["Z2"], f"Z2_triv_{tag}")
    i = GroupHom(A.group, B.group, [0, 3, 4])
    j = GroupHom(B.group, C.group, [0, 1, 1, 0, 0, 1])
    return ShortExactSequence(A, B, C, i, j, name=f"Z3-S3-Z2_triv_{tag}")


def klein_extension(gamma: FiniteGroup) -> ShortExactSequence:
    """Z2 -> Z2xZ2 -> Z2, split, onto the second factor."""
    g = base_groups()
    tag = gamma.name
    A = _trivial(gamma, g["Z2"], f"Z2_triv_{tag}")
    B = _trivial(gamma, g["Z2xZ2"], f"Z2xZ2_triv_{tag}")
    C = _trivial(gamma, g["Z2"], f"Z2_triv_{tag}")
    i = GroupHom(A.group, B.group, [0, 1])
    j = GroupHom(B.group, C.group, [0, 0, 1, 1])
    return ShortExactSequence(A, B, C, i, j, name=f"Z2-Z2xZ2-Z2_triv_{tag}")


def s3_twisted_extension() -> ShortExactSequence:
    """Z3 -> S3 -> Z2 with Gamma = Z2 acting on S3 by conjugation with the
    transposition 1 = (0 2 1), hence by inversion on Z3 and trivially on Z2."""
    g = base_groups()
    gamma = g["Z2"]
    S3 = g["S3"]
    t = 1
    conj = tuple(S3.conj(t, x) for x in range(6))
    ident6 = tuple(range(6))
    A = GammaGroup(gamma, g["Z3"], [(0, 1, 2), (0, 2, 1)], name="Z3_inv_Z2")
    B = GammaGroup(gamma, S3, [ident6, conj], name="S3_conj_Z2")
    C = _trivial(gamma, g["Z2"], "Z2_triv_Z2")
    i = GroupHom(A.group, B.group, [0, 3, 4])
    j = GroupHom(B.group, C.group, [0, 1, 1, 0, 0, 1])
    return ShortExactSequence(A, B, C, i, j, name="Z3-S3-Z2_conj_Z2")


def build_corpus() -> list[ShortExactSequence]:
    g = base_groups()
    out = []
    for gamma in (g["Z2"], g["Z3"]):
        out += [z4_extension(gamma), s3_extension(gamma), klein_extension(gamma)]
    out.append(s3_twisted_extension())
    return out


def write_corpus(directory=CORPUS_DIR) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    groups_path = directory / "groups.json"
    groups_path.write_text(dumps({"definitions": [group_doc(G) for G in base_groups().values()]}))
    paths.append(groups_path)
    for ses in build_corpus():
        defs = []
        seen = set()
        for X in (ses.A, ses.B, ses.C):
            if X.name not in seen:
                seen.add(X.name)
                defs.append(gamma_group_doc(X))
        doc = {"definitions": defs, **ses_doc(ses)}
        p = directory / f"{ses.name}.json"
        p.write_text(dumps(doc))
        paths.append(p)
    return paths


def corpus_files(directory=CORPUS_DIR) -> list[Path]:
    return sorted(p for p in Path(directory).glob("*.json") if p.name != "groups.json")


def load_corpus(directory=CORPUS_DIR) -> list[ShortExactSequence]:
    """Corpus entries in file-name order."""
    return [Loader([directory]).load(p) for p in corpus_files(directory)]


if __name__ == "__main__":
    for p in write_corpus():
        print(p)
