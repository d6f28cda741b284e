import itertools
import random

import pytest

from massfusion import Bba, Frame, MassMatrix, Model, SHAFER


def assert_bba(result, expected, tol=5e-5):
    """Compare a combined assignment against {expression: mass} within tol."""
    model = result.model
    seen = set()
    for key, want in expected.items():
        elem = model.frame.theta0() if key == "θ0" else (
            model.frame.empty_element() if key == "∅" else model.canonical(key))
        got = result[elem]
        assert got == pytest.approx(want, abs=tol), f"{key}: {got} != {want}"
        seen.add(elem)
    for elem, mass in result.items():
        if elem not in seen:
            assert mass == pytest.approx(0.0, abs=tol), f"unexpected mass on {elem}: {mass}"


def subsets(labels):
    out = []
    for r in range(1, len(labels) + 1):
        out.extend(itertools.combinations(labels, r))
    return out


def random_shafer_case(rng: random.Random, max_n=4, max_s=3, min_s=2, exact=True):
    """A random frame, Shafer model and list of valid random sources.

    With ``exact`` the masses are rationals summing to one exactly;
    otherwise they are normalized floats (valid within float error).
    """
    from fractions import Fraction

    n = rng.randint(2, max_n)
    labels = [chr(ord("A") + i) for i in range(n)]
    frame = Frame(labels)
    model = Model(frame, SHAFER)
    s = rng.randint(min_s, max_s)
    sources = []
    for _ in range(s):
        focals = rng.sample(subsets(labels), rng.randint(1, min(4, len(subsets(labels)))))
        weights = [rng.randint(1, 10 ** 6) for _ in focals]
        total = sum(weights)
        if exact:
            table = {"|".join(f): Fraction(w, total) for f, w in zip(focals, weights)}
        else:
            table = {"|".join(f): w / total for f, w in zip(focals, weights)}
        sources.append(Bba(model, table))
    return model, sources


@pytest.fixture
def rng():
    return random.Random(0x5EED)


@pytest.fixture
def frame_ab():
    return Frame(["A", "B"])


@pytest.fixture
def shafer_ab(frame_ab):
    return Model(frame_ab, SHAFER)


@pytest.fixture
def frame_abc():
    return Frame(["A", "B", "C"])


@pytest.fixture
def shafer_abc(frame_abc):
    return Model(frame_abc, SHAFER)


def matrix(model, *tables):
    return MassMatrix([Bba(model, t) for t in tables])
