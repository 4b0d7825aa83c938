import functools

import pytest
from hypothesis import settings

from commalg import algebra as alg
from commalg.approximation import Ambient
from commalg.comma import CommaCategory, TriangularSplit, identity_functor

settings.register_profile("commalg", max_examples=40, deadline=None)
settings.load_profile("commalg")


@functools.lru_cache(maxsize=None)
def algebra(name: str, p: int = 2):
    return {
        "kA2": alg.kA2,
        "L3": alg.L3,
        "N2": alg.N2,
        "Lambda4": alg.cm_free_example,
        "k": alg.field_algebra,
    }[name](p)


@functools.lru_cache(maxsize=None)
def ambient(name: str, cap: int = 6):
    return Ambient(algebra(name), cap, name=name)


@functools.lru_cache(maxsize=None)
def morphism_category(name: str):
    """The comma category of the identity functor, i.e. the morphism category."""
    return CommaCategory(identity_functor(algebra(name)), name=f"id:{name}")


@functools.lru_cache(maxsize=None)
def morphism_ambient(name: str, cap: int = 4):
    return Ambient(morphism_category(name), cap, name=f"id:{name}")


@functools.lru_cache(maxsize=None)
def split(name: str, left: tuple):
    return TriangularSplit(algebra(name), list(left), name=f"{name}|{','.join(left)}")


@functools.lru_cache(maxsize=None)
def split_ambient(name: str, left: tuple, cap: int = 6):
    """The triangular algebra's indecomposables transported to its comma category."""
    sp = split(name, left)
    lam = ambient(name, cap)
    return Ambient(sp.comma, cap, members=[sp.module_to_triple(m) for m in lam.members], names=lam.names,
                   injectives=[sp.module_to_triple(i) for i in sp.lam.injectives()], name=sp.name)


@pytest.fixture
def L3():
    return algebra("L3")


@pytest.fixture
def kA2():
    return algebra("kA2")


@pytest.fixture
def N2():
    return algebra("N2")


@functools.lru_cache(maxsize=None)
def side_ambient(name: str, left: tuple, side: str, cap: int = 6):
    sp = split(name, left)
    alg_ = sp.R if side == "R" else sp.S
    return Ambient(alg_, cap, name=f"{sp.name}.{side}")


class Setup:
    """A comma category with its enumerated objects and the ambients of both sides."""

    def __init__(self, label, comma_ambient, r_ambient, s_ambient):
        self.label = label
        self.amb = comma_ambient
        self.comma = comma_ambient.category
        self.T = self.comma.functor
        self.r_amb, self.s_amb = r_ambient, s_ambient

    def __repr__(self):
        return self.label


@functools.lru_cache(maxsize=None)
def setup(label: str) -> Setup:
    if label.startswith("id:"):
        base = label[3:]
        return Setup(label, morphism_ambient(base), ambient(base), ambient(base))
    name, left = label.split("|")
    left = tuple(left.split(","))
    return Setup(label, split_ambient(name, left), side_ambient(name, left, "R"),
                 side_ambient(name, left, "S"))


SETUPS = ["L3|1", "id:kA2", "Lambda4|1", "id:N2"]
