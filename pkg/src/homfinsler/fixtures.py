"""Lie-algebra models shipped with the package.

``load_fixture(name)`` returns a :class:`LieModel`; the CLI accepts the same
names as ``--model builtin:NAME``.
"""

import json
from importlib import resources

from .liealg import LieModel, model_from_dict

__all__ = ["FIXTURES", "fixture_dict", "load_fixture", "fixture_phi"]

FIXTURES = (
    "abelian_r3",
    "heisenberg",
    "heisenberg_noncentral",
    "solvable2d",
    "solvable3d",
    "so3",
    "u2",
    "rotdil",
)


def fixture_dict(name: str) -> dict:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(FIXTURES)}")
    text = resources.files("homfinsler").joinpath("data", f"{name}.json").read_text()
    return json.loads(text)


def load_fixture(name: str) -> LieModel:
    return model_from_dict(fixture_dict(name))


def fixture_phi(name: str) -> dict | None:
    return fixture_dict(name).get("phi")
