import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from knotproj.curves import SignedGaussCode, from_signed_gauss_code

TREFOIL_TEXT = "a+ b- c+ a+ b- c+"
WEAVE_TEXT = "a- b+ c+ d- e- a- f+ c+ g- e- h+ f+ b+ g- d- h+"


def curve_of(text: str):
    return from_signed_gauss_code(SignedGaussCode.from_text(text))


@pytest.fixture(scope="session")
def trefoil():
    return curve_of(TREFOIL_TEXT)


@pytest.fixture(scope="session")
def kink():
    return curve_of("a+ a+")


@pytest.fixture(scope="session")
def weave():
    """The smallest lune-free projection beyond the circle: the closure of
    the alternating flat 3-braid with eight crossings."""
    return curve_of(WEAVE_TEXT)
