from fractions import Fraction

import pytest

from joinery.core.corpus import CorpusEntry, bundled_corpus, cyclic_system
from joinery.core.factor import identity_factor
from joinery.core.partition import is_C_system
from joinery.core.system import FiniteSystem, system_period
from joinery.exceptions import ParameterError, PeriodCapError
from joinery.joinings.coupling import check_equivariance, product_coupling
from joinery.joinings.furstenberg import (
    big_system,
    cesaro_self_joining,
    furstenberg_self_joining,
    furstenberg_words,
    joint_words,
)


def test_words() -> None:
    assert joint_words(3) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert furstenberg_words(2) == (
        ((1, 0), (1, 0)),
        ((0, 1), (0, 1)),
        ((1, 0), (0, 1)),
    )


def test_rotation_pair_gives_the_product(z5_12: FiniteSystem) -> None:
    joining = furstenberg_self_joining(z5_12)

    assert joining.masses == product_coupling([z5_12, z5_12]).masses
    assert joining.equivariances == furstenberg_words(2)


def test_equal_maps_give_the_diagonal() -> None:
    system = cyclic_system(4, (1, 1))

    joining = furstenberg_self_joining(system)

    assert joining.masses == {(p, p): Fraction(1, 4) for p in range(4)}


@pytest.mark.parametrize('entry', list(bundled_corpus()), ids=lambda entry: entry.name)
def test_limit_matches_cesaro_at_two_periods(entry: CorpusEntry) -> None:
    system = entry.system
    joining = furstenberg_self_joining(system)

    assert joining.masses == cesaro_self_joining(system, 2 * system_period(system)).masses
    assert joining.total() == 1
    for slot in range(system.d):
        assert joining.marginal(slot) == system.weights
    for words in furstenberg_words(system.d):
        assert check_equivariance(joining, words).holds


def test_cesaro_needs_positive_length(z5_12: FiniteSystem) -> None:
    with pytest.raises(ParameterError):
        cesaro_self_joining(z5_12, 0)


def test_period_cap(z5_12: FiniteSystem) -> None:
    with pytest.raises(PeriodCapError):
        furstenberg_self_joining(z5_12, period_cap=4)


def test_big_system(z5_12: FiniteSystem) -> None:
    big = big_system(z5_12)

    assert big.system.n == 25  # noqa: PLR2004
    assert big.system.d == 2  # noqa: PLR2004
    assert big.first_coordinate.target == z5_12
    assert big.coordinate_partition(1).size == 5  # noqa: PLR2004
    assert big.first_coordinate.then(identity_factor(z5_12)) == big.first_coordinate
    assert is_C_system(big.system)
