import numpy as np
import pytest
from hypothesis import given, settings

from conftest import economies
from fairgame import (
    Economy,
    ProfileError,
    active_set,
    is_sub_profile,
    is_unproductive,
    marginal_contribution,
    permute_surplus,
    sub_profiles,
    sub_profiles_excluding,
)


def test_defaults(table1):
    assert table1.n == 2
    assert table1.shape == (2, 3)
    assert table1.reference == (0, 0)
    assert table1.agents == ("1", "2")
    assert table1.f((1, 2)) == 4.0


def test_surplus_is_read_only(table1):
    with pytest.raises(ValueError):
        table1.surplus[0, 0] = 1.0


@pytest.mark.parametrize(
    "kwargs, match",
    [
        (dict(actions=[["a"], ["b", "b"]], surplus=np.zeros((1, 2))), "duplicate"),
        (dict(actions=[["a", "b"]], surplus=np.zeros(3)), "shape"),
        (dict(actions=[["a", "b"]], surplus=[0, np.nan]), "finite"),
        (dict(actions=[["a", "b"]], surplus=[0, 1], reference=(2,)), "reference"),
        (dict(actions=[], surplus=np.zeros(())), "at least one agent"),
        (dict(actions=[["a"], ["b"]], surplus=np.zeros((1, 1)), agents=("x", "x")), "unique"),
    ],
)
def test_validation(kwargs, match):
    with pytest.raises(ValueError, match=match):
        Economy(**kwargs)


def test_from_function_with_label_reference():
    e = Economy.from_function([["lo", "hi"], ["lo", "hi"]], lambda l: l.count("hi"), reference=("hi", "lo"))
    assert e.reference == (1, 0)
    assert e.f((1, 1)) == 2


@pytest.mark.parametrize("bad", [(0,), (0, 3), (2, 0), ("x", 0)])
def test_check_rejects(table1, bad):
    with pytest.raises(ProfileError):
        table1.check(bad)


def test_index_roundtrip(table4):
    for x in table4.profiles():
        assert table4.profile(table4.index(x)) == x
    assert table4.index((1, 0)) == 4


def test_parse_and_labels(table1):
    assert table1.parse(["a2", "b3"]) == (1, 2)
    assert table1.parse({"1": "a2", "2": "b1"}) == (1, 0)
    assert table1.labels((1, 2)) == ("a2", "b3")


def test_active_set(table1):
    assert active_set(table1, (0, 0)).size == 0
    a = active_set(table1, (1, 2))
    assert a.members == {0, 1} and a.size == 2


def test_sub_profiles_order(table1):
    subs = sub_profiles(table1, (1, 2))
    assert subs[0] == (0, 0) and subs[-1] == (1, 2)
    assert sorted(subs) == [(0, 0), (0, 2), (1, 0), (1, 2)]
    assert sub_profiles_excluding(table1, 0, (1, 2)) == [(0, 0), (0, 2)]


@given(economies())
@settings(max_examples=60, deadline=None)
def test_sub_profile_lattice_size(e):
    for x in e.profiles():
        subs = sub_profiles(e, x)
        assert len(subs) == 2 ** active_set(e, x).size
        assert len(set(subs)) == len(subs)
        assert all(is_sub_profile(e, y, x) for y in subs)


def test_marginal_contribution(table1):
    assert marginal_contribution(table1, 0, (0, 1), (1, 1)) == -1.0
    assert marginal_contribution(table1, 1, (0, 0), (1, 2)) == 5.0
    with pytest.raises(ProfileError):
        marginal_contribution(table1, 0, (1, 0), (1, 1))
    with pytest.raises(ProfileError):
        marginal_contribution(table1, 0, (0, 2), (1, 1))


def test_unproductive():
    e = Economy([["a", "b"], ["c", "d"]], [[0, 0], [3, 3]])
    assert is_unproductive(e, 1)
    assert not is_unproductive(e, 0)


def test_permute_surplus_swap(table1):
    swapped = permute_surplus(table1, (1, 1), [1, 0])
    assert swapped[(1, 0)] == 5.0
    assert swapped[(0, 1)] == 2.0
    assert swapped[(1, 1)] == 4.0
    assert permute_surplus(table1, (1, 1), [0, 1])[(1, 0)] == 2.0


def test_permute_surplus_rejects_inactive_move(table1):
    with pytest.raises(ProfileError):
        permute_surplus(table1, (1, 0), [1, 0])
    with pytest.raises(ProfileError):
        permute_surplus(table1, (1, 1), [0, 0])
