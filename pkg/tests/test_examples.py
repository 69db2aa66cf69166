import pytest

from hgc.category import Arrow
from hgc.examples import (
    SHIPPED,
    build_named,
    double_coset_space,
    hecke_pair,
    named_example,
    s3_transposition,
    subgroupoid_quotient,
    swap_groupoid,
)
from hgc.groupoid import GroupTableError, cyclic_group, group_as_groupoid, symmetric_group
from hgc.gspace import (
    is_free,
    orbit_space,
    point_orbits,
    translation_space,
    validate_gspace,
    validate_measure,
)
from hgc.hypergroupoid import build_hypergroupoid, is_groupoid_like
from hgc.serialize import table_to_json

S3 = symmetric_group(3)


def test_s3_double_cosets():
    ex = double_coset_space(S3, s3_transposition())
    assert len(ex.space.points) == 3
    assert len(orbit_space(ex.space.space, ex.space.space)) == 2


def test_whole_group_gives_a_point():
    ex = double_coset_space(S3, S3.elements)
    # labels are the least member as a string, and "(12)" < "e"
    assert ex.space.points == ("(12)",)
    assert len(build_hypergroupoid(ex.space).orbits) == 1


def test_trivial_subgroup_is_free():
    ex = double_coset_space(S3, {"e"})
    assert is_free(ex.space.space)
    t = build_hypergroupoid(ex.space)
    assert is_groupoid_like(t)
    # [x, y] ↦ x⁻¹y recovers the group law
    to_elem = {o: S3.mul[S3.inverse[o[0]], o[1]] for o in t.orbits}
    for (a, b, c), v in t.constants.items():
        assert v == 1 and S3(to_elem[a], to_elem[b]) == to_elem[c]
    assert len(t.constants) == 36


def test_not_a_subgroup():
    with pytest.raises(GroupTableError) as err:
        double_coset_space(S3, {"e", "(123)"})
    assert err.value.witness


def test_hecke_equals_double_coset():
    for table, sub in [(S3, s3_transposition()), (cyclic_group(4), {"0", "2"})]:
        assert hecke_pair(table, sub) == double_coset_space(table, sub)


def test_hecke_relation():
    alpha = hecke_pair(S3, s3_transposition()).space
    one = Arrow.delta(alpha, alpha, ("(12)", "(12)"))
    T = Arrow.delta(alpha, alpha, ("(12)", "(123)"))
    assert T @ T == T + 2 * one


def test_z4_hecke_is_z2_group_algebra():
    ex = hecke_pair(cyclic_group(4), {"0", "2"})
    assert len(ex.space.points) == 2
    t = build_hypergroupoid(ex.space)
    e, s = t.orbits
    assert t.constants == {(e, e, e): 1, (e, s, s): 1, (s, e, s): 1, (s, s, e): 1}


def test_whole_group_hecke_is_one_dimensional():
    t = build_hypergroupoid(hecke_pair(cyclic_group(4), cyclic_group(4).elements).space)
    assert len(t.orbits) == 1


def test_swap_quotient_by_units():
    g = swap_groupoid()
    ex = subgroupoid_quotient(g, g.units)
    assert ex.space.space == translation_space(g)
    assert is_free(ex.space.space)
    assert is_groupoid_like(build_hypergroupoid(ex.space))


def test_s3_quotient_matches_double_coset():
    g = group_as_groupoid(S3)
    via_groupoid = subgroupoid_quotient(g, s3_transposition())
    via_cosets = double_coset_space(S3, s3_transposition())
    assert via_groupoid.space == via_cosets.space


def test_quotient_by_everything():
    g = swap_groupoid()
    ex = subgroupoid_quotient(g, g.arrows)
    assert len(ex.space.points) == len(g.units)
    assert {ex.space.space.anchor[p] for p in ex.space.points} == set(g.units)
    assert len(set(point_orbits(ex.space.space).values())) == 1


def test_quotient_rejects_non_wide():
    g = swap_groupoid()
    with pytest.raises(ValueError):
        subgroupoid_quotient(g, {"a", "1:a"})


@pytest.mark.parametrize("name", SHIPPED)
def test_shipped_examples_validate(name):
    ex = build_named(name)
    assert validate_gspace(ex.space.space).ok
    assert validate_measure(ex.space).ok


@pytest.mark.parametrize("name", SHIPPED)
def test_fixture_matches_recomputation(name):
    ex = named_example(name)
    assert ex.expected == table_to_json(build_hypergroupoid(ex.space))


def test_unknown_example():
    with pytest.raises(KeyError):
        build_named("nope")
