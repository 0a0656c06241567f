"""Every fixture ships an expected-property record; verify each claim with
the brute-force oracle and the occurrence checkers."""

import pytest
from conftest import check_expected_record

from cspprune.ac import is_arc_consistent
from cspprune.fixtures import (
    FixtureError,
    fixture,
    list_fixtures,
    make_ij,
    random_instance,
)
from cspprune.oracle import count_solutions

ALL_NAMES = list_fixtures()


@pytest.mark.parametrize("name", ALL_NAMES)
def test_expected_record(name):
    check_expected_record(fixture(name))


class TestRegistry:
    def test_twenty_fixture_names(self):
        assert len(ALL_NAMES) == 20

    def test_name_normalization(self):
        assert fixture("iexists4").name == "I∃4"
        assert fixture("k4_colour").name == "K4_COLOUR"

    def test_unknown_name(self):
        with pytest.raises(FixtureError):
            fixture("nope")

    def test_parameters_forwarded(self):
        assert fixture("STAR", (6,)).instance.nvars == 6
        assert fixture("ISAT3", (5,)).instance.domain(2) == tuple(range(6))

    def test_parameter_validation(self):
        for name, params in (("I4k", (3,)), ("STAR", (1,)), ("ISAT3", (0,))):
            with pytest.raises(FixtureError):
                fixture(name, params)


class TestAdjoinedVariable:
    def test_count_identity_on_several_inner_instances(self):
        for seed in range(5):
            inner = random_instance(3, 3, 0.7, 0.4, seed)
            outer = make_ij(inner)
            assert count_solutions(outer) == 1 + count_solutions(inner)

    def test_outer_instance_is_arc_consistent(self):
        inner = random_instance(4, 2, 0.9, 0.5, 11)
        assert is_arc_consistent(make_ij(inner))


class TestRandomInstance:
    def test_reproducible(self):
        a = random_instance(6, 4, 0.5, 0.3, 99)
        b = random_instance(6, 4, 0.5, 0.3, 99)
        assert a == b

    def test_output_is_arc_consistent(self):
        for seed in range(10):
            inst = random_instance(5, 3, 0.8, 0.5, seed)
            assert is_arc_consistent(inst)
            assert not inst.has_wipeout()

    def test_rejects_bad_parameters(self):
        with pytest.raises(FixtureError):
            random_instance(0, 3, 0.5, 0.5, 1)
        with pytest.raises(FixtureError):
            random_instance(3, 3, 1.5, 0.5, 1)

    def test_hopeless_parameters_raise_after_retries(self):
        with pytest.raises(FixtureError):
            random_instance(3, 2, 1.0, 1.0, 7)
