import random

from hyp43 import PatternKind, classify_pattern, errata
from hyp43.suites import PATTERN_GAPS, Case, builtin_suite, random_params


def test_builtin_suite_is_deterministic():
    assert builtin_suite(42) == builtin_suite(42)
    assert builtin_suite(42) != builtin_suite(43)
    assert len(builtin_suite(42, per_kind=2)) == 10


def test_case_json_round_trip():
    for case in builtin_suite(7, per_kind=1):
        assert Case.from_json(case.to_json()) == case


def test_random_params_have_requested_pattern():
    rng = random.Random(3)
    for kind, options in PATTERN_GAPS.items():
        for gaps in options:
            pat = classify_pattern(random_params(rng, kind, gaps).a)
            assert pat.kind is PatternKind(kind)
            assert pat.gaps == gaps
    assert classify_pattern(random_params(rng, "generic").a).kind is PatternKind.GENERIC


def test_errata_table():
    ids = {e["id"] for e in errata.errata_entries()}
    assert errata.selectable_ids() <= ids
    assert {errata.TRIPLE_TAIL_POWER, errata.TRIPLE_TAIL_HALF, errata.SPECTATOR_FAMILIES} <= errata.selectable_ids()
    assert "pair-log-tail" in errata.format_errata()
