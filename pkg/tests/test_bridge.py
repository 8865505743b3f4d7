import random

import pytest

from mockingbird.bridge import (
    fire_redex,
    fr_map,
    progressing_redexes,
    right_comb,
    verify_fr_isomorphism,
)
from mockingbird.forests import (
    compact_key,
    forest_upset,
    is_white_only,
    ladder,
    render_forest,
)
from mockingbird.oracle import all_combinators
from mockingbird.posets import ExplorationError
from mockingbird.rewrite import load_system, step_successors
from mockingbird.terms import TermError, parse_term

SYS_M = load_system("builtin:M")


def TM(text):
    return parse_term(text, {"M"})


class TestFrMap:
    def test_leaves(self):
        assert fr_map(TM("M")) == ()
        assert fr_map(parse_term("x1", frozenset())) == ()
        assert fr_map(TM("MM")) == ()

    def test_white_leaf(self):
        assert render_forest(fr_map(parse_term("Mx1", {"M"}))) == "w"
        assert render_forest(fr_map(TM("M(MM)"))) == "w"

    def test_nested(self):
        assert render_forest(fr_map(TM("M(M(MM))"))) == "w(w)"

    def test_variable_head_transparent(self):
        assert fr_map(parse_term("x1(M(MM))", {"M"})) == fr_map(TM("M(MM)"))

    def test_concatenation(self):
        assert render_forest(fr_map(TM("(M(MM))(M(MM))"))) == "w w"

    def test_foreign_combinator(self):
        with pytest.raises(TermError):
            fr_map(parse_term("K", {"K"}))

    def test_image_white_only_10k_random(self):
        from tests_util import random_m_term

        rng = random.Random(424242)
        for _ in range(10_000):
            t = random_m_term(rng, rng.randint(0, 7))
            assert is_white_only(fr_map(t))


class TestRightComb:
    def test_base(self):
        assert right_comb(0) == TM("M")

    def test_two(self):
        assert right_comb(2) == TM("M(MM)")

    def test_four(self):
        assert right_comb(4) == TM("M(M(M(MM)))")

    def test_fr_of_comb_is_ladder(self):
        for d in range(8):
            assert fr_map(right_comb(d)) == ladder(max(d - 1, 0))


class TestProgressingRedexes:
    def test_loop_only_redex_excluded(self):
        assert progressing_redexes(TM("MM")) == []

    def test_order_matches_forest_whites(self):
        # firing any progressing redex is a non-loop step, and they are all
        # of them
        from tests_util import random_m_term

        rng = random.Random(31)
        for _ in range(500):
            t = random_m_term(rng, rng.randint(0, 6))
            fired = {fire_redex(t, p) for p in progressing_redexes(t)}
            assert fired == step_successors(SYS_M, t) - {t}
            assert len(fired) == len(progressing_redexes(t))

    def test_redex_count_equals_white_count(self):
        from mockingbird.forests import white_count
        from tests_util import random_m_term

        rng = random.Random(32)
        for _ in range(500):
            t = random_m_term(rng, rng.randint(0, 6))
            assert len(progressing_redexes(t)) == white_count(fr_map(t))


class TestIsomorphism:
    def test_fig_case(self):
        rep = verify_fr_isomorphism(TM("M(M(MM))"))
        assert rep.isomorphic
        assert rep.term_count == rep.forest_count == 6

    def test_singleton(self):
        rep = verify_fr_isomorphism(TM("M"))
        assert rep.isomorphic
        assert rep.term_count == rep.forest_count == 1

    def test_r5_has_1806_elements(self):
        rep = verify_fr_isomorphism(right_comb(5))
        assert rep.isomorphic
        assert rep.term_count == rep.forest_count == 1806

    def test_exhaustive_degree_le_5(self):
        for degree in range(6):
            for t in all_combinators(degree):
                rep = verify_fr_isomorphism(t)
                assert rep.isomorphic, rep.verdict
                assert rep.cover_preserving

    def test_counts_match_explicit_posets_degree_le_4(self):
        from mockingbird.rewrite import explore_component

        for degree in range(5):
            for t in all_combinators(degree):
                rep = verify_fr_isomorphism(t)
                g_t = explore_component(SYS_M, t, "up")
                g_f = forest_upset(fr_map(t))
                assert rep.term_count == len(g_t.nodes)
                assert rep.forest_count == len(g_f.nodes)

    def test_md_bridge_counts(self):
        from mockingbird.sequences import seq_by_recurrence

        sizes = seq_by_recurrence("sizes", 7).values
        for d in range(1, 6):
            rep = verify_fr_isomorphism(right_comb(d))
            assert rep.term_count == sizes[d]

    def test_budget_exhaustion(self):
        with pytest.raises(ExplorationError):
            verify_fr_isomorphism(right_comb(5), budget=100)
