import pytest

from mockingbird.oracle import all_combinators
from mockingbird.posets import poset_analysis
from mockingbird.rewrite import (
    SystemError_,
    explore_component,
    extremal_by_pattern,
    is_hierarchical,
    load_system,
    local_confluence_probe,
    step_predecessors,
    step_successors,
)
from mockingbird.terms import parse_term, render_term, term_metrics, var

SYS_M = load_system("builtin:M")
SYS_I = load_system("builtin:I")
SYS_K = load_system("builtin:K")
SYS_KS = load_system("builtin:KS")


def TM(text):
    return parse_term(text, {"M"})


class TestLoadSystem:
    def test_builtin_m(self):
        rule = SYS_M.rule_of("M")
        assert rule.order == 1
        assert rule.rhs == parse_term("x1x1", frozenset())

    def test_builtin_s(self):
        sys_s = load_system("builtin:S")
        assert sys_s.rule_of("S").rhs == parse_term("x1x3(x2x3)", frozenset())

    def test_builtin_ks_has_both(self):
        assert SYS_KS.alphabet == {"K", "S"}

    def test_index_exceeds_order(self):
        with pytest.raises(SystemError_):
            load_system("K 2 := x1 x3")

    def test_rhs_with_combinator_rejected(self):
        with pytest.raises(SystemError_):
            load_system("A 1 := x1 M")

    def test_duplicate_rule(self):
        with pytest.raises(SystemError_):
            load_system("A 1 := x1\nA 1 := x1 x1")

    def test_comments_and_blanks(self):
        sys_ = load_system("# a system\n\nM 1 := x1 x1  # duplicator\n")
        assert sys_.alphabet == {"M"}

    def test_empty_system(self):
        with pytest.raises(SystemError_):
            load_system("# nothing here")


class TestStepSuccessors:
    def test_fig_root_steps(self):
        succ = step_successors(SYS_M, TM("M(M(MM))"))
        expected = {TM("M(M(MM))"), TM("M(MM(MM))"), TM("M(MM)(M(MM))")}
        assert succ == expected

    def test_ks_inner_redex(self):
        t = parse_term("S(KKS)K(SS)", {"K", "S"})
        succ = step_successors(SYS_KS, t)
        assert parse_term("SKK(SS)", {"K", "S"}) in succ

    def test_no_redex_on_leaf(self):
        assert step_successors(SYS_M, TM("M")) == set()

    def test_self_loop_included(self):
        assert step_successors(SYS_M, TM("MM")) == {TM("MM")}

    def test_oversaturated_spine(self):
        # M M M: the inner redex M M fires, leaving the extra argument
        succ = step_successors(SYS_M, TM("MMM"))
        assert succ == {TM("(MM)M")} == {TM("MMM")}

    def test_variables_are_inert(self):
        t = parse_term("x1(Mx2)", frozenset({"M"}))
        succ = step_successors(SYS_M, t)
        assert succ == {parse_term("x1(x2x2)", frozenset({"M"}))}


class TestStepPredecessors:
    def test_square_root(self):
        preds = step_predecessors(SYS_M, TM("(MM)(MM)"))
        assert preds == {TM("M(MM)"), TM("(MM)(MM)")}

    def test_self_loop_source_only(self):
        assert step_predecessors(SYS_M, TM("MM")) == {TM("MM")}

    def test_leaf_has_none(self):
        assert step_predecessors(SYS_M, TM("M")) == set()

    def test_erasing_system_rejected(self):
        with pytest.raises(SystemError_):
            step_predecessors(SYS_K, parse_term("K", {"K"}))

    def test_inverse_consistency_degree_le_5(self):
        for degree in range(6):
            for t in all_combinators(degree):
                for s in step_predecessors(SYS_M, t):
                    assert t in step_successors(SYS_M, s)
                for u in step_successors(SYS_M, t):
                    assert t in step_predecessors(SYS_M, u)


class TestExplore:
    def test_fig_component_m(self):
        g = explore_component(SYS_M, TM("M(M(MM))"), "up")
        assert len(g.nodes) == 6
        assert len(g.nonloop_edges()) == 7
        assert len(g.self_loops()) == 6

    def test_fig_component_i(self):
        t = parse_term("II(III)", {"I"})
        g = explore_component(SYS_I, t, "up")
        assert len(g.nodes) == 7

    def test_r4_has_42_nodes(self):
        g = explore_component(SYS_M, TM("M(M(M(MM)))"), "up")
        assert len(g.nodes) == 42

    def test_budget_flags_incomplete(self):
        g = explore_component(SYS_M, TM("M(M(M(MM)))"), "up", budget=10)
        assert not g.is_complete
        assert len(g.nodes) == 10

    def test_class_direction_reaches_predecessors(self):
        g = explore_component(SYS_M, TM("(MM)(MM)"), "class")
        assert TM("M(MM)") in g.nodes

    def test_class_warns_for_non_hierarchical(self):
        # S is not hierarchical but keeps all variables, so its inverse
        # steps stay enumerable
        sys_s = load_system("builtin:S")
        t = parse_term("SSSS", {"S"})
        with pytest.warns(UserWarning):
            explore_component(sys_s, t, "class", budget=50)

    def test_invalid_direction(self):
        with pytest.raises(SystemError_):
            explore_component(SYS_M, TM("MM"), "down")

    def test_node_zero_is_start(self):
        g = explore_component(SYS_M, TM("M(MM)"), "up")
        assert g.nodes[0] == TM("M(MM)")

    def test_deterministic_node_order(self):
        g1 = explore_component(SYS_M, TM("M(M(M(MM)))"), "up")
        g2 = explore_component(SYS_M, TM("M(M(M(MM)))"), "up")
        assert g1.nodes == g2.nodes
        assert g1.step_edges == g2.step_edges


class TestHierarchical:
    def test_m_is_hierarchical(self):
        assert is_hierarchical(SYS_M) == {"M": True}

    def test_i_is_not_hierarchical(self):
        # rhs x1 puts x1 at depth 0, not at the required depth 1
        assert is_hierarchical(SYS_I) == {"I": False}

    def test_k_is_not(self):
        assert is_hierarchical(SYS_K) == {"K": False}

    def test_s_is_not(self):
        assert is_hierarchical(load_system("builtin:S")) == {"S": False}


class TestHeightPreservation:
    def test_all_m_terms_degree_le_8(self):
        for degree in range(9):
            for t in all_combinators(degree):
                h = term_metrics(t).height
                for u in step_successors(SYS_M, t):
                    assert term_metrics(u).height == h


class TestPosetShape:
    def test_acyclic_unique_min_max_degree_le_5(self):
        for degree in range(6):
            for t in all_combinators(degree):
                g = explore_component(SYS_M, t, "up")
                poset_analysis(g, check_lattice=False)
                assert g.is_acyclic
                assert g.minimal == {0}
                assert len(g.maximal) == 1

    def test_lattice_property_degree_le_5(self):
        for degree in range(6):
            for t in all_combinators(degree):
                g = explore_component(SYS_M, t, "up")
                poset_analysis(g)
                assert g.is_lattice, render_term(t)


class TestConfluence:
    def test_m_divergences_join(self):
        report = local_confluence_probe(SYS_M, TM("M(M(MM))"))
        assert report.pairs_checked > 0
        assert report.all_joinable

    def test_ks_divergences_join(self):
        t = parse_term("S(KKS)K(SS)", {"K", "S"})
        report = local_confluence_probe(SYS_KS, t)
        assert report.all_joinable

    def test_single_successor_vacuous(self):
        report = local_confluence_probe(SYS_M, TM("MM"))
        assert report.pairs_checked == 0
        assert report.all_joinable


class TestExtremal:
    def test_examples(self):
        assert extremal_by_pattern(TM("((MM)M)M")) == {
            "maximal": True, "minimal": True}
        assert extremal_by_pattern(TM("M(MM)")) == {
            "maximal": False, "minimal": True}
        assert extremal_by_pattern(TM("(MM)(MM)")) == {
            "maximal": True, "minimal": False}

    def test_variables_rejected(self):
        with pytest.raises(SystemError_):
            extremal_by_pattern(parse_term("Mx1", {"M"}))

    def test_foreign_combinator_rejected(self):
        with pytest.raises(SystemError_):
            extremal_by_pattern(parse_term("K", {"K"}))

    def test_agrees_with_graph_characterization_degree_le_8(self):
        for degree in range(9):
            for t in all_combinators(degree):
                flags = extremal_by_pattern(t)
                succ_max = step_successors(SYS_M, t) <= {t}
                pred_min = step_predecessors(SYS_M, t) <= {t}
                assert flags["maximal"] == succ_max, render_term(t)
                assert flags["minimal"] == pred_min, render_term(t)
