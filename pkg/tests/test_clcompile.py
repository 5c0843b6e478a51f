import itertools

import pytest

from arckbench.arck import Player
from arckbench.cl import (
    CLColour,
    CLInstance,
    CLOutcome,
    CLVariant,
    VertexKind,
    classify_vertex,
    solve_cl,
    validate_instance,
)
from arckbench.clcompile import (
    compile_poscnf_to_b2cl,
    count_blue_circuit_moves,
    to_builder_blocker,
    to_misere_play,
    to_normal_play,
    variant_budget_report,
    vertex_pattern,
)
from arckbench.errors import NotACompiledInstance
from arckbench.poscnf import PosCNFFormula, TFPlayer, new_game, parse_formula, solve_poscnf

X = parse_formula("p poscnf 1 1\n1 0\n")
X_OR_Y = parse_formula("p poscnf 2 1\n1 2 0\n")
EXAMPLE = parse_formula("p poscnf 4 3\n1 2 3 0\n1 4 0\n2 4 0\n")


def micro_formulas():
    """Every formula with n <= 2 variables and m <= 2 ordered clauses."""
    out = [PosCNFFormula(1, ((1,),)), PosCNFFormula(1, ((1,), (1,)))]
    subsets = [(1,), (2,), (1, 2)]
    for m in range(1, 3):
        for combo in itertools.product(subsets, repeat=m):
            out.append(PosCNFFormula(2, tuple(combo)))
    return out


class TestStandardConstruction:
    def test_x_shape(self):
        inst, trace, params = compile_poscnf_to_b2cl(X)
        variables = [
            v for v in inst.vertices()
            if classify_vertex(inst, v) == VertexKind.VARIABLE
        ]
        assert len(variables) == 1
        # no or-tree for a size-1 clause, no and-spine for one clause
        assert not any(
            classify_vertex(inst, v) in (VertexKind.OR, VertexKind.AND)
            for v in inst.vertices()
        )
        assert len(trace.goal_edges) == 1
        assert len(trace.red_goal_edges) == 3
        assert len(trace.red_components) == params.k

    def test_example_formula_shape(self):
        inst, trace, params = compile_poscnf_to_b2cl(EXAMPLE)
        variables = [
            v for v in inst.vertices()
            if classify_vertex(inst, v) == VertexKind.VARIABLE
        ]
        assert len(variables) == 4
        goals = [e for e in inst.edges if e.goal_for == CLColour.BLUE]
        assert len(goals) == 1

    def test_every_vertex_classified_or_documented(self):
        for formula in (X, X_OR_Y, EXAMPLE):
            inst, trace, _ = compile_poscnf_to_b2cl(formula)
            for v in inst.vertices():
                assert vertex_pattern(inst, trace, v)

    def test_validates_cleanly(self):
        for formula in (X, X_OR_Y, EXAMPLE):
            inst, _, _ = compile_poscnf_to_b2cl(formula)
            report = validate_instance(inst)
            assert report.ok, report

    def test_trace_buckets_partition_edges(self):
        for formula in (X, X_OR_Y, EXAMPLE):
            inst, trace, _ = compile_poscnf_to_b2cl(formula)
            traced = sorted(
                eid for bucket in trace.buckets().values() for eid in bucket
            )
            assert traced == sorted(e.id for e in inst.edges)

    def test_deterministic(self):
        first = compile_poscnf_to_b2cl(EXAMPLE)
        second = compile_poscnf_to_b2cl(EXAMPLE)
        assert first[0] == second[0]


class TestBlueCircuitCount:
    def test_x_has_empty_circuitry(self):
        inst, trace, params = compile_poscnf_to_b2cl(X)
        assert count_blue_circuit_moves(inst, trace) == 0
        assert params.blue_circuit_moves == 0

    def test_count_at_most_k(self):
        for formula in micro_formulas():
            inst, trace, params = compile_poscnf_to_b2cl(formula)
            assert count_blue_circuit_moves(inst, trace) <= params.k

    def test_invariant_under_renaming(self):
        f1 = parse_formula("p poscnf 2 2\n1 2 0\n1 0\n")
        f2 = parse_formula("p poscnf 2 2\n2 1 0\n2 0\n")
        _, t1, p1 = compile_poscnf_to_b2cl(f1)
        _, t2, p2 = compile_poscnf_to_b2cl(f2)
        assert p1.blue_circuit_moves == p2.blue_circuit_moves


class TestBuilderBlocker:
    def test_no_red_goal(self):
        inst, trace, params = compile_poscnf_to_b2cl(X)
        bb, bb_trace, _ = to_builder_blocker(inst, trace, params)
        assert not any(e.goal_for == CLColour.RED for e in bb.edges)
        assert bb.variant == CLVariant.BUILDER_BLOCKER
        assert validate_instance(bb).ok

    def test_components_doubled(self):
        inst, trace, params = compile_poscnf_to_b2cl(X_OR_Y)
        bb, bb_trace, _ = to_builder_blocker(inst, trace, params)
        assert len(bb_trace.red_components) == 2 * params.k

    def test_other_buckets_unchanged(self):
        inst, trace, params = compile_poscnf_to_b2cl(X_OR_Y)
        bb, bb_trace, _ = to_builder_blocker(inst, trace, params)
        def edge_set(instance, bucket):
            by_id = {e.id: e for e in instance.edges}
            return sorted(
                (by_id[eid].tail, by_id[eid].head, by_id[eid].colour, by_id[eid].weight)
                for eid in bucket
            )
        assert edge_set(inst, trace.variable_edges) == edge_set(bb, bb_trace.variable_edges)
        assert edge_set(inst, trace.circuit_edges) == edge_set(bb, bb_trace.circuit_edges)
        assert edge_set(inst, trace.goal_edges) == edge_set(bb, bb_trace.goal_edges)

    def test_requires_trace(self):
        inst, trace, params = compile_poscnf_to_b2cl(X)
        with pytest.raises(NotACompiledInstance):
            to_builder_blocker(inst, None, params)


class TestNormalPlay:
    def test_chain_gated_and_sized(self):
        inst, trace, params = compile_poscnf_to_b2cl(X)
        np_inst, np_trace, _ = to_normal_play(*to_builder_blocker(inst, trace, params))
        report = variant_budget_report(np_inst, np_trace, params)
        assert report["chain_blue_flips_before_activation"] == 0
        assert report["chain_blue_flips_after_activation"] == 2 * params.k

    def test_no_goals_remain(self):
        inst, trace, params = compile_poscnf_to_b2cl(X)
        np_inst, _, _ = to_normal_play(*to_builder_blocker(inst, trace, params))
        assert not any(e.goal_for for e in np_inst.edges)
        assert validate_instance(np_inst).ok

    def test_chain_vertices_classify_as_or(self):
        inst, trace, params = compile_poscnf_to_b2cl(X)
        np_inst, np_trace, _ = to_normal_play(*to_builder_blocker(inst, trace, params))
        ors = [
            v for v, role in np_trace.vertex_role.items()
            if role == "chain_or"
        ]
        assert ors
        for v in ors:
            assert classify_vertex(np_inst, v) == VertexKind.OR


class TestMiserePlay:
    def test_tail_gated_and_sized(self):
        inst, trace, params = compile_poscnf_to_b2cl(X)
        mp_inst, mp_trace, _ = to_misere_play(*to_builder_blocker(inst, trace, params))
        report = variant_budget_report(mp_inst, mp_trace, params)
        assert report["chain_red_flips_before_activation"] == 0
        assert report["chain_red_flips_after_activation"] == 2 * params.k

    def test_new_basis_vertices_present(self):
        inst, trace, params = compile_poscnf_to_b2cl(X)
        mp_inst, _, _ = to_misere_play(*to_builder_blocker(inst, trace, params))
        kinds = {classify_vertex(mp_inst, v) for v in mp_inst.vertices()}
        assert VertexKind.BLUE_TO_RED in kinds
        assert VertexKind.RED_OR in kinds

    def test_budget_identity_3k_vs_2k(self):
        inst, trace, params = compile_poscnf_to_b2cl(X)
        mp_inst, mp_trace, _ = to_misere_play(*to_builder_blocker(inst, trace, params))
        report = variant_budget_report(mp_inst, mp_trace, params)
        assert report["red_total_when_activated"] == 3 * params.k
        assert report["blue_free_total"] == 2 * params.k
        assert report["red_total_when_activated"] > report["blue_free_total"]

    def test_transform_locality(self):
        inst, trace, params = compile_poscnf_to_b2cl(X_OR_Y)
        bb = to_builder_blocker(inst, trace, params)
        np_inst, np_trace, _ = to_normal_play(*bb)
        mp_inst, mp_trace, _ = to_misere_play(*bb)

        def edge_set(instance, bucket):
            by_id = {e.id: e for e in instance.edges}
            return sorted(
                (by_id[eid].tail, by_id[eid].head, by_id[eid].colour, by_id[eid].weight)
                for eid in bucket
            )

        assert edge_set(np_inst, np_trace.variable_edges) == edge_set(inst, trace.variable_edges)
        assert edge_set(mp_inst, mp_trace.variable_edges) == edge_set(inst, trace.variable_edges)
        assert edge_set(np_inst, np_trace.circuit_edges) == edge_set(inst, trace.circuit_edges)
        assert edge_set(mp_inst, mp_trace.circuit_edges) == edge_set(inst, trace.circuit_edges)


def _poscnf_winner_as_outcome(formula, mover):
    winner = solve_poscnf(new_game(formula, mover)).winner
    return CLOutcome.BLUE_WIN if winner == TFPlayer.TRUE else CLOutcome.RED_WIN


@pytest.mark.slow
class TestWinnerEquivalence:
    @pytest.mark.parametrize("formula", micro_formulas(), ids=lambda f: f"{f.n}v:{f.clauses}")
    def test_all_variants_both_movers(self, formula):
        inst, trace, params = compile_poscnf_to_b2cl(formula)
        bb = to_builder_blocker(inst, trace, params)
        games = {
            "standard": inst,
            "builder_blocker": bb[0],
            "normal_play": to_normal_play(*bb)[0],
            "misere_play": to_misere_play(*bb)[0],
        }
        for mover in TFPlayer:
            expected = _poscnf_winner_as_outcome(formula, mover)
            cl_mover = Player.BLUE if mover == TFPlayer.TRUE else Player.RED
            for name, instance in games.items():
                seated = CLInstance(instance.edges, instance.variant, cl_mover)
                got = solve_cl(seated).outcome
                assert got == expected, (name, mover, formula.clauses)
