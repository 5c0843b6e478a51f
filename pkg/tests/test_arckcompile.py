import pytest

from arckbench.arck import ArcKPosition, Convention, Player, encode_position, solve
from arckbench.arckcompile import compile_b2cl_to_arck, red_budget
from arckbench.cl import CLColour, CLEdge, CLInstance, CLVariant
from arckbench.clcompile import compile_poscnf_to_b2cl
from arckbench.errors import NonBasisVertex, NotPlanarEmbedding
from arckbench.gadgets import Backend, GadgetKind, gadget_template
from arckbench.graphs import grid_snap_check
from arckbench.poscnf import TFPlayer, new_game, parse_formula, solve_poscnf

B, R = CLColour.BLUE, CLColour.RED

X = parse_formula("p poscnf 1 1\n1 0\n")
X_OR_Y = parse_formula("p poscnf 2 1\n1 2 0\n")


def compile_formula(formula, backend=Backend.GENERAL):
    inst, trace, params = compile_poscnf_to_b2cl(formula)
    return compile_b2cl_to_arck(inst, backend)


def and_vertex_instance():
    edges = (
        CLEdge(0, 1, 0, B, 2),
        CLEdge(1, 0, 2, B, 1),
        CLEdge(2, 0, 3, B, 1),
    )
    return CLInstance(edges, CLVariant.STANDARD, Player.BLUE)


class TestIdentityLowering:
    def test_single_and_vertex_matches_template(self):
        pos, trace = compile_b2cl_to_arck(and_vertex_instance(), Backend.GENERAL)
        template = gadget_template(GadgetKind.AND, Backend.GENERAL)
        assert len(pos.graph.edges) == len(template.fragment.edges)
        got = sorted(
            (e.colour.value, e.label or "") for e in pos.graph.edges
        )
        want = sorted(
            (e.colour.value, e.label or "") for e in template.fragment.edges
        )
        assert got == want
        assert pos.convention == Convention.MISERE

    def test_unknown_vertex_rejected(self):
        # a weight-2 blue arc between two weight-1 red arcs matches nothing
        edges = (
            CLEdge(0, 1, 0, B, 2),
            CLEdge(1, 0, 2, R, 1),
            CLEdge(2, 3, 0, R, 1),
        )
        inst = CLInstance(edges, CLVariant.STANDARD, Player.BLUE)
        with pytest.raises(NonBasisVertex):
            compile_b2cl_to_arck(inst, Backend.GENERAL)

    def test_non_planar_rejected(self):
        edges = []
        eid = 0
        for u in range(5):
            for v in range(u + 1, 5):
                edges.append(CLEdge(eid, u, v, B, 2))
                eid += 1
        inst = CLInstance(tuple(edges), CLVariant.STANDARD, Player.BLUE)
        with pytest.raises((NotPlanarEmbedding, NonBasisVertex)):
            compile_b2cl_to_arck(inst, Backend.GENERAL)


class TestCompiledShape:
    def test_x_has_variable_and_goal(self):
        pos, trace = compile_formula(X)
        kinds = sorted(n["kind"] for n in trace.nodes)
        assert kinds == ["goal", "variable"]

    def test_x_trace_buckets_exhaustive(self):
        pos, trace = compile_formula(X)
        in_buckets = set()
        for ids in trace.node_edges.values():
            in_buckets.update(ids)
        in_buckets.update(trace.pair_extra_edges)
        in_buckets.update(trace.iso_red_edges)
        assert in_buckets == {e.id for e in pos.graph.edges}

    def test_interface_count_matches_connections(self):
        pos, trace = compile_formula(X_OR_Y)
        merged = [c for c in trace.connections if c["producer"] and c["consumer"]]
        assert len(merged) == 3  # two variables into the or, or into the goal

    def test_pair_extras(self):
        pos_x, trace_x = compile_formula(X)
        assert len(trace_x.pair_extra_edges) == 0
        pos_xy, trace_xy = compile_formula(X_OR_Y)
        assert len(trace_xy.pair_extra_edges) == 1

    def test_determinism(self):
        a = encode_position(compile_formula(X_OR_Y)[0])
        b = encode_position(compile_formula(X_OR_Y)[0])
        assert a == b

    @pytest.mark.parametrize("backend", list(Backend), ids=lambda b: b.value)
    def test_emitted_position_revalidates(self, backend):
        # decoding runs the full structural validation (simple graph, dense
        # ids, endpoints) and must reproduce the emitted position exactly
        from arckbench.arck import decode_position

        pos, _ = compile_formula(X_OR_Y, backend)
        again = decode_position(encode_position(pos))
        assert again == pos
        assert again.convention == Convention.MISERE


class TestInterfaceInvariants:
    @pytest.mark.parametrize("backend", list(Backend), ids=lambda b: b.value)
    def test_port_merge_degrees(self, backend):
        pos, trace = compile_formula(X_OR_Y, backend)
        graph = pos.graph
        for ci, edge_ids in trace.interface_edges.items():
            i_edge = graph.edge(edge_ids[0])
            a_edge = graph.edge(edge_ids[1])
            top_edge = graph.edge(edge_ids[2])
            center = (set(i_edge.endpoints()) & set(a_edge.endpoints())).pop()
            top_end = (set(top_edge.endpoints()) - {center}).pop()
            assert graph.degree(center) == 3
            assert graph.degree(top_end) == 1

    @pytest.mark.parametrize("backend", list(Backend), ids=lambda b: b.value)
    def test_attachment_only_at_ends(self, backend):
        # interface centres and tops never gain neighbours; internals touch
        # only the i/a ends
        pos, trace = compile_formula(X_OR_Y, backend)
        graph = pos.graph
        for ci, edge_ids in trace.interface_edges.items():
            own = set(edge_ids[:3])
            i_edge = graph.edge(edge_ids[0])
            a_edge = graph.edge(edge_ids[1])
            center = (set(i_edge.endpoints()) & set(a_edge.endpoints())).pop()
            foreign_at_center = [
                e for e in graph.edges
                if center in e.endpoints() and e.id not in own
            ]
            assert foreign_at_center == []


class TestLattice:
    @pytest.mark.parametrize("backend",
                             [Backend.CARTESIAN, Backend.TRIANGULAR],
                             ids=lambda b: b.value)
    def test_x_snaps(self, backend):
        pos, trace = compile_formula(X, backend)
        report = grid_snap_check(pos.graph, pos.graph.lattice)
        assert report.ok, report

    @pytest.mark.parametrize("backend",
                             [Backend.CARTESIAN, Backend.TRIANGULAR],
                             ids=lambda b: b.value)
    def test_x_or_y_snaps(self, backend):
        pos, trace = compile_formula(X_OR_Y, backend)
        report = grid_snap_check(pos.graph, pos.graph.lattice)
        assert report.ok, report

    def test_all_vertices_have_coordinates(self):
        pos, trace = compile_formula(X, Backend.CARTESIAN)
        assert all(v.coord is not None for v in pos.graph.vertices)
        assert len(trace.coordinates) == len(pos.graph.vertices)


class TestRedBudget:
    def test_ledger_partitions_reds(self):
        for formula in (X, X_OR_Y):
            pos, trace = compile_formula(formula)
            ledger = red_budget(trace, pos)
            assert ledger["balanced"]
            total = (
                len(ledger["companions"])
                + len(ledger["variable_path_reds"])
                + len(ledger["pair_extras"])
                + len(ledger["isolated"])
            )
            assert total == ledger["total_red"]

    def test_variable_pair_extras_floor(self):
        pos, trace = compile_formula(X_OR_Y)
        ledger = red_budget(trace, pos)
        assert len(ledger["pair_extras"]) == 1


class TestEndToEndWinners:
    @pytest.mark.parametrize("formula,text", [(X, "(x)"), (X_OR_Y, "(x or y)")],
                             ids=["x", "x_or_y"])
    def test_general_backend_agrees_with_poscnf(self, formula, text):
        pos, _ = compile_formula(formula)
        for mover in TFPlayer:
            want = solve_poscnf(new_game(formula, mover)).winner
            seat = Player.BLUE if mover == TFPlayer.TRUE else Player.RED
            res = solve(ArcKPosition(pos.graph, pos.convention, seat))
            assert (res.winner == Player.BLUE) == (want == TFPlayer.TRUE)
