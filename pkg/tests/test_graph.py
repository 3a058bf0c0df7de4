import os
from pathlib import Path

import pytest

from vconn import (
    EdgeListError,
    Graph,
    GraphInvariantError,
    ReversalJournal,
    SeparationTriple,
    boundary_size,
    is_vertex_cut,
    load_edge_list,
    read_edge_list,
    reverse_path,
    volume_out,
    write_edge_list,
)
from vconn._graph import EpochMarks

from oracles import complete, cycle, path

# run the tests from the root dir
TEST_DIR = Path(__file__).parent / "../"
os.chdir(TEST_DIR)


def test_load_edge_list_doubles_edges():
    g = load_edge_list("0 1\n1 2")
    assert g.n == 3
    assert g.m == 4
    assert sum(g.deg_out) == g.m


def test_load_edge_list_drops_self_loops():
    g = load_edge_list("0 0\n0 1")
    assert (g.n, g.m) == (2, 2)


def test_load_edge_list_dedups_and_remaps():
    g = load_edge_list("5 9\n9 5\n5 9")
    assert (g.n, g.m) == (2, 2)
    assert g.labels == [5, 9]


def test_load_edge_list_symmetric():
    g = load_edge_list("# comment\n\n3 4\n4 7\n7 3\n")
    arcs = set(g.arc_list())
    assert all((v, u) in arcs for u, v in arcs)


def test_malformed_line_reports_line_number():
    """Line numbers count comments and blank lines too"""
    with pytest.raises(EdgeListError) as err:
        read_edge_list("tests/data/broken.txt")
    assert err.value.line_number == 3


def test_three_tokens_rejected():
    with pytest.raises(EdgeListError):
        load_edge_list("0 1 2")


def test_write_read_keeps_labels(tmp_path):
    g = read_edge_list("tests/data/c6.txt")
    out = tmp_path / "copy.txt"
    write_edge_list(out, g)
    h = read_edge_list(out)
    assert sorted(h.labels) == sorted(g.labels)
    assert h.m == g.m


def test_reverse_then_undo_restores_adjacency():
    g = path(4)
    before = g.snapshot()
    journal = ReversalJournal()
    arcs = [a for a in range(g.m) if (g.tail(a), g.head(a)) in ((0, 1), (1, 2), (2, 3))]
    arcs.sort(key=g.tail)
    reverse_path(g, arcs, journal)
    assert g.snapshot() != before
    journal.undo(g)
    assert g.snapshot() == before


def test_reverse_path_must_be_contiguous():
    g = path(4)
    journal = ReversalJournal()
    a01 = next(a for a in range(g.m) if (g.tail(a), g.head(a)) == (0, 1))
    a23 = next(a for a in range(g.m) if (g.tail(a), g.head(a)) == (2, 3))
    with pytest.raises(GraphInvariantError):
        reverse_path(g, [a01, a23], journal)
    assert len(journal) == 0


def _arc(g, u, v):
    return next(a for a in g.out(u) if g.head(a) == v)


def test_reverse_path_leaving_set_reduces_boundary():
    """A path that leaves S once and never returns removes one boundary arc"""
    g = cycle(6)
    s = {0, 1, 2}
    journal = ReversalJournal()
    before = boundary_size(g, s)
    reverse_path(g, [_arc(g, 1, 2), _arc(g, 2, 3), _arc(g, 3, 4)], journal)
    assert boundary_size(g, s) == before - 1
    journal.undo(g)


def test_reverse_path_inside_set_keeps_boundary():
    g = cycle(6)
    s = {0, 1, 2}
    journal = ReversalJournal()
    before = boundary_size(g, s)
    reverse_path(g, [_arc(g, 0, 1), _arc(g, 1, 2)], journal)
    assert boundary_size(g, s) == before
    journal.undo(g)


def test_volume_out_on_k4():
    g = complete(4)
    assert volume_out(g, []) == 0
    assert volume_out(g, range(4)) == 12
    assert volume_out(g, [2]) == 3


def test_access_counter_ordering():
    g = complete(4)
    g.reset_counters()
    g.access_vertex(0)
    for a in g.out(0):
        g.access_arc(a)
        g.access_vertex(g.head(a))
    g.access_arc(g.out(0)[0])
    c = g.counters
    assert c.t_edge_accesses == 4
    assert c.u_edges == 3
    assert c.u_vertices == 4
    assert c.t_edge_accesses >= c.u_edges >= c.u_vertices - 1


def test_epoch_marks_clear():
    marks = EpochMarks(3)
    assert marks.mark(1)
    assert not marks.mark(1)
    marks.clear()
    assert 1 not in marks
    assert marks.mark(1)


def test_separation_triple():
    g = path(5)
    triple = SeparationTriple.from_cut(g, {2})
    assert triple.is_valid(g)
    assert triple.S == frozenset({2})
    assert SeparationTriple.from_cut(g, {0}) is None
    bad = SeparationTriple(frozenset({0}), frozenset(), frozenset({1, 2, 3, 4}))
    assert not bad.is_valid(g)


def test_is_vertex_cut():
    g = cycle(6)
    assert is_vertex_cut(g, {0, 3})
    assert not is_vertex_cut(g, {0, 1})
    assert not is_vertex_cut(complete(4), {0, 1})


def test_copy_is_independent():
    g = cycle(4)
    h = g.copy()
    journal = ReversalJournal()
    reverse_path(h, [h.out(0)[0]], journal)
    assert g.snapshot() != h.snapshot()
    assert g.snapshot() == cycle(4).snapshot()


def test_arc_endpoint_out_of_range():
    with pytest.raises(ValueError):
        Graph(2, arcs=[(0, 2)])
