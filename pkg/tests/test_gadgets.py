import pytest

from sparsekit.gadgets import (
    build_treegadget,
    build_triangular_gadget,
    certify_triangular_gadget,
    id_assignment,
    PathGadget,
    _enumerate_proper,
)
from sparsekit.instances import Graph, ListColoringInstance
from sparsekit.oracles import solve_list_coloring
from sparsekit.rng import Rng


def _treegadget_lci(tg, leaf_lists, root_list, internal=(1, 2, 3)):
    lists = [tuple(internal)] * tg.num_vertices
    for leaf, allowed in zip(tg.leaves, leaf_lists):
        lists[leaf] = tuple(allowed)
    lists[tg.root] = tuple(root_list)
    g = Graph(tg.num_vertices, [(a + 1, b + 1) for a, b in tg.edges])
    return ListColoringInstance(g, lists)


def test_treegadget_structure():
    tg2 = build_treegadget(2)
    assert tg2.num_vertices == 3 and len(tg2.leaves) == 2   # single triangle
    assert tg2.height == 0
    tg8 = build_treegadget(8)
    assert tg8.num_vertices == 3 * 7 and len(tg8.leaves) == 8
    assert tg8.height == 2
    with pytest.raises(ValueError):
        build_treegadget(3)
    with pytest.raises(ValueError):
        build_treegadget(1)


def test_treegadget_is_three_colorable():
    for q in (2, 4, 8, 16):
        tg = build_treegadget(q)
        inst = _treegadget_lci(tg, [(1, 2, 3)] * q, (1, 2, 3))
        assert solve_list_coloring(inst).verdict == "yes"


def test_treegadget_root_forcing_heights_up_to_3():
    # a color absent from every leaf must land on the root: forbid it on
    # the root as well and the gadget becomes uncolorable
    for q in (2, 4, 8, 16):   # heights 0..3
        tg = build_treegadget(q)
        for k in (1, 2, 3):
            others = tuple(c for c in (1, 2, 3) if c != k)
            inst = _treegadget_lci(tg, [others] * q, others)
            assert solve_list_coloring(inst).verdict == "no"


def test_treegadget_extension_avoiding_leaf_color():
    # proper leaf precolorings containing color i extend with root != i
    rng = Rng(12)
    trials = 0
    while trials < 200:
        q = rng.choice((2, 4, 8, 16))
        tg = build_treegadget(q)
        leaf_colors = [rng.randint(1, 3) for _ in range(q)]
        # gadget leaves come in adjacent (x,y) pairs: keep the coloring proper
        for pair in range(q // 2):
            while leaf_colors[2 * pair] == leaf_colors[2 * pair + 1]:
                leaf_colors[2 * pair + 1] = rng.randint(1, 3)
        i = rng.choice(leaf_colors)
        inst = _treegadget_lci(tg, [(c,) for c in leaf_colors],
                               tuple(c for c in (1, 2, 3) if c != i))
        assert solve_list_coloring(inst).verdict == "yes"
        trials += 1


def test_triangular_gadget_shape():
    gadget = build_triangular_gadget()
    assert gadget.num_vertices == 12
    assert len(gadget.corners) == 3 and len(gadget.inner) == 9
    corner_set = set(gadget.corners)
    for a, b in gadget.edges:
        assert not (a in corner_set and b in corner_set)


def test_triangular_gadget_certification():
    certify_triangular_gadget.cache_clear()
    gadget = certify_triangular_gadget()
    assert gadget.num_vertices == 12
    # cached afterwards
    assert certify_triangular_gadget() is gadget


def test_triangular_gadget_observation_exhaustive():
    # independent restatement of the certification: enumerate every proper
    # 3-coloring and check the two properties directly
    gadget = build_triangular_gadget()
    seen_rainbows = set()
    count = 0
    for coloring in _enumerate_proper(gadget.num_vertices, gadget.edges, 3):
        count += 1
        corners = tuple(coloring[c] for c in gadget.corners)
        assert len(set(corners)) == 3
        seen_rainbows.add(corners)
    assert len(seen_rainbows) == 6   # every rainbow precoloring extends
    assert count >= 6


def test_path_gadget_shape():
    pg = PathGadget()
    assert pg.num_vertices == 3
    assert set(pg.arcs) == {(0, 1), (1, 0), (1, 2), (2, 1)}


def test_id_assignment():
    ids = id_assignment(4, 2)
    assert ids.big_k == 2 + 2 + 2
    assert len(ids.ids) == 4
    assert len(set(ids.ids)) == 4
    for subset in ids.ids:
        assert len(subset) == ids.big_k
        assert subset <= set(range(1, 2 * ids.big_k + 1))
    with pytest.raises(ValueError):
        id_assignment(3, 2)
    with pytest.raises(ValueError):
        id_assignment(1, 2)
