"""Diagram construction, tracing, linking, and surgery."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from braidax import (
    BraidWord,
    DiagramError,
    axis_link_diagram,
    closure_diagram,
    component_count,
    cycle_decomposition,
    delete_component,
    from_pd_json,
    is_split,
    linking_matrix,
    mirror,
    mirror_diagram,
    permutation_of,
    simplify,
    smooth_crossing,
    strand_linking,
    switch_crossing,
    to_pd_json,
    trace_components,
)

from conftest import braid_words


def w(n, *letters):
    return BraidWord(n, letters)


class TestClosureConstruction:
    def test_identity_is_unlink(self):
        d = closure_diagram(BraidWord(3))
        assert d.crossings == 0
        assert d.free_loops == 3
        assert component_count(d) == 3

    def test_hopf(self):
        d = closure_diagram(w(2, 1, 1))
        d.validate()
        assert d.crossings == 2
        assert component_count(d) == 2

    @given(braid_words())
    def test_component_count_matches_cycles(self, word):
        # oracle: cycles of the braid permutation
        expected = cycle_decomposition(permutation_of(word)).count
        assert component_count(closure_diagram(word)) == expected

    @given(braid_words())
    def test_valid_arc_pairing(self, word):
        closure_diagram(word).validate()


class TestAxisConstruction:
    def test_single_strand_gives_hopf(self):
        d = axis_link_diagram(BraidWord(1))
        assert d.crossings == 2
        assert component_count(d) == 2
        assert linking_matrix(d).entries == ((0, 1), (1, 0))

    def test_two_trivial_strands(self):
        d = axis_link_diagram(BraidWord(2))
        lk = linking_matrix(d)
        assert component_count(d) == 3
        # labels: strand components first, axis last
        assert lk[0, 2] == 1 and lk[1, 2] == 1 and lk[0, 1] == 0

    def test_axis_label_is_last(self):
        d = axis_link_diagram(w(2, 1))
        labeling = trace_components(d)
        assert labeling.axis_label == labeling.count - 1
        assert linking_matrix(d)[0, 1] == 2

    @given(braid_words(max_strands=8))
    def test_component_count_and_crossings(self, word):
        d = axis_link_diagram(word)
        cycles = cycle_decomposition(permutation_of(word))
        assert component_count(d) == cycles.count + 1
        assert d.crossings == len(word.letters) + 2 * word.strands

    @given(braid_words(max_strands=8))
    def test_axis_links_each_component_by_strand_count(self, word):
        d = axis_link_diagram(word)
        labeling = trace_components(d)
        lk = linking_matrix(d)
        axis = labeling.axis_label
        for j, info in enumerate(labeling.infos):
            if j != axis:
                assert lk[j, axis] == len(info.strands)


class TestLinkingMatrix:
    def test_hopf_value(self):
        assert linking_matrix(closure_diagram(w(2, 1, 1)))[0, 1] == 1

    @given(braid_words(min_strands=3))
    def test_matches_strand_linking(self, word):
        # independent computation: position tracking through the word
        d = closure_diagram(word)
        labeling = trace_components(d)
        lk = linking_matrix(d)
        for a in range(labeling.count):
            for b in range(a + 1, labeling.count):
                want = strand_linking(
                    word, labeling.infos[a].strands, labeling.infos[b].strands
                )
                assert lk[a, b] == want
                assert lk[b, a] == want

    @given(braid_words())
    def test_mirror_negates_entries(self, word):
        d = closure_diagram(word)
        m = mirror_diagram(d)
        a = np.array(linking_matrix(d).entries)
        b = np.array(linking_matrix(m).entries)
        assert (a == -b).all()


class TestSurgery:
    def test_smooth_single_crossing_closure(self):
        # oriented smoothing of the one-crossing unknot splits it in two
        d = closure_diagram(w(2, 1))
        assert component_count(smooth_crossing(d, 0)) == 2

    def test_smooth_and_switch_form_skein_triple(self):
        d = closure_diagram(w(3, 1, 1, 2))
        for c in range(d.crossings):
            p_orig = component_count(d)
            p_switch = component_count(switch_crossing(d, c))
            p_smooth = component_count(smooth_crossing(d, c))
            assert p_switch == p_orig
            assert abs(p_smooth - p_orig) == 1

    @given(braid_words(max_letters=8), st.data())
    def test_skein_triple_component_counts(self, word, data):
        d = closure_diagram(word)
        if d.crossings == 0:
            return
        c = data.draw(st.integers(0, d.crossings - 1))
        assert component_count(switch_crossing(d, c)) == component_count(d)
        assert abs(component_count(smooth_crossing(d, c)) - component_count(d)) == 1

    def test_switch_both_hopf_crossings(self):
        d = closure_diagram(w(2, 1, 1))
        flipped = switch_crossing(switch_crossing(d, 0), 1)
        assert linking_matrix(flipped)[0, 1] == -1

    def test_switch_is_involution(self):
        d = closure_diagram(w(3, 1, 2, -1))
        again = switch_crossing(switch_crossing(d, 1), 1)
        assert (again.conn == d.conn).all()
        assert (again.sign == d.sign).all()

    def test_delete_component_of_hopf(self):
        d = closure_diagram(w(2, 1, 1))
        rest = delete_component(d, 0)
        assert component_count(rest) == 1
        assert rest.crossings == 0

    def test_delete_axis(self):
        word = w(3, 1, 2, 1)
        d = axis_link_diagram(word)
        rest = delete_component(d, trace_components(d).axis_label)
        assert component_count(rest) == component_count(closure_diagram(word))

    def test_delete_invalid_label(self):
        with pytest.raises(DiagramError):
            delete_component(closure_diagram(w(2, 1, 1)), 5)

    @given(braid_words())
    def test_mirror_is_involution(self, word):
        d = closure_diagram(word)
        back = mirror_diagram(mirror_diagram(d))
        assert (back.conn == d.conn).all()
        assert (back.sign == d.sign).all()

    @given(braid_words())
    def test_mirror_commutes_with_closure(self, word):
        a = mirror_diagram(closure_diagram(word))
        b = closure_diagram(mirror(word))
        assert (a.conn == b.conn).all()
        assert (a.sign == b.sign).all()


class TestSimplify:
    def test_kink_removal(self):
        d = simplify(closure_diagram(w(2, 1)))
        assert d.crossings == 0 and d.free_loops == 1

    def test_cancelling_pair(self):
        d = simplify(closure_diagram(w(2, 1, -1)))
        assert d.crossings == 0 and d.free_loops == 2
        assert is_split(d)

    def test_hopf_not_simplified(self):
        assert simplify(closure_diagram(w(2, 1, 1))).crossings == 2

    def test_twist_chain_collapses(self):
        d = simplify(closure_diagram(w(2, 1, -1, 1, -1, 1, -1)))
        assert d.crossings == 0 and d.free_loops == 2

    @given(braid_words())
    def test_preserves_component_count(self, word):
        d = closure_diagram(word)
        assert component_count(simplify(d)) == component_count(d)

    @given(braid_words())
    def test_preserves_linking_multiset(self, word):
        # component labels may permute, so compare entry multisets
        d = closure_diagram(word)
        before = sorted(x for row in linking_matrix(d).entries for x in row)
        after = sorted(x for row in linking_matrix(simplify(d)).entries for x in row)
        assert before == after


class TestSplitDetection:
    def test_distant_generators_closure(self):
        # closure of sigma_1^2 sigma_3^2 in B_5: strand 5 is a split unknot
        assert is_split(closure_diagram(w(5, 1, 1, 3, 3)))

    def test_connected_closure(self):
        assert not is_split(closure_diagram(w(2, 1, 1)))

    def test_free_loop_beside_crossings(self):
        assert is_split(closure_diagram(w(3, 1, 1)))

    def test_single_unknot_not_split(self):
        assert not is_split(simplify(closure_diagram(w(2, 1))))


class TestSerialization:
    @given(braid_words())
    def test_roundtrip(self, word):
        d = axis_link_diagram(word)
        back = from_pd_json(to_pd_json(d))
        back.validate()
        assert back.crossings == d.crossings
        assert component_count(back) == component_count(d)
        assert sorted(x for r in linking_matrix(back).entries for x in r) == sorted(
            x for r in linking_matrix(d).entries for x in r
        )

    def test_rejects_bad_format(self):
        with pytest.raises(DiagramError):
            from_pd_json('{"format": "other", "version": 1, "crossings": []}')

    def test_deterministic(self):
        d = closure_diagram(w(3, 1, -2, 1))
        assert to_pd_json(d) == to_pd_json(d)
