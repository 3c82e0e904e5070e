import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import pc
from lm_drift.analysis import (
    absolute_majority,
    composition,
    composition_diff,
    group_shift,
    jaccard,
    jaccard_matrix,
    majority_rates,
    quartile_contrast,
    quartile_split,
)
from lm_drift.errors import StatsError, UnknownEntryError
from lm_drift.lexicon import Lexicon, ModelEntry

ENTRIES = ["GPT", "GPT-3", "ChatGPT", "BERT"]

paper_counts = st.lists(
    st.dictionaries(st.sampled_from(ENTRIES), st.integers(min_value=0, max_value=9), max_size=4),
    min_size=1,
    max_size=12,
)


def counts_from(dicts):
    return [pc(f"p{i:02d}", per_entry=d) for i, d in enumerate(dicts)]


def chain_lexicon():
    return Lexicon(entries={
        "GPT": ModelEntry("GPT"),
        "GPT-3": ModelEntry("GPT-3", parent="GPT"),
        "ChatGPT": ModelEntry("ChatGPT", parent="GPT-3"),
        "BERT": ModelEntry("BERT"),
    })


class TestComposition:
    def test_shares(self, gpt_chain):
        vec = composition([pc("a", per_entry={"GPT-3": 3, "BERT": 1}), pc("b", per_entry={"ChatGPT": 4})], gpt_chain, "ACL 2023")
        assert vec.total == 8
        assert vec.by_entry == {"BERT": 0.125, "ChatGPT": 0.5, "GPT-3": 0.375}
        assert vec.by_component == {"BERT": 0.125, "GPT": 0.875}

    @given(paper_counts)
    def test_shares_are_conserved(self, dicts):
        lex = chain_lexicon()
        counts = counts_from(dicts)
        if sum(c.n for c in counts) == 0:
            with pytest.raises(StatsError):
                composition(counts, lex)
            return
        vec = composition(counts, lex)
        assert math.isclose(sum(vec.by_entry.values()), 1.0)
        assert math.isclose(sum(vec.by_component.values()), 1.0)
        assert sum(vec.entry_counts.values()) == vec.total

    def test_unknown_entry(self, gpt_chain):
        with pytest.raises(UnknownEntryError):
            composition([pc("a", per_entry={"T5": 1})], gpt_chain)


class TestJaccard:
    def test_identity_in_both_modes(self, gpt_chain):
        vec = composition([pc("a", per_entry={"GPT-3": 3, "BERT": 1})], gpt_chain)
        assert jaccard(vec, vec, "set") == 1.0
        assert jaccard(vec, vec, "weighted") == pytest.approx(1.0)

    def test_modes(self, gpt_chain):
        a = composition([pc("a", per_entry={"GPT": 1, "BERT": 1})], gpt_chain, "a")
        b = composition([pc("b", per_entry={"GPT": 3, "ChatGPT": 1})], gpt_chain, "b")
        assert jaccard(a, b, "set") == pytest.approx(1 / 3)
        # min: GPT .5, BERT 0, ChatGPT 0; max: GPT .75, BERT .5, ChatGPT .25
        assert jaccard(a, b, "weighted") == pytest.approx(0.5 / 1.5)

    def test_unknown_mode(self, gpt_chain):
        vec = composition([pc("a", per_entry={"GPT": 1})], gpt_chain)
        with pytest.raises(ValueError):
            jaccard(vec, vec, "cosine")

    def test_matrix_is_square_and_symmetric(self, gpt_chain):
        vecs = [
            composition([pc("a", per_entry={"GPT": 1, "BERT": 2})], gpt_chain, "ACL 2020"),
            composition([pc("b", per_entry={"GPT-3": 4})], gpt_chain, "EMNLP 2021"),
            composition([pc("c", per_entry={"ChatGPT": 5, "BERT": 1})], gpt_chain, "ACL 2023"),
        ]
        m = jaccard_matrix(vecs, "weighted")
        assert m.labels == ["ACL 2020", "EMNLP 2021", "ACL 2023"]
        for i in range(3):
            assert m.values[i][i] == pytest.approx(1.0)
            for j in range(3):
                assert m.values[i][j] == pytest.approx(m.values[j][i])
        assert m.value("ACL 2020", "EMNLP 2021") == 0.0


class TestCompositionDiff:
    def test_sums_to_zero(self, gpt_chain):
        a = composition([pc("a", per_entry={"GPT": 3, "BERT": 1})], gpt_chain)
        b = composition([pc("b", per_entry={"BERT": 4})], gpt_chain)
        deltas = composition_diff(a, b)
        assert list(deltas) == ["BERT", "GPT"]
        assert deltas == pytest.approx({"BERT": -0.75, "GPT": 0.75})
        assert sum(deltas.values()) == pytest.approx(0.0)
        assert list(composition_diff(a, b, top_k=1)) == ["BERT"]


class TestQuartiles:
    @pytest.mark.parametrize("k,size", [(4, 1), (5, 2), (7, 2), (8, 2), (9, 3), (20, 5)])
    def test_group_size_is_ceiling(self, k, size):
        counts = [pc(f"p{i:02d}", n_l=i + 1) for i in range(k)] + [pc("zero")]
        split = quartile_split(counts)
        assert len(split.q4_plus) == len(split.q1_minus) == size
        assert not {c.paper_id for c in split.q4_plus} & {c.paper_id for c in split.q1_minus}
        assert split.q4_plus[0].n_l == k
        assert split.q1_minus[-1].n_l == 1

    def test_ties_broken_by_paper_id(self):
        counts = [pc(pid, n_l=2) for pid in ("d", "b", "a", "c")]
        split = quartile_split(counts)
        assert [c.paper_id for c in split.q4_plus] == ["a"]
        assert [c.paper_id for c in split.q1_minus] == ["d"]

    def test_too_few_related(self):
        with pytest.raises(StatsError) as exc:
            quartile_split([pc("a", 1), pc("b", 2), pc("c", 3), pc("d")], "ACL 2020")
        assert exc.value.scope == "ACL 2020"

    def test_contrast_and_shift(self, gpt_chain):
        early = [pc("e1", 9, {"BERT": 2}), pc("e2", 5, {"BERT": 1}), pc("e3", 2, {"GPT": 1}), pc("e4", 1, {"BERT": 3})]
        late = [pc("l1", 9, {"ChatGPT": 4}), pc("l2", 5, {"GPT-3": 1}), pc("l3", 2, {"BERT": 1}), pc("l4", 1, {"BERT": 1})]
        contrast = quartile_contrast(late, gpt_chain, "ACL 2023")
        assert contrast.deltas == {"BERT": -1.0, "GPT": 1.0}

        q4, q1 = group_shift(early, late, gpt_chain, "ACL 2020", "ACL 2023")
        assert (q4.group, q1.group) == ("Q4+", "Q1-")
        assert q4.deltas == pytest.approx({"BERT": -1.0, "GPT": 1.0})
        assert q1.deltas == {"BERT": 0.0}


class TestMajority:
    def test_strict_majority(self, gpt_chain):
        assert absolute_majority(pc("a", per_entry={"GPT-3": 2, "ChatGPT": 1, "BERT": 2}), gpt_chain) == "GPT"
        assert absolute_majority(pc("b", per_entry={"GPT": 2, "BERT": 2}), gpt_chain) is None
        assert absolute_majority(pc("c"), gpt_chain) is None

    @given(paper_counts)
    def test_rates_match_brute_force(self, dicts):
        lex = chain_lexicon()
        counts = counts_from(dicts)
        counted = [c for c in counts if c.n > 0]
        if not counted:
            with pytest.raises(StatsError):
                majority_rates(counts, lex)
            return
        report = majority_rates(counts, lex)
        gpt = sum(1 for c in counted if 2 * c.count_of(["GPT", "GPT-3", "ChatGPT"]) > c.n)
        bert = sum(1 for c in counted if 2 * c.count_of(["BERT"]) > c.n)
        assert report.counted_papers == len(counted)
        assert report.by_component.get("GPT", 0.0) == pytest.approx(gpt / len(counted))
        assert report.by_component.get("BERT", 0.0) == pytest.approx(bert / len(counted))
        assert report.majority_fraction + report.no_majority_fraction == pytest.approx(1.0)

    def test_include_zero(self, gpt_chain):
        counts = [pc("a", per_entry={"BERT": 1}), pc("b"), pc("c"), pc("d", per_entry={"GPT": 1, "BERT": 1})]
        assert majority_rates(counts, gpt_chain).by_component == {"BERT": 0.5}
        wide = majority_rates(counts, gpt_chain, include_zero=True)
        assert wide.counted_papers == 4
        assert wide.by_component == {"BERT": 0.25}
        assert wide.no_majority_fraction == 0.75

    def test_top_quarter_selector(self, gpt_chain):
        counts = [
            pc("a", 9, {"ChatGPT": 3}), pc("b", 1, {"BERT": 3}),
            pc("c", 1, {"BERT": 1}), pc("d", 1, {"BERT": 2}),
        ]
        report = majority_rates(counts, gpt_chain, "top_quarter_by_NL")
        assert report.counted_papers == 1
        assert report.by_component == {"GPT": 1.0}

    def test_unknown_selector(self, gpt_chain):
        with pytest.raises(ValueError):
            majority_rates([pc("a", per_entry={"BERT": 1})], gpt_chain, "bottom")
