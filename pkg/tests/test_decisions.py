import json
import logging

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lm_drift.errors import ContainmentError, DuplicateAliasError, LexiconError, RecordFormatError, UnknownEntryError
from lm_drift.lexicon import (
    Action,
    Lexicon,
    ModelEntry,
    TriageDecision,
    append_decision,
    apply_decision,
    read_decisions,
    replay_decisions,
)


@pytest.fixture
def base() -> Lexicon:
    return Lexicon(entries={
        "T5": ModelEntry("T5"),
        "GPT": ModelEntry("GPT"),
        "ChatGPT": ModelEntry("ChatGPT", parent="GPT"),
    })


class TestDecisionRecord:
    def test_targeted_actions_need_target(self):
        with pytest.raises(LexiconError):
            TriageDecision("T5-3B", Action.VARIATION_OF)

    def test_discard_takes_no_target(self):
        with pytest.raises(LexiconError):
            TriageDecision("foo", Action.DISCARD, target="T5")

    def test_parent_only_on_new_entry(self):
        with pytest.raises(LexiconError):
            TriageDecision("GPT3", Action.ALIAS_OF, target="GPT", parent="GPT")

    def test_labels(self):
        assert TriageDecision("T5-3B", Action.VARIATION_OF, target="T5").label == "variation_of(T5)"
        assert TriageDecision("foo", "discard").label == "discard"

    def test_record_keeps_every_field(self):
        d = TriageDecision("GPT-4", Action.NEW_ENTRY, parent="GPT", decided_by="ana", timestamp="2024-01-01T00:00:00+00:00")
        assert TriageDecision.from_record(json.loads(json.dumps(d.to_record()))) == d


class TestApplyDecision:
    def test_variation_is_recorded_on_target(self, base):
        updated = apply_decision(base, TriageDecision("T5-3B", Action.VARIATION_OF, target="T5"))
        assert updated.entry("T5").variations == ("T5-3B",)
        assert base.entry("T5").variations == ()

    def test_variation_must_contain_an_alias(self, base):
        with pytest.raises(ContainmentError):
            apply_decision(base, TriageDecision("Flan-XL", Action.VARIATION_OF, target="T5"))

    def test_alias_is_added(self, base):
        updated = apply_decision(base, TriageDecision("chatgpt", Action.ALIAS_OF, target="ChatGPT"))
        assert updated.alias_owner("chatgpt") == "ChatGPT"
        assert updated.entry("ChatGPT").aliases == ("ChatGPT", "chatgpt")

    def test_existing_alias_conflicts(self, base):
        with pytest.raises(DuplicateAliasError) as exc:
            apply_decision(base, TriageDecision("ChatGPT", Action.ALIAS_OF, target="GPT"))
        assert exc.value.entries == ("ChatGPT", "GPT")

    def test_new_entry_under_parent(self, base):
        updated = apply_decision(base, TriageDecision("GPT-4", Action.NEW_ENTRY, parent="GPT"))
        assert updated.root_of("GPT-4") == "GPT"

    def test_new_entry_with_unknown_parent(self, base):
        with pytest.raises(UnknownEntryError):
            apply_decision(base, TriageDecision("GPT-4", Action.NEW_ENTRY, parent="OpenAI"))

    def test_new_entry_that_is_an_alias(self, base):
        with pytest.raises(DuplicateAliasError):
            apply_decision(base, TriageDecision("T5", Action.NEW_ENTRY))

    def test_discard_leaves_lexicon(self, base):
        assert apply_decision(base, TriageDecision("our model", Action.DISCARD)) is base

    def test_discarded_metric_is_logged_not_added(self, tmp_path, base, caplog):
        log = tmp_path / "decisions.jsonl"
        decision = TriageDecision("BLEU", Action.DISCARD, decided_by="ana")
        with caplog.at_level(logging.INFO, logger="lm_drift.lexicon.decisions"):
            updated = apply_decision(base, decision)
        append_decision(log, decision)
        assert updated == base
        assert updated.alias_owner("BLEU") is None
        assert read_decisions(log) == [decision]
        assert "BLEU" in caplog.text

    def test_unknown_target(self, base):
        with pytest.raises(UnknownEntryError):
            apply_decision(base, TriageDecision("LLaMA-2", Action.VARIATION_OF, target="LLaMA"))


class TestDecisionLog:
    def test_missing_log_is_empty(self, tmp_path):
        assert read_decisions(tmp_path / "decisions.jsonl") == []

    def test_append_and_replay(self, tmp_path, base):
        log = tmp_path / "decisions.jsonl"
        decisions = [
            TriageDecision("T5-3B", Action.VARIATION_OF, target="T5"),
            TriageDecision("chatgpt", Action.ALIAS_OF, target="ChatGPT"),
            TriageDecision("GPT-4", Action.NEW_ENTRY, parent="GPT"),
            TriageDecision("our model", Action.DISCARD),
        ]
        for d in decisions:
            append_decision(log, d)
        assert read_decisions(log) == decisions
        assert len(log.read_text(encoding="utf-8").splitlines()) == 4

        direct = base
        for d in decisions:
            direct = apply_decision(direct, d)
        assert replay_decisions(base, read_decisions(log)) == direct

    def test_bad_record_is_named(self, tmp_path):
        log = tmp_path / "decisions.jsonl"
        log.write_text('{"candidate": "x", "action": "discard"}\n{"candidate": "y", "action": "promote"}\n')
        with pytest.raises(RecordFormatError) as exc:
            read_decisions(log)
        assert exc.value.line_number == 2


CANDIDATES = ["T5", "T5-3B", "T5-XL", "mT5", "GPT", "GPT-4", "ChatGPT", "chatgpt", "BLEU", "Flan-T5"]
ENTRY_NAMES = ["T5", "GPT", "ChatGPT", "GPT-4", "mT5", "Flan-T5"]


@st.composite
def decisions(draw):
    candidate = draw(st.sampled_from(CANDIDATES))
    action = draw(st.sampled_from(list(Action)))
    if action in (Action.ALIAS_OF, Action.VARIATION_OF):
        return TriageDecision(candidate, action, target=draw(st.sampled_from(ENTRY_NAMES)))
    if action is Action.NEW_ENTRY:
        return TriageDecision(candidate, action, parent=draw(st.none() | st.sampled_from(ENTRY_NAMES)))
    return TriageDecision(candidate, action)


def assert_valid(lexicon):
    aliases = [a for e in lexicon.entries.values() for a in e.aliases]
    assert len(aliases) == len(set(aliases))
    for entry in lexicon.entries.values():
        assert all(any(a in v for a in entry.aliases) for v in entry.variations)
    assert Lexicon(l_terms=lexicon.l_terms, entries=lexicon.entries) == lexicon


class TestDecisionSequences:
    @given(st.lists(decisions(), max_size=12))
    def test_every_step_is_valid_or_rejected(self, sequence):
        lexicon = Lexicon(entries={"T5": ModelEntry("T5"), "GPT": ModelEntry("GPT")})
        for decision in sequence:
            before = dict(lexicon.entries)
            try:
                updated = apply_decision(lexicon, decision)
            except (DuplicateAliasError, ContainmentError, UnknownEntryError):
                assert lexicon.entries == before
                continue
            assert lexicon.entries == before
            assert_valid(updated)
            if decision.action is Action.DISCARD:
                assert updated is lexicon
            else:
                assert decision.candidate in updated.alias_index or any(
                    decision.candidate in e.variations for e in updated.entries.values()
                )
            lexicon = updated
