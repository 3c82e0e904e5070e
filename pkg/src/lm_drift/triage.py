"""
Triage session - human review of extracted candidate names.

Each candidate is shown with its frequency, example titles and the advisory
suggestion, and answered with one key:

    n  new entry (optionally under a parent)
    a  alias of an existing entry
    v  variation of an existing entry
    d  discard
    s  skip for now
    q  quit

Every accepted decision is validated against the lexicon, written to the
lexicon file atomically, and appended to the decision log. Candidates with a
logged decision are not shown again, so an interrupted session resumes where
it stopped.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, List, Mapping, Optional, Sequence

from rich import box
from rich.console import Console
from rich.panel import Panel
from rich.prompt import Prompt
from rich.table import Table

from .errors import LexiconError
from .lexicon import Action, Lexicon, TriageDecision, append_decision, apply_decision, read_decisions, write_lexicon
from .llm import CandidateName, Suggestion, SuggestionKind, mark_decided, suggest_classification

logger = logging.getLogger(__name__)

KEYS = ("n", "a", "v", "d", "s", "q")
KEY_ACTIONS = {"n": Action.NEW_ENTRY, "a": Action.ALIAS_OF, "v": Action.VARIATION_OF, "d": Action.DISCARD}

# ask(prompt, choices, default) -> answer
AskFn = Callable[[str, Optional[Sequence[str]], Optional[str]], str]


@dataclass
class TriageSummary:
    decided: List[TriageDecision] = field(default_factory=list)
    skipped: List[str] = field(default_factory=list)
    conflicts: List[str] = field(default_factory=list)
    remaining: int = 0
    quit_early: bool = False


def _rich_ask(console: Console) -> AskFn:
    def ask(prompt: str, choices: Optional[Sequence[str]] = None, default: Optional[str] = None) -> str:
        return Prompt.ask(
            prompt,
            choices=list(choices) if choices else None,
            default=default if default is not None else ...,
            show_default=default not in (None, ""),
            console=console,
        )
    return ask


def _default_key(suggestion: Suggestion) -> str:
    if suggestion.kind is SuggestionKind.VARIATION_OF:
        return "v"
    if suggestion.kind is SuggestionKind.POSSIBLE_ALIAS_OF:
        return "a"
    if suggestion.kind is SuggestionKind.ALREADY_ALIAS:
        return "d"
    return "n"


class TriageSession:
    """
    Sequential review of pending candidates against one lexicon file.

    ``ask`` is injectable so sessions can be scripted; by default answers
    come from a rich prompt on ``console``.
    """

    def __init__(
        self,
        lexicon: Lexicon,
        lexicon_path: Path,
        decision_log: Path,
        decided_by: str = "",
        titles: Optional[Mapping[str, str]] = None,
        console: Optional[Console] = None,
        ask: Optional[AskFn] = None,
    ):
        self.lexicon = lexicon
        self.lexicon_path = Path(lexicon_path)
        self.decision_log = Path(decision_log)
        self.decided_by = decided_by
        self.titles = dict(titles or {})
        self.console = console or Console()
        self.ask = ask or _rich_ask(self.console)

    # ---------- commit ----------

    def commit(self, decision: TriageDecision) -> None:
        """
        Validate, write the lexicon, then log the decision.

        Raises:
            LexiconError: the decision conflicts with the lexicon; nothing is written
        """
        updated = apply_decision(self.lexicon, decision)
        if updated is not self.lexicon:
            write_lexicon(updated, self.lexicon_path)
        append_decision(self.decision_log, decision)
        self.lexicon = updated
        logger.info("decision %s for %r", decision.label, decision.candidate)

    # ---------- interactive ----------

    def pending(self, candidates: Sequence[CandidateName]) -> List[CandidateName]:
        marked = mark_decided(candidates, read_decisions(self.decision_log))
        return [c for c in marked if c.decision is None]

    def show(self, candidate: CandidateName, suggestion: Suggestion, position: int, total: int) -> None:
        table = Table(box=box.SIMPLE, show_header=False)
        table.add_column("field", style="bold cyan")
        table.add_column("value")
        table.add_row("candidate", f"[bold]{candidate.surface}[/bold]")
        table.add_row("frequency", str(candidate.frequency))
        for paper_id in candidate.example_paper_ids:
            table.add_row("example", f"{paper_id}  {self.titles.get(paper_id, '')}".rstrip())
        table.add_row("suggestion", f"[yellow]{suggestion.label}[/yellow]")
        self.console.print(Panel(table, title=f"{position}/{total}", expand=False))
        self.console.print("[dim]n new  a alias  v variation  d discard  s skip  q quit[/dim]")

    def _ask_entry(self, suggestion: Suggestion) -> Optional[str]:
        while True:
            entry_id = self.ask("entry", None, suggestion.entry_id or "").strip()
            if not entry_id:
                return None
            if entry_id in self.lexicon:
                return entry_id
            self.console.print(f"[red]no entry {entry_id!r}[/red]")

    def _decision_for(self, key: str, candidate: CandidateName, suggestion: Suggestion) -> Optional[TriageDecision]:
        action = KEY_ACTIONS[key]
        target = parent = None
        if action in (Action.ALIAS_OF, Action.VARIATION_OF):
            target = self._ask_entry(suggestion)
            if target is None:
                return None
        elif action is Action.NEW_ENTRY:
            parent = self.ask("parent (empty for none)", None, "").strip() or None
        return TriageDecision(candidate.surface, action, target=target, parent=parent, decided_by=self.decided_by)

    def run(self, candidates: Sequence[CandidateName]) -> TriageSummary:
        queue = self.pending(candidates)
        summary = TriageSummary(remaining=len(queue))
        for position, candidate in enumerate(queue, start=1):
            suggestion = suggest_classification(candidate.surface, self.lexicon)
            self.show(candidate, suggestion, position, len(queue))
            while True:
                key = self.ask("action", KEYS, _default_key(suggestion)).strip().lower()
                if key == "q":
                    summary.quit_early = True
                    return summary
                if key == "s":
                    summary.skipped.append(candidate.surface)
                    break
                decision = self._decision_for(key, candidate, suggestion)
                if decision is None:
                    continue
                try:
                    self.commit(decision)
                except LexiconError as e:
                    # stays pending; the reviewer picks again
                    self.console.print(f"[red]✗ {e}[/red]")
                    summary.conflicts.append(candidate.surface)
                    continue
                self.console.print(f"[green]✓ {decision.label}[/green]")
                summary.decided.append(decision)
                break
            summary.remaining -= 1
        return summary

    # ---------- scripted ----------

    def replay(self, decisions: Iterable[TriageDecision]) -> TriageSummary:
        """
        Apply recorded decisions without prompting.

        Candidates that already have a logged decision are skipped, so a
        replay can be rerun safely.

        Raises:
            LexiconError: a decision conflicts with the lexicon
        """
        done = {d.candidate for d in read_decisions(self.decision_log)}
        summary = TriageSummary()
        for decision in decisions:
            if decision.candidate in done:
                summary.skipped.append(decision.candidate)
                continue
            self.commit(decision)
            done.add(decision.candidate)
            summary.decided.append(decision)
        return summary
