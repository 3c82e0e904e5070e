"""
Lexicon file - human-editable YAML, UTF-8.

Grammar::

    schema_version: 1
    l_terms: [language model, LLM, PLM]      # optional, defaults shown
    entries:
      - name: BERT                           # canonical name (first alias)
      - name: RoBERTa
        aliases: [RoBERTa, Roberta]          # optional, defaults to [name]
        variations: [RoBERTa-large]          # optional
        parent: BERT                         # optional dependency

Every invariant is checked on parse; violations name the entry block.
"""

import hashlib
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

import yaml

from ..errors import LexiconFormatError
from .model import DEFAULT_L_TERMS, LTermSet, Lexicon, ModelEntry

logger = logging.getLogger(__name__)


SCHEMA_VERSION = 1
ENTRY_KEYS = ("name", "aliases", "variations", "parent")


def _string_list(value: Any, location: str, field: str) -> List[str]:
    if value is None:
        return []
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise LexiconFormatError(location, f"{field!r} must be a list of strings")
    return list(value)


def _parse_entry(block: Any, index: int) -> ModelEntry:
    location = f"entries[{index}]"
    if not isinstance(block, Mapping):
        raise LexiconFormatError(location, "entry block must be a mapping")
    name = block.get("name")
    if not isinstance(name, str) or not name:
        raise LexiconFormatError(location, "missing 'name'")
    location = f"entries[{index}] ({name})"
    unknown = sorted(set(block) - set(ENTRY_KEYS))
    if unknown:
        raise LexiconFormatError(location, f"unknown key(s): {', '.join(map(str, unknown))}")

    aliases = _string_list(block.get("aliases"), location, "aliases") or [name]
    if aliases[0] != name:
        raise LexiconFormatError(location, f"first alias {aliases[0]!r} must equal name")
    parent = block.get("parent")
    if parent is not None and not isinstance(parent, str):
        raise LexiconFormatError(location, "'parent' must be a string")
    # invariant errors raised here already name the entry
    return ModelEntry(
        entry_id=name,
        aliases=tuple(aliases),
        variations=tuple(_string_list(block.get("variations"), location, "variations")),
        parent=parent,
    )


def lexicon_from_dict(data: Mapping[str, Any]) -> Lexicon:
    if not isinstance(data, Mapping):
        raise LexiconFormatError("<root>", "top level must be a mapping")
    version = data.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise LexiconFormatError("schema_version", f"unsupported version {version!r}")

    terms = data.get("l_terms")
    l_terms = LTermSet(tuple(_string_list(terms, "l_terms", "l_terms"))) if terms is not None else LTermSet()

    blocks = data.get("entries") or []
    if not isinstance(blocks, list):
        raise LexiconFormatError("entries", "must be a list of entry blocks")
    entries: Dict[str, ModelEntry] = {}
    for i, block in enumerate(blocks):
        entry = _parse_entry(block, i)
        if entry.entry_id in entries:
            raise LexiconFormatError(f"entries[{i}] ({entry.entry_id})", "entry defined twice")
        entries[entry.entry_id] = entry
    # forest and global alias checks run in Lexicon.__post_init__; their errors name entries/chains
    return Lexicon(l_terms=l_terms, entries=entries)


def lexicon_to_dict(lexicon: Lexicon) -> Dict[str, Any]:
    blocks = []
    for entry in lexicon.entries.values():
        block: Dict[str, Any] = {"name": entry.entry_id}
        if entry.aliases != (entry.entry_id,):
            block["aliases"] = list(entry.aliases)
        if entry.variations:
            block["variations"] = list(entry.variations)
        if entry.parent is not None:
            block["parent"] = entry.parent
        blocks.append(block)
    out: Dict[str, Any] = {"schema_version": SCHEMA_VERSION}
    if lexicon.l_terms.terms != DEFAULT_L_TERMS:
        out["l_terms"] = list(lexicon.l_terms.terms)
    out["entries"] = blocks
    return out


def parse_lexicon(path: Path) -> Lexicon:
    """
    Read and validate a lexicon file.

    Raises:
        LexiconFormatError: unreadable YAML or a malformed entry block
        DuplicateAliasError / DependencyError / ContainmentError: invariant violations
    """
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except FileNotFoundError:
        raise LexiconFormatError(str(path), "file not found") from None
    except yaml.YAMLError as e:
        raise LexiconFormatError(str(path), f"invalid YAML: {e}") from e
    lexicon = lexicon_from_dict(data if data is not None else {})
    logger.debug("parsed %d lexicon entries from %s", len(lexicon), path)
    return lexicon


def dump_lexicon(lexicon: Lexicon) -> str:
    return yaml.safe_dump(
        lexicon_to_dict(lexicon), sort_keys=False, allow_unicode=True, default_flow_style=None, width=100
    )


def write_lexicon(lexicon: Lexicon, path: Path, header: Optional[str] = None) -> None:
    """Atomic write: the target is either the old file or the complete new one."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = dump_lexicon(lexicon)
    if header:
        text = "".join(f"# {line}\n" for line in header.splitlines()) + text
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=str(path.parent))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def lexicon_digest(lexicon: Lexicon) -> str:
    """SHA-256 of the canonical dump; identifies the lexicon a counts file was built with."""
    return hashlib.sha256(dump_lexicon(lexicon).encode("utf-8")).hexdigest()
