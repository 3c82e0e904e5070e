"""
lm_drift - measures how conference papers use generic language-model terms
and which named models they mention, across conference editions.

Pipeline: corpus -> lexicon -> matching -> analysis -> report, with an
LLM-assisted extraction and a human triage step feeding the lexicon.
"""

__version__ = "0.1.0"
