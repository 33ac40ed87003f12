"""Abstract machine, translations and game models for a call-by-value language with control."""

from ._core import Strategy, arena, check, check_corpus, denote, laws, run, translate

__all__ = ["Strategy", "arena", "check", "check_corpus", "denote", "laws", "run", "translate"]
