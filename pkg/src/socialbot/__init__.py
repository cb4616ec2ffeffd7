"""Knowledge-grounded socialbot engine.

Pipeline: an LLM extraction stage turns user text into predicates, a
seed-reproducible topic-control reasoner picks what to say next (property
advance, related-concept switches, question answering, recommendations),
and template-based rendering plus an isolated LLM gateway produce the
reply. Fully deterministic in offline mode.
"""

__version__ = "0.1.0"
