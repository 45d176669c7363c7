"""nephrocare: a self-hostable care platform for pediatric nephrotic syndrome.

Subpackages:
    rules  - pure clinical classification (colors, BP stages, growth bands,
             relapse detection, adherence, criticality)
    diary  - domain records, embedded persistence, timeline, CSV export
    notify - trigger evaluation and notification fan-out to feeds and sinks
    api    - HTTP/JSON service, authentication, CLI wiring
"""

__version__ = "0.1.0"
