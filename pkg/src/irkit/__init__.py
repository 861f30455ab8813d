"""Reversible and lossy intermediate representations for semantic parsing.

The package provides, for three program formalisms (conjunctive SPARQL,
canonicalized SQL, and SCAN-style instruction following):

* parsers and deterministic renderers,
* a reversible IR with an exact inverse,
* a lossy IR that omits or anonymizes hard-to-align program content,
* staging and post-processing for two-stage seq2seq pipelines, and
* exact-match evaluation plus structural diagnostics.
"""

from .data import ExampleRecord, QuarantineEntry
from .errors import (ConfigError, InversionError, IrkitError, ParseError,
                     TransformError)
from .pipeline import PipelineConfig, StagePair

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "ExampleRecord",
    "InversionError",
    "IrkitError",
    "ParseError",
    "PipelineConfig",
    "QuarantineEntry",
    "StagePair",
    "TransformError",
    "__version__",
]
