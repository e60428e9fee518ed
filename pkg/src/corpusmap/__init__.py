"""corpusmap: entity co-occurrence maps and temporal flows from text corpora."""

__version__ = "0.1.0"
