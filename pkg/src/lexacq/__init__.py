"""lexacq: bootstrap deep lexical entries (lexeme -> lexical type) for a
precision-grammar lexicon from morphological, syntactic and ontological
resources, using a suite of binary instance-based classifiers with
majority-class fallback."""

__version__ = "0.1.0"
