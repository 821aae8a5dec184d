"""Goal-model to SLEEC compiler with bounded well-formedness checking."""

__version__ = "0.1.0"
