"""tempo: intuitionistic predicate logic read through the tense logic Q°S4.t."""
__version__ = "0.1.0"
