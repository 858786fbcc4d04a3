"""Decision and search procedures for Følner-type conditions on semigroups."""

__version__ = "0.1.0"
