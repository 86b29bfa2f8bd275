"""Open book decompositions to weighted Floer complexes and the torsion
order of the contact class, with exact combinatorial arithmetic
throughout."""

__version__ = "0.1.0"
