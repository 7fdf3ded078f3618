"""
q-Heisenberg - Source Package

Numerical and symbolic tools for Heisenberg-picture dynamics under
q-deformed commutation relations: basic numbers, dense operator algebra,
an exact rewriting engine, truncated representations, three independent
time-evolution engines and the command-line surface that ties them together.
"""

__version__ = "0.3.0"
