"""gridgas: joint electricity and natural-gas capacity expansion planning.

The package builds a solver-agnostic MILP for co-optimized investment and
operation of a coupled power and gas network (generation, transmission,
storage, carbon capture, drop-in fuels), solves it through pluggable
adapters, audits solutions independently, and reports planning outcomes.
"""

__version__ = "0.1.0"
