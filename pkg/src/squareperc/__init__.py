"""Square percolation on graphs: square graphs T1 and S, constructions, experiments."""

__version__ = "0.1.0"
