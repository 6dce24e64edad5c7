"""Random DPLL search-tree statistics: solvers, exact expectations, growth rates."""

__version__ = "0.1.0"
