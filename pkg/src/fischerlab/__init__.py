"""Exact computational toolkit for 3-transposition groups, their Fischer
graphs and Matsuo algebras, and the Virasoro unitary-series fusion calculus."""

__version__ = "0.1.0"
