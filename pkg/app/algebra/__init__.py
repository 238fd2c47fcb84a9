"""Exact computer algebra for measuring maps and the universal measuring algebra F(A,B)."""
