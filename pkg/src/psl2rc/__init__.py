"""Rational classes and rational characters of PSL2(q), computed exactly."""
