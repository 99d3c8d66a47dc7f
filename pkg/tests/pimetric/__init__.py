"""
Algebra tests for the pimetric package.
Field arithmetic, the pi-metric, symmetries, automorphisms and group orders.
"""
