"""
Test fixtures directory.
Contains sample map files, symmetry documents and generator matrices
for the command-line and text-format tests.
"""
