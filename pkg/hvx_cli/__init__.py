"""
Command-line surface for the hvx library: front files, generators, verify and bench.
"""
