"""
Long-running suites behind the verify and bench commands.
"""
