"""
Zeros of the Möbius function of the permutation pattern poset.
"""
