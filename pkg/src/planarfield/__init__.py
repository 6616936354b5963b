"""Finite fields inside matrix algebras over F_p and planar DO polynomial analysis."""
