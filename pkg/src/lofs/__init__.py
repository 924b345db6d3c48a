"""Computable lax orthogonal factorisation systems on finite posets."""
