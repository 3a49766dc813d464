"""Diophantine toolkit - verification of (2^k - 1)(b^k - 1) = y^q and (X^q - 1)(Y^q - 1) = Z^q."""
