"""Multiple elliptic Gamma functions and higher elliptic units."""
