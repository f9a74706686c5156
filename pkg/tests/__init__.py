"""Test suite for the elliptic Gamma units package."""
