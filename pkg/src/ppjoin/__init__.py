"""Polyhedral products over simplicial complexes and polyhedral joins."""
