"""Unambiguous linear witness grammar, linear sets over N^k, and a refuter for light covers."""
