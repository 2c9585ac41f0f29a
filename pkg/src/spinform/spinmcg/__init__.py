"""Curve catalogs, twist words, generating sets and their verification."""
