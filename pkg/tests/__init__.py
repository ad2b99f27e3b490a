"""Test suite for mtstress."""
