"""Tests for topological losses."""
