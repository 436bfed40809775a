"""Tests for channel simulation."""
