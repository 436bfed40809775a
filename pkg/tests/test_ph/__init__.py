"""Tests for persistent homology."""
