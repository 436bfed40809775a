"""Tests for the reverse-mode engine."""
