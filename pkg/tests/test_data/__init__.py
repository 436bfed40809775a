"""Tests for image I/O and synthetic data."""
