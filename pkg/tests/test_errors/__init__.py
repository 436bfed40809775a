"""Tests for error intelligence."""
