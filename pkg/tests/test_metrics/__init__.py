"""Tests for diagram distances."""
