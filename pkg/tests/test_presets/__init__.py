"""Tests for ablation presets."""
