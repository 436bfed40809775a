"""Tests for the JSCC autoencoder."""
