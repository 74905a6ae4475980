"""Tests for knotbook."""
