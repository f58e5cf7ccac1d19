"""Tests for the py-superali library."""
