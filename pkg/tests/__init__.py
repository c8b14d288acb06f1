"""Tests for nica-dilations."""
