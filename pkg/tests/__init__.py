"""Tests for prodseries."""
