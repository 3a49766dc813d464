"""Test suite for Autopilot Backend."""
