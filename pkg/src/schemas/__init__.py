"""Pydantic schemas for computation results and run records."""
