"""Test package for the agentic coding system."""
