"""Unit tests for the agentic coding system."""
