"""Utility modules for the CLI."""