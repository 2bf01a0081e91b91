"""Subcommands of the bcheck command line."""
