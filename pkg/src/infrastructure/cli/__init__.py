"""Command-line interface for interacting with the system."""