"""Values, machines, states and verdicts shared across the checker."""
