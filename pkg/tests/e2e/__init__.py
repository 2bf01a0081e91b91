"""End-to-end tests for the agentic coding system."""