"""Core utilities: errors and information measures."""
