"""Command handlers for the arctanpow CLI."""
