"""Utils package for the arctanpow tools."""
