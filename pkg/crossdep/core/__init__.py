"""Core numerical components of crossdep."""
