"""Application interfaces: the command-line entry points."""
