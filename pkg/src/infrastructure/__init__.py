"""Infrastructure adapters: the POT backend client."""
