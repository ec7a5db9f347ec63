"""POT optimal-transport adapter."""

from .client import PotClient, SinkhornResult, build_default_client

__all__ = ["PotClient", "SinkhornResult", "build_default_client"]
