"""Domain layer: mm-spaces, sphere analytics, bounds, solvers, sampling and experiments."""
