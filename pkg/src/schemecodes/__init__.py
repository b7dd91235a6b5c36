"""Self-orthogonal linear and subspace codes from equitable partitions of
association schemes, built end-to-end from distance-regular graphs."""

__version__ = "0.1.0"
