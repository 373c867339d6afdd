"""Contact plan generation, filtering, validation, export, and serving
for interplanetary delay-tolerant networks."""

__version__ = "0.1.0"
