"""Design analysis and hybrid drive/fly mission planning for land-air robots."""

__version__ = "0.1.0"
