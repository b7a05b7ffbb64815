"""Version information for artinlab."""

VERSION = "0.1.0"
