"""Streamline-specific parameter tractography."""

PACKAGE_NAME = "sspt"
APPLICATION_NAME = "SSPT"

__version__ = "1.0.0"
