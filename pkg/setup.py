"""
restrictcat package setup.
"""
from setuptools import setup

# Metadata is now handled by pyproject.toml
setup()
