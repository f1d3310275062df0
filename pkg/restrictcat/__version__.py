"""Version information."""

__version__ = "0.3.0"
__title__ = "restrictcat"
__description__ = "Finite-scale workbench for restriction categories, partial maps and restriction presheaves"
__author__ = "restrictcat developers"
__author_email__ = "example@example.com"
__license__ = "MIT"
__url__ = "https://github.com/yourusername/restrictcat"
