"""
.. include:: ../README.md
   :start-line: 1
   :end-before: ## 📚 Documentation
"""
__docformat__ = "numpy"
__version__ = "0.1.0"
__all__ = ["specfun", "states", "oracle", "qfi", "detection", "sweep", "cli", "conf", "exceptions"]
