# This file makes 'config' a Python package.
