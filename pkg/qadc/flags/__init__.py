# This file makes 'flags' a Python package.
