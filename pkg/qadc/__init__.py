# This file makes 'qadc' a Python package.
