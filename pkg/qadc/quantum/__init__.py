# qadc/quantum/__init__.py

"""
Numerical core for action-dependent quantum channel coding.

Submodules cover labeled linear algebra, channels and purifications, entropic quantities,
rate assembly and optimization, and the one-shot random-coding simulation.
"""
