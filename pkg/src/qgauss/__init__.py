"""Gaussian polynomials: exact kernels, identity checks and conjecture scans."""
