"""Anisotropic hyperbolic Besov, Triebel-Lizorkin and Sobolev norms of sampled fields."""

__version__ = "0.1.0"
