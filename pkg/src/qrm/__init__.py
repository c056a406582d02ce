"""Quantum Reed-Muller codes and fault-tolerant conversion between QRM(m) and QRM(m+1)."""

from .kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = ["KERNEL_BACKEND", "__version__"]
