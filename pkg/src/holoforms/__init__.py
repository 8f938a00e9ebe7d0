"""Exact calculus of exterior forms, spinors and the Lie (super)algebras
generated by the fundamental forms of special structures."""

from .exterior import FrameContext, Form, VectorForm, barwedge, inner, raise_index, wedge
from .scalar import Scalar

__version__ = "0.1.0"

__all__ = ["FrameContext", "Form", "VectorForm", "Scalar", "barwedge", "inner", "raise_index", "wedge", "__version__"]
