"""Exact tools for the Boros-Moll triangle and its transposed sequences."""

from bmseq.core import BMTable, build_table, d_closed_form

__all__ = ["BMTable", "build_table", "d_closed_form"]
__version__ = "0.1.0"
