"""qcaforge: cell-level QCA simulation, standard cells and truth-table verification."""

__version__ = "0.1.0"
