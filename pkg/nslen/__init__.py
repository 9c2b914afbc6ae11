# nslen - nonsoluble length computation and verification

__version__ = "0.1.0"
