"""Octonion offset linear canonical transform on sampled 3D signals."""
from .algebra import Octonion, Quaternion
from .grid import Grid, Grid3D, OctField, OctField3D, QuatField, QuatField2D, VoxelMask
from .transform import OLCTParams, OLCTParamsTriple, TransformOptions, oolct3d, oolct3d_inverse

__all__ = [
    "Octonion", "Quaternion", "Grid", "Grid3D", "OctField", "OctField3D", "QuatField",
    "QuatField2D", "VoxelMask", "OLCTParams", "OLCTParamsTriple", "TransformOptions",
    "oolct3d", "oolct3d_inverse",
]
__version__ = "0.1.0"
