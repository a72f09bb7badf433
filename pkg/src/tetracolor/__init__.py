"""Planar-map coloring laboratory.

Rotation-system planar maps, four-colorings over the Klein four-group,
Tait three-edge-colorings, even-subgraph closed-curve decompositions,
Kempe-chain reduction machinery, exact winding-number geometry, and an
exhaustive small-map verification harness.
"""

__version__ = "0.1.0"
