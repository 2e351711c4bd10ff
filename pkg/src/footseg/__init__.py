"""Building-footprint segmentation toolkit.

Boundary-weighted cross-entropy and F-Beta objectives, exact raster distance
transforms, a synthetic-scene data pipeline, and a small dilated-convolution
segmentation network with analytic backpropagation.
"""

__version__ = "0.1.0"
