from typing import List, Tuple

import numpy as np

# Positions are world millimeters, directions are unit vectors
Vec3 = np.ndarray
Points = np.ndarray
Affine = np.ndarray

Streamline = np.ndarray
Tractogram = List[np.ndarray]

ValueRange = Tuple[float, float]
